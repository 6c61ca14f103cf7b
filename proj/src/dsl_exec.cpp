#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "amalg/constructions.hpp"
#include "amalg/dsl.hpp"
#include "amalg/theorems.hpp"

namespace amalg::dsl {

namespace {

using nlohmann::json;

struct Elaborated {
    std::map<std::string, RingPtr> rings;
    std::map<std::string, Ideal> ideals;
    std::map<std::string, RingHom> homs;
    std::map<std::string, std::string> ring_names;  // display name per binding
};

struct ElabError {
    Diagnostic diag;
};

[[noreturn]] void elab_fail(DiagCode code, int line, std::string msg)
{
    throw ElabError{Diagnostic{code, line, 1, std::move(msg)}};
}

RingPtr build_ring(const RingDef& d, const Elaborated& env, int line)
{
    auto ref = [&](std::size_t i) { return env.rings.at(d.refs.at(i)); };
    if (d.ctor == "zmod")
        return zmod(d.param);
    if (d.ctor == "product")
        return direct_product(ref(0), ref(1));
    if (d.ctor == "upper")
        return upper_triangular(ref(0), d.param);
    if (d.ctor == "matrix")
        return matrix_ring(ref(0), d.param);
    if (d.ctor == "polyquot")
        return poly_quotient(ref(0), d.param);
    if (d.ctor == "table") {
        RingTables t;
        t.size = 0;
        while (t.size * t.size < d.add.size())
            ++t.size;
        t.add = d.add;
        t.mul = d.mul;
        t.zero = d.zero;
        t.one = d.one;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < t.size; ++i)
            labels.push_back(std::to_string(i));
        try {
            return FiniteRing::create(std::move(t), std::move(labels),
                                      Provenance{RingKind::Table, d.name, 0, {}, {}});
        } catch (const AxiomError& e) {
            std::string w;
            for (Elem x : e.violation.witness)
                w += (w.empty() ? "" : ",") + std::to_string(x);
            elab_fail(DiagCode::Constraint, line,
                      "table for '" + d.name + "' violates " + law_name(e.violation.law) + " at (" + w + ")");
        }
    }
    elab_fail(DiagCode::UnknownConstructor, line, "unknown ring constructor '" + d.ctor + "'");
}

Elem element(const RingPtr& r, const std::string& lit, int line)
{
    try {
        return parse_element(*r, lit);
    } catch (const InvalidArgument& e) {
        elab_fail(DiagCode::BadElement, line, "'" + lit + "' is not an element of " + r->name() + ": " + e.what());
    }
}

RingHom build_hom(const HomDef& d, const Elaborated& env, int line)
{
    const RingPtr& a = env.rings.at(d.domain);
    const RingPtr& b = env.rings.at(d.codomain);
    if (d.canonical && (a == b || a->same_tables(*b)))
        return RingHom::identity(a);
    std::vector<std::pair<Elem, Elem>> fixed;
    for (const auto& [x, y] : d.pairs)
        fixed.emplace_back(element(a, x, line), element(b, y, line));
    std::vector<RingHom> fits;
    for (auto& h : enumerate_homs(a, b)) {
        bool ok = std::all_of(fixed.begin(), fixed.end(), [&](const auto& p) { return h(p.first) == p.second; });
        if (ok)
            fits.push_back(std::move(h));
    }
    if (fits.empty())
        elab_fail(DiagCode::Constraint, line, "no unital homomorphism " + d.domain + " -> " + d.codomain + " fits");
    if (fits.size() > 1)
        elab_fail(DiagCode::Constraint, line,
                  std::to_string(fits.size()) + " unital homomorphisms " + d.domain + " -> " + d.codomain +
                      " fit; give more of the map");
    return fits.front();
}

void elaborate(const SpecModel& model, Elaborated& env)
{
    for (std::size_t k = 0; k < model.statements.size(); ++k) {
        const int line = k < model.lines.size() ? model.lines[k] : 0;
        const Statement& st = model.statements[k];
        try {
            if (auto* r = std::get_if<RingDef>(&st)) {
                env.rings[r->name] = build_ring(*r, env, line);
            } else if (auto* i = std::get_if<IdealDef>(&st)) {
                const RingPtr& host = env.rings.at(i->ring);
                std::vector<Elem> gens;
                for (const auto& g : i->gens)
                    gens.push_back(element(host, g, line));
                env.ideals.emplace(i->name, generated_ideal(host, gens));
            } else if (auto* h = std::get_if<HomDef>(&st)) {
                env.homs.emplace(h->name, build_hom(*h, env, line));
            } else if (auto* a = std::get_if<AmalgamDef>(&st)) {
                const RingPtr& ar = env.rings.at(a->a);
                const RingHom& f = env.homs.at(a->hom);
                const Ideal& j = env.ideals.at(a->ideal);
                if (f.domain() != ar && !f.domain()->same_tables(*ar))
                    elab_fail(DiagCode::Constraint, line, "hom '" + a->hom + "' does not start at '" + a->a + "'");
                if (j.host() != f.codomain() && !j.host()->same_tables(*f.codomain()))
                    elab_fail(DiagCode::Constraint, line,
                              "ideal '" + a->ideal + "' does not live in the codomain of '" + a->hom + "'");
                if (!j.proper())
                    elab_fail(DiagCode::Constraint, line, "ideal '" + a->ideal + "' is not proper");
                env.rings[a->name] = amalgamation(f, j).ring;
            }
        } catch (const InvalidArgument& e) {
            elab_fail(DiagCode::Constraint, line, e.what());
        } catch (const BudgetExceeded& e) {
            elab_fail(DiagCode::Constraint, line, e.what());
        }
    }
}

json labels(const FiniteRing& r, const std::vector<Elem>& xs)
{
    json out = json::array();
    for (Elem x : xs)
        out.push_back(r.label(x));
    return out;
}

json report_json(const PropertyReport& rep)
{
    const FiniteRing& r = *rep.ring;
    json j;
    j["property"] = property_name(rep.property);
    j["verdict"] = verdict_name(rep.verdict);
    if (rep.degree_bound)
        j["degree"] = *rep.degree_bound;
    j["pairs_examined"] = rep.pairs_examined;
    if (rep.witness) {
        const PairWitness& w = *rep.witness;
        j["witness"] = {{"f", labels(r, w.f)},
                        {"g", labels(r, w.g)},
                        {"f_text", render(make_poly(rep.ring, w.f))},
                        {"g_text", render(make_poly(rep.ring, w.g))},
                        {"i", w.i},
                        {"j", w.j},
                        {"product", r.label(w.product)}};
    } else if (!rep.element_witness.empty()) {
        j["witness"] = {{"elements", labels(r, rep.element_witness)}};
    }
    return j;
}

std::string report_text(const PropertyReport& rep)
{
    const FiniteRing& r = *rep.ring;
    std::string s = verdict_name(rep.verdict);
    if (rep.witness) {
        const PairWitness& w = *rep.witness;
        s += " f = " + render(make_poly(rep.ring, w.f)) + ", g = " + render(make_poly(rep.ring, w.g)) + ", a_" +
             std::to_string(w.i) + "*b_" + std::to_string(w.j) + " = " + r.label(w.product);
    } else if (rep.element_witness.size() == 1) {
        s += " witness " + r.label(rep.element_witness[0]);
    } else if (rep.element_witness.size() == 3) {
        s += " witness a=" + r.label(rep.element_witness[0]) + " b=" + r.label(rep.element_witness[1]) +
             " r=" + r.label(rep.element_witness[2]);
    }
    if (rep.degree_bound)
        s += " (" + std::to_string(rep.pairs_examined) + " nodes)";
    return s;
}

json harness_json(const HarnessReport& rep)
{
    json clauses = json::object();
    for (const auto& c : rep.clauses)
        clauses[c.id] = {{"tested", c.tested},         {"hyp_satisfied", c.hyp_satisfied},
                         {"passed", c.passed},         {"candidates", c.candidates},
                         {"hard", c.hard},             {"skipped", c.skipped},
                         {"vacuous", c.vacuous},       {"notes", c.notes}};
    json findings = json::array();
    for (const auto& f : rep.findings)
        findings.push_back({{"clause", f.clause_id},
                            {"scenario", f.scenario_id},
                            {"status", status_name(f.status)},
                            {"details", f.details}});
    return {{"directive", "harness"},  {"degree", rep.degree},     {"scenarios", rep.scenario_count},
            {"clauses", clauses},      {"findings", findings},     {"hard_violations", rep.hard_violations()},
            {"incomplete", rep.incomplete}};
}

std::string harness_text(const HarnessReport& rep)
{
    std::ostringstream os;
    os << "harness degree " << rep.degree << ": " << rep.scenario_count << " scenarios, " << rep.hard_violations()
       << " hard violations" << (rep.incomplete ? " INCOMPLETE" : "") << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-9s %8s %8s %8s %6s %5s %5s\n", "clause", "tested", "hyp", "passed", "cand",
                  "hard", "skip");
    os << buf;
    for (const auto& c : rep.clauses) {
        std::snprintf(buf, sizeof buf, "  %-9s %8zu %8zu %8zu %6zu %5zu %5zu\n", c.id.c_str(), c.tested,
                      c.hyp_satisfied, c.passed, c.candidates, c.hard, c.skipped);
        os << buf;
        for (const auto& n : c.notes)
            os << "      " << n << "\n";
    }
    for (const auto& f : rep.findings)
        os << "  " << status_name(f.status) << " " << f.clause_id << " on " << f.scenario_id << ": " << f.details
           << "\n";
    return os.str();
}

class Runner {
public:
    Runner(const ExecConfig& cfg) : cfg_(cfg), cache_(SearchOptions{cfg.threads, SearchOptions{}.max_nodes, false}) {}

    ExecResult run(const SpecModel& model)
    {
        ExecResult res;
        res.json = {{"version", report_version}, {"reports", json::array()}};
        Elaborated env;
        try {
            elaborate(model, env);
        } catch (const ElabError& e) {
            res.diagnostics.push_back(e.diag);
            res.exit_code = ExitCode::BadSpec;
            res.json["diagnostics"] = json::array({e.diag.str()});
            res.json["incomplete"] = true;
            return res;
        }
        std::ostringstream text;
        try {
            for (const auto& st : model.statements) {
                if (cfg_.interrupted && cfg_.interrupted()) {
                    res.incomplete = true;
                    break;
                }
                if (auto* c = std::get_if<CheckDirective>(&st))
                    check(*c, env, res, text);
                else if (auto* h = std::get_if<HarnessDirective>(&st))
                    harness(*h, res, text);
                else if (auto* s = std::get_if<SearchDirective>(&st))
                    search(*s, res, text);
                if (res.incomplete)
                    break;
            }
        } catch (const BudgetExceeded& e) {
            text << "budget exhausted: " << e.what() << "\n";
            res.json["error"] = std::string("budget: ") + e.what();
            res.incomplete = true;
            res.exit_code = ExitCode::Budget;
        } catch (const InternalError& e) {
            text << "internal error: " << e.what() << "\n";
            res.json["error"] = std::string("internal: ") + e.what();
            res.incomplete = true;
            res.exit_code = ExitCode::Internal;
        }
        if (res.incomplete)
            text << "INCOMPLETE\n";
        res.json["incomplete"] = res.incomplete;
        res.json["exit_code"] = res.exit_code;
        res.text = text.str();
        return res;
    }

private:
    void escalate(ExecResult& res, int code)
    {
        if (code > res.exit_code)
            res.exit_code = code;
    }

    void confirm(const PropertyReport& rep)
    {
        if (cfg_.revalidate && !revalidate(rep))
            throw InternalError(std::string("witness for ") + property_name(rep.property) + " on " +
                                rep.ring->name() + " failed revalidation");
    }

    void check(const CheckDirective& c, const Elaborated& env, ExecResult& res, std::ostringstream& text)
    {
        const RingPtr& r = env.rings.at(c.ring);
        const unsigned d = c.degree.value_or(cfg_.default_degree);
        PropertyReport rep = check_property(c.property, r, d, cache_.options());
        confirm(rep);
        json j = report_json(rep);
        j["directive"] = "check";
        j["ring"] = c.ring;
        text << "check " << c.ring << " " << property_name(c.property);
        if (rep.degree_bound)
            text << " degree " << d;
        text << ": " << report_text(rep);
        if (c.assertion) {
            const bool want = *c.assertion == Assertion::Holds;
            const bool ok = rep.holds() == want;
            j["assert"] = want ? "holds" : "refuted";
            j["assert_ok"] = ok;
            text << (ok ? " [assert ok]" : " [ASSERT FAILED]");
            if (!ok)
                escalate(res, ExitCode::Violation);
        }
        text << "\n";
        res.json["reports"].push_back(std::move(j));
    }

    const Corpus& corpus(std::size_t max_size)
    {
        auto it = corpora_.find(max_size);
        if (it == corpora_.end())
            it = corpora_.emplace(max_size, build_corpus(CorpusConfig{max_size, max_size, default_size_budget})).first;
        return it->second;
    }

    void harness(const HarnessDirective& h, ExecResult& res, std::ostringstream& text)
    {
        const unsigned d = h.degree.value_or(cfg_.default_degree);
        const Corpus& c = corpus(cfg_.max_ring_size);
        HarnessOptions opt;
        opt.threads = cfg_.threads;
        opt.interrupted = cfg_.interrupted;
        HarnessReport rep = run_harness(c.scenarios, d, opt, cache_);
        if (rep.hard_violations() > 0)
            escalate(res, ExitCode::Violation);
        if (rep.incomplete)
            res.incomplete = true;
        text << harness_text(rep);
        res.json["reports"].push_back(harness_json(rep));
    }

    // Distinct rings of the corpus (catalog rings, then amalgams) up to max_size.
    std::vector<RingPtr> search_space(std::size_t max_size)
    {
        const Corpus& c = corpus(max_size);
        std::vector<RingPtr> out;
        std::map<std::uint64_t, std::vector<RingPtr>> seen;
        auto add = [&](const RingPtr& r) {
            if (r->size() > max_size)
                return;
            auto& bucket = seen[r->fingerprint()];
            for (const auto& s : bucket)
                if (s->same_tables(*r))
                    return;
            bucket.push_back(r);
            out.push_back(r);
        };
        for (const auto& r : c.rings)
            add(r);
        for (const auto& s : c.scenarios)
            add(s.amalgam.ring);
        return out;
    }

    void search(const SearchDirective& s, ExecResult& res, std::ostringstream& text)
    {
        const unsigned d = s.degree.value_or(cfg_.default_degree);
        const std::size_t max_size = s.max_size.value_or(cfg_.max_ring_size);
        const auto space = search_space(max_size);
        // The seed only permutes the visiting order; hits are reported in
        // canonical order.
        std::vector<std::size_t> order(space.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (cfg_.seed != 0) {
            std::mt19937_64 rng(cfg_.seed);
            std::shuffle(order.begin(), order.end(), rng);
        }
        std::vector<std::size_t> hits;
        std::size_t examined = 0;
        for (std::size_t k : order) {
            if (cfg_.interrupted && cfg_.interrupted()) {
                res.incomplete = true;
                break;
            }
            ++examined;
            const RingPtr& r = space[k];
            if (s.goal == SearchGoal::WeakNotNil) {
                if (cache_.get(r, Property::WeakArmendariz, d).holds() &&
                    !cache_.get(r, Property::NilArmendariz, d).holds())
                    hits.push_back(k);
            } else if (!cache_.get(r, Property::Armendariz, d).holds()) {
                hits.push_back(k);
            }
        }
        std::sort(hits.begin(), hits.end());

        const char* goal = s.goal == SearchGoal::WeakNotNil ? "weak-not-nil" : "armendariz-refutation";
        json j = {{"directive", "search"}, {"goal", goal}, {"degree", d}, {"max_size", max_size},
                  {"rings_examined", examined}};
        text << "search " << goal << " degree " << d << " max-size " << max_size << ": " << examined
             << " rings examined, ";
        json found = json::array();
        if (s.goal == SearchGoal::WeakNotNil) {
            // Any hit is escalated one degree up and only ever reported.
            for (std::size_t k : hits) {
                const RingPtr& r = space[k];
                const auto& nil = cache_.get(r, Property::NilArmendariz, d);
                confirm(nil);
                const bool weak_up = cache_.get(r, Property::WeakArmendariz, d + 1).holds();
                found.push_back({{"ring", r->name()},
                                 {"size", r->size()},
                                 {"nil_armendariz", report_json(nil)},
                                 {"weak_holds_at_next_degree", weak_up},
                                 {"status", weak_up ? "RESEARCH_CANDIDATE" : "BOUND_ARTIFACT"}});
            }
            if (hits.empty())
                text << "no example found within budget\n";
            else
                text << hits.size() << " candidate(s) for escalation\n";
            j["result"] = hits.empty() ? "no example found within budget" : "candidates found";
        } else {
            for (std::size_t k : hits) {
                const auto& rep = cache_.get(space[k], Property::Armendariz, d);
                confirm(rep);
                json h = report_json(rep);
                h["ring"] = space[k]->name();
                h["size"] = space[k]->size();
                found.push_back(std::move(h));
            }
            text << hits.size() << " refuted";
            if (!hits.empty())
                text << "; first: " << space[hits[0]]->name() << " "
                     << report_text(cache_.get(space[hits[0]], Property::Armendariz, d));
            text << "\n";
            j["result"] = std::to_string(hits.size()) + " refuted";
        }
        j["hits"] = std::move(found);
        j["incomplete"] = res.incomplete;
        res.json["reports"].push_back(std::move(j));
    }

    ExecConfig cfg_;
    ReportCache cache_;
    std::map<std::size_t, Corpus> corpora_;
};

}  // namespace

ExecResult execute(const SpecModel& model, const ExecConfig& config)
{
    Runner runner(config);
    return runner.run(model);
}

}  // namespace amalg::dsl

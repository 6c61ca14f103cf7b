#include "amalg/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "amalg/canonical_isos.hpp"

namespace amalg {

namespace {

std::string set_text(const FiniteRing& r, const ElementSet& s)
{
    std::string out = "{";
    for (Elem e : s) {
        if (out.size() > 1)
            out += ",";
        out += r.label(e);
    }
    return out + "}";
}

bool meets_trivially(const ElementSet& s, const ElementSet& t, Elem zero)
{
    for (Elem e : s)
        if (e != zero && t.contains(e))
            return false;
    return true;
}

}  // namespace

ScenarioFacts compute_facts(const RingHom& f, const Ideal& j, const Ideal& preimage)
{
    const RingPtr& a = f.domain();
    const RingPtr& b = f.codomain();
    const ElementSet nil_a = nilradical(*a);
    const ElementSet nil_b = nilradical(*b);
    ScenarioFacts x;
    x.nil_b_meets_j_trivially = meets_trivially(j.members(), nil_b, b->zero());
    x.j_inside_nil_b = j.members().subset_of(nil_b);
    x.preimage_meets_nil_a_trivially = meets_trivially(preimage.members(), nil_a, a->zero());
    x.preimage_inside_nil_a = preimage.members().subset_of(nil_a);
    x.f_injective = f.injective();
    x.image_meets_j_trivially = image_meets_ideal_trivially(f, j);
    x.j_meets_regular_central = !regular_central(*b).intersect(j.members()).empty();
    x.j_semicommutative = is_semicommutative_ideal(b, j).holds;
    x.preimage_semicommutative = is_semicommutative_ideal(a, preimage).holds;
    x.j_radical = is_radical_ideal(b, j);
    return x;
}

Scenario make_scenario(const RingHom& f, const Ideal& j, std::size_t budget)
{
    AmalgamRing am = amalgamation(f, j, budget);
    Embedding faj = f_plus_j(f, j);
    if (!faj.has_identity())
        throw InternalError("f(A)+J has no identity");
    Ideal pre = preimage_ideal(f, j);
    ScenarioFacts facts = compute_facts(f, j, pre);
    std::string id = f.domain()->name() + " -> " + f.codomain()->name() + " f=[";
    for (Elem a = 0; a < f.domain()->size(); ++a)
        id += (a ? "," : "") + std::to_string(f(a));
    id += "] J=" + set_text(*f.codomain(), j.members());
    return Scenario{std::move(id), f.domain(), f.codomain(), f, j, std::move(am), std::move(faj), std::move(pre), facts};
}

const PropertyReport& ReportCache::get(const RingPtr& r, Property p, unsigned d)
{
    const unsigned key_d = p == Property::Reduced || p == Property::Semicommutative ? 0 : d;
    auto lookup = [&]() -> const PropertyReport* {
        auto it = entries_.find(r->fingerprint());
        if (it == entries_.end())
            return nullptr;
        for (const Entry& e : it->second)
            if (e.property == p && e.degree == key_d && e.ring->same_tables(*r))
                return e.report.get();
        return nullptr;
    };
    {
        std::lock_guard guard(lock_);
        if (auto* hit = lookup())
            return *hit;
    }
    // Computed unlocked; a concurrent duplicate is identical and discarded.
    auto rep = std::make_unique<PropertyReport>(check_property(p, r, key_d, opt_));
    std::lock_guard guard(lock_);
    if (auto* hit = lookup())
        return *hit;
    auto& bucket = entries_[r->fingerprint()];
    bucket.push_back(Entry{r, p, key_d, std::move(rep)});
    return *bucket.back().report;
}

std::size_t ReportCache::size() const
{
    std::lock_guard guard(lock_);
    std::size_t n = 0;
    for (const auto& [key, bucket] : entries_)
        n += bucket.size();
    return n;
}

namespace {

using Side = std::function<RingPtr(const Scenario&)>;

RingPtr side_a(const Scenario& s) { return s.a; }
RingPtr side_b(const Scenario& s) { return s.b; }
RingPtr side_amalgam(const Scenario& s) { return s.amalgam.ring; }
RingPtr side_faj(const Scenario& s) { return s.faj_ring(); }

ScenarioPredicate has(Property p, Side side)
{
    return [p, side](const Scenario& s, unsigned d, ReportCache& c) { return c.get(side(s), p, d).holds(); };
}

ScenarioPredicate fact(bool ScenarioFacts::*field)
{
    return [field](const Scenario& s, unsigned, ReportCache&) { return s.facts.*field; };
}

ScenarioPredicate both(ScenarioPredicate x, ScenarioPredicate y)
{
    return [x, y](const Scenario& s, unsigned d, ReportCache& c) { return x(s, d, c) && y(s, d, c); };
}

ScenarioPredicate always()
{
    return [](const Scenario&, unsigned, ReportCache&) { return true; };
}

const char* const units_reason =
    "regular central element of a finite ring is a unit; proper J contains none";

TheoremClause implication(std::string id, std::string text, ScenarioPredicate hyp, ScenarioPredicate concl)
{
    return TheoremClause{std::move(id), std::move(text), ClauseMode::Implication, true, std::move(hyp), {},
                         std::move(concl), {}};
}

TheoremClause equivalence(std::string id, std::string text, ScenarioPredicate hyp, ScenarioPredicate left,
                          ScenarioPredicate right)
{
    return TheoremClause{std::move(id), std::move(text), ClauseMode::Equivalence, true, std::move(hyp),
                         std::move(left), std::move(right), {}};
}

void add_family(std::vector<TheoremClause>& out, const std::string& prefix, Property p, const std::string& name)
{
    const auto am = has(p, side_amalgam);
    const auto a = has(p, side_a);
    const auto faj = has(p, side_faj);
    out.push_back(implication(prefix + "-1", "A⋈J " + name + " ⇒ A " + name, am, a));
    out.push_back(implication(prefix + "-2", "A and f(A)+J " + name + " ⇒ A⋈J " + name, both(a, faj), am));
    auto regular = equivalence(prefix + "-3", "J meets the regular central elements of B ⇒ (A⋈J " + name +
                                                  " ⇔ A and f(A)+J " + name + ")",
                               fact(&ScenarioFacts::j_meets_regular_central), am, both(a, faj));
    regular.vacuity_reason = units_reason;
    out.push_back(std::move(regular));
}

std::vector<TheoremClause> build_registry()
{
    using F = ScenarioFacts;
    std::vector<TheoremClause> r;
    const auto red_am = has(Property::Reduced, side_amalgam);
    const auto red_a = has(Property::Reduced, side_a);
    const auto red_b = has(Property::Reduced, side_b);
    r.push_back(equivalence("P2.1", "A⋈J reduced ⇔ A reduced and nil(B) ∩ J = 0", always(), red_am,
                            both(red_a, fact(&F::nil_b_meets_j_trivially))));
    r.push_back(implication("P2.1a", "A and B reduced ⇒ A⋈J reduced", both(red_a, red_b), red_am));
    r.push_back(implication("P2.1b", "J radical and A⋈J reduced ⇒ B and A reduced",
                            both(fact(&F::j_radical), red_am), both(red_b, red_a)));

    {
        const Property p = Property::Armendariz;
        add_family(r, "T2.2", p, "Armendariz");
        r.push_back(equivalence("T2.2-4", "nil(B) ∩ J = 0 ⇒ (A⋈J Armendariz ⇔ A Armendariz)",
                                fact(&F::nil_b_meets_j_trivially), has(p, side_amalgam), has(p, side_a)));
        r.push_back(implication("T2.2-5", "f⁻¹(J) ∩ nil(A) = 0 and f(A)+J Armendariz ⇒ A⋈J Armendariz",
                                both(fact(&F::preimage_meets_nil_a_trivially), has(p, side_faj)),
                                has(p, side_amalgam)));
    }
    {
        const Property p = Property::NilArmendariz;
        add_family(r, "T3.1", p, "nil-Armendariz");
        r.push_back(equivalence("T3.1-4", "J ⊆ nil(B) ⇒ (A⋈J nil-Armendariz ⇔ A nil-Armendariz)",
                                fact(&F::j_inside_nil_b), has(p, side_amalgam), has(p, side_a)));
        r.push_back(equivalence("T3.1-5", "f⁻¹(J) ⊆ nil(A) ⇒ (A⋈J nil-Armendariz ⇔ f(A)+J nil-Armendariz)",
                                fact(&F::preimage_inside_nil_a), has(p, side_amalgam), has(p, side_faj)));
        r.push_back(equivalence("T3.1-6i",
                                "f injective and f(A) ∩ J = 0 ⇒ (A⋈J nil-Armendariz ⇔ f(A)+J nil-Armendariz)",
                                both(fact(&F::f_injective), fact(&F::image_meets_j_trivially)),
                                has(p, side_amalgam), has(p, side_faj)));
        r.push_back(equivalence("T3.1-6ii",
                                "f injective and J ⊆ nil(B) ⇒ (A⋈J nil-Armendariz ⇔ f(A)+J nil-Armendariz)",
                                both(fact(&F::f_injective), fact(&F::j_inside_nil_b)), has(p, side_amalgam),
                                has(p, side_faj)));
    }
    {
        const Property p = Property::WeakArmendariz;
        add_family(r, "T4.1", p, "weak Armendariz");
        r.push_back(equivalence("T4.1-4", "J ⊆ nil(B) ⇒ (A weak Armendariz ⇔ A⋈J weak Armendariz)",
                                fact(&F::j_inside_nil_b), has(p, side_a), has(p, side_amalgam)));
        r.push_back(implication("T4.1-5", "f⁻¹(J) ⊆ nil(A) and f(A)+J weak Armendariz ⇒ A⋈J weak Armendariz",
                                both(fact(&F::preimage_inside_nil_a), has(p, side_faj)), has(p, side_amalgam)));
        r.push_back(equivalence("T4.1-6i",
                                "f injective and f(A) ∩ J = 0 ⇒ (A⋈J weak Armendariz ⇔ f(A)+J weak Armendariz)",
                                both(fact(&F::f_injective), fact(&F::image_meets_j_trivially)),
                                has(p, side_amalgam), has(p, side_faj)));
        r.push_back(implication("T4.1-6ii",
                                "f injective, J ⊆ nil(B) and f(A)+J weak Armendariz ⇒ A⋈J weak Armendariz",
                                both(both(fact(&F::f_injective), fact(&F::j_inside_nil_b)), has(p, side_faj)),
                                has(p, side_amalgam)));
        r.push_back(implication("T4.1-7", "J semicommutative and A weak Armendariz ⇒ A⋈J weak Armendariz",
                                both(fact(&F::j_semicommutative), has(p, side_a)), has(p, side_amalgam)));
        r.push_back(implication("T4.1-8",
                                "f⁻¹(J) semicommutative and f(A)+J weak Armendariz ⇒ A⋈J weak Armendariz",
                                both(fact(&F::preimage_semicommutative), has(p, side_faj)), has(p, side_amalgam)));
    }
    return r;
}

}  // namespace

const std::vector<TheoremClause>& clause_registry()
{
    static const std::vector<TheoremClause> registry = build_registry();
    return registry;
}

const TheoremClause& find_clause(const std::string& id)
{
    for (const auto& c : clause_registry())
        if (c.id == id)
            return c;
    throw InvalidArgument("unknown clause " + id);
}

const char* status_name(ClauseStatus s)
{
    switch (s) {
    case ClauseStatus::HypothesisFailed: return "HYPOTHESIS_FAILED";
    case ClauseStatus::Passed: return "PASSED";
    case ClauseStatus::ViolationCandidate: return "VIOLATION_CANDIDATE";
    case ClauseStatus::HardViolation: return "HARD_VIOLATION";
    case ClauseStatus::SkippedBudget: return "SKIPPED_BUDGET";
    }
    return "?";
}

namespace {

struct Attempt {
    bool hypothesis = false;
    bool holds = true;
    std::string note;
};

Attempt attempt(const TheoremClause& c, const Scenario& s, unsigned d, ReportCache& cache)
{
    Attempt at;
    at.hypothesis = c.hypothesis(s, d, cache);
    if (!at.hypothesis)
        return at;
    const bool right = c.conclusion(s, d, cache);
    if (c.mode == ClauseMode::Implication) {
        at.holds = right;
        if (!right)
            at.note = "d=" + std::to_string(d) + ": conclusion fails";
        return at;
    }
    const bool left = c.left(s, d, cache);
    at.holds = left == right;
    if (!at.holds)
        at.note = "d=" + std::to_string(d) + ": left side " + (left ? "holds" : "fails") + ", right side " +
                  (right ? "holds" : "fails");
    return at;
}

}  // namespace

ClauseOutcome evaluate_clause(const TheoremClause& clause, const Scenario& s, unsigned d, ReportCache& cache)
{
    ClauseOutcome out{clause.id, s.id, ClauseStatus::HypothesisFailed, {}};
    try {
        const Attempt first = attempt(clause, s, d, cache);
        if (!first.hypothesis)
            return out;
        if (first.holds) {
            out.status = ClauseStatus::Passed;
            return out;
        }
        out.details = first.note;
        if (!clause.degree_local) {
            out.status = ClauseStatus::ViolationCandidate;
            return out;
        }
        // Re-check one degree higher before calling it a violation.
        const Attempt second = attempt(clause, s, d + 1, cache);
        if (!second.hypothesis) {
            out.status = ClauseStatus::ViolationCandidate;
            out.details += "; d=" + std::to_string(d + 1) + ": hypothesis no longer holds";
        } else if (second.holds) {
            out.status = ClauseStatus::ViolationCandidate;
            out.details += "; d=" + std::to_string(d + 1) + ": clause holds";
        } else {
            out.status = ClauseStatus::HardViolation;
            out.details += "; " + second.note;
        }
    } catch (const BudgetExceeded& e) {
        out.status = ClauseStatus::SkippedBudget;
        out.details = e.what();
    }
    return out;
}

std::vector<RingPtr> corpus_atoms()
{
    std::vector<RingPtr> atoms;
    for (int n = 2; n <= 8; ++n)
        atoms.push_back(zmod(n));
    const RingPtr z2 = atoms[0];
    atoms.push_back(upper_triangular(z2, 2));
    atoms.push_back(matrix_ring(z2, 2));
    atoms.push_back(poly_quotient(z2, 2));
    atoms.push_back(poly_quotient(z2, 3));
    atoms.push_back(poly_quotient(atoms[1], 2));
    return atoms;
}

Corpus build_corpus(const CorpusConfig& config)
{
    if (config.max_ring_size < 2 || config.max_amalgam_size < 2)
        throw InvalidArgument("corpus budgets must be at least 2");
    Corpus corpus;
    const auto atoms = corpus_atoms();
    for (const auto& r : atoms)
        if (r->size() <= config.max_ring_size)
            corpus.rings.push_back(r);
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t k = i; k < atoms.size(); ++k)
            if (atoms[i]->size() * atoms[k]->size() <= config.max_ring_size)
                corpus.rings.push_back(direct_product(atoms[i], atoms[k], config.max_ring_size));

    for (const auto& b : corpus.rings) {
        std::vector<Ideal> ideals;
        try {
            ideals = enumerate_ideals(b, config.enumeration_budget);
        } catch (const BudgetExceeded& e) {
            corpus.notes.push_back(std::string("skipped: ") + e.what());
            continue;
        }
        std::erase_if(ideals, [](const Ideal& j) { return !j.proper(); });
        for (const auto& a : corpus.rings) {
            if (a->size() > config.max_amalgam_size)
                continue;
            std::vector<RingHom> homs;
            try {
                homs = enumerate_homs(a, b, config.enumeration_budget);
            } catch (const BudgetExceeded& e) {
                corpus.notes.push_back(std::string("skipped: ") + e.what());
                continue;
            }
            for (const auto& f : homs)
                for (const auto& j : ideals)
                    if (a->size() * j.size() <= config.max_amalgam_size)
                        corpus.scenarios.push_back(make_scenario(f, j, config.max_amalgam_size));
        }
    }
    return corpus;
}

std::size_t HarnessReport::hard_violations() const
{
    std::size_t n = 0;
    for (const auto& c : clauses)
        n += c.hard;
    return n;
}

const ClauseSummary& HarnessReport::clause(const std::string& id) const
{
    for (const auto& c : clauses)
        if (c.id == id)
            return c;
    throw InvalidArgument("no clause " + id + " in report");
}

HarnessReport run_harness(const std::vector<Scenario>& corpus, unsigned d, const HarnessOptions& opt)
{
    ReportCache cache(opt.search);
    return run_harness(corpus, d, opt, cache);
}

HarnessReport run_harness(const std::vector<Scenario>& corpus, unsigned d, const HarnessOptions& opt,
                          ReportCache& cache)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto& registry = clause_registry();
    std::vector<std::vector<ClauseOutcome>> grid(corpus.size());
    std::vector<char> done(corpus.size(), 0);
    std::atomic<bool> stopped{false};

    auto work = [&](std::size_t s) {
        if (stopped || (opt.interrupted && opt.interrupted())) {
            stopped = true;
            return;
        }
        auto& row = grid[s];
        row.reserve(registry.size());
        for (const auto& c : registry)
            row.push_back(evaluate_clause(c, corpus[s], d, cache));
        done[s] = 1;
    };
    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        for (std::size_t s = 0; s < corpus.size(); ++s)
            work(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    for (std::size_t s = next++; s < corpus.size(); s = next++)
                        work(s);
                } catch (...) {
                    std::lock_guard guard(failure_lock);
                    if (!failure)
                        failure = std::current_exception();
                    next = corpus.size();
                }
            });
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    HarnessReport rep;
    rep.degree = d;
    rep.scenario_count = corpus.size();
    rep.incomplete = stopped;
    for (std::size_t c = 0; c < registry.size(); ++c) {
        ClauseSummary sum;
        sum.id = registry[c].id;
        for (std::size_t s = 0; s < corpus.size(); ++s) {
            if (!done[s])
                continue;
            const ClauseOutcome& o = grid[s][c];
            ++sum.tested;
            switch (o.status) {
            case ClauseStatus::HypothesisFailed: break;
            case ClauseStatus::Passed: ++sum.hyp_satisfied; ++sum.passed; break;
            case ClauseStatus::ViolationCandidate: ++sum.hyp_satisfied; ++sum.candidates; break;
            case ClauseStatus::HardViolation: ++sum.hyp_satisfied; ++sum.hard; break;
            case ClauseStatus::SkippedBudget: ++sum.skipped; break;
            }
        }
        if (sum.hyp_satisfied == 0 && sum.tested > 0 && !rep.incomplete) {
            sum.vacuous = true;
            sum.notes.push_back("VACUOUS_CORPUS_WIDE: " + (registry[c].vacuity_reason.empty()
                                                               ? std::string("hypothesis never satisfied on this corpus")
                                                               : registry[c].vacuity_reason));
        }
        rep.clauses.push_back(std::move(sum));
    }
    for (std::size_t s = 0; s < corpus.size(); ++s)
        for (const auto& o : grid[s])
            if (o.status != ClauseStatus::HypothesisFailed && o.status != ClauseStatus::Passed)
                rep.findings.push_back(o);
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace amalg

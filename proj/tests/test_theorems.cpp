#include <doctest.h>

#include <set>

#include "amalg/canonical_isos.hpp"
#include "amalg/theorems.hpp"
#include "oracle.hpp"

using namespace amalg;

namespace {

Ideal ideal_of(const RingPtr& r, std::vector<Elem> members)
{
    auto i = Ideal::verify(r, ElementSet(r->size(), std::move(members)));
    REQUIRE(i.has_value());
    return *i;
}

const Corpus& small_corpus()
{
    static const Corpus c = build_corpus(CorpusConfig{8, 16, default_size_budget});
    return c;
}

constexpr Elem T_E12 = 2, T_I = 5;

}  // namespace

TEST_CASE("registry")
{
    const auto& reg = clause_registry();
    CHECK(reg.size() == 24);
    std::set<std::string> ids;
    for (const auto& c : reg) {
        ids.insert(c.id);
        CHECK(c.degree_local);
        CHECK_FALSE(c.statement.empty());
    }
    CHECK(ids.size() == reg.size());
    for (const char* id : {"P2.1", "P2.1a", "P2.1b", "T2.2-1", "T2.2-5", "T3.1-6i", "T3.1-6ii", "T4.1-7", "T4.1-8"})
        CHECK(ids.count(id) == 1);
    CHECK(find_clause("T2.2-3").mode == ClauseMode::Equivalence);
    CHECK_FALSE(find_clause("T2.2-3").vacuity_reason.empty());
    CHECK(find_clause("T4.1-5").mode == ClauseMode::Implication);
    CHECK_THROWS(find_clause("T9.9"));
}

TEST_CASE("clause examples")
{
    ReportCache cache;
    auto z6 = zmod(6);
    auto s6 = make_scenario(RingHom::identity(z6), ideal_of(z6, {0, 2, 4}));
    CHECK(find_clause("T2.2-4").hypothesis(s6, 2, cache));
    for (const char* id : {"T2.2-3", "T3.1-3", "T4.1-3"})
        CHECK_FALSE(find_clause(id).hypothesis(s6, 2, cache));

    auto z2 = zmod(2);
    auto t2 = upper_triangular(z2, 2);
    auto st = make_scenario(make_hom({0, T_I}, z2, t2), ideal_of(t2, {0, T_E12}));
    auto out = evaluate_clause(find_clause("T3.1-4"), st, 2, cache);
    CHECK(out.status == ClauseStatus::Passed);
    CHECK(cache.get(st.amalgam.ring, Property::NilArmendariz, 2).holds());
    CHECK(cache.get(st.a, Property::NilArmendariz, 2).holds());

    auto z4 = zmod(4);
    auto s4 = make_scenario(RingHom::identity(z4), ideal_of(z4, {0, 2}));
    CHECK(evaluate_clause(find_clause("P2.1"), s4, 1, cache).status == ClauseStatus::Passed);
    CHECK_FALSE(cache.get(s4.amalgam.ring, Property::Reduced, 1).holds());
    CHECK_FALSE(s4.facts.nil_b_meets_j_trivially);
    CHECK(evaluate_clause(find_clause("T2.2-3"), s4, 1, cache).status == ClauseStatus::HypothesisFailed);
}

TEST_CASE("scenario facts are recomputable")
{
    for (const auto& s : small_corpus().scenarios) {
        CAPTURE(s.id);
        const auto& b = *s.b;
        const auto nil_b = nilradical(b);
        const auto nil_a = nilradical(*s.a);
        ScenarioFacts f;
        f.nil_b_meets_j_trivially = s.j.members().intersect(nil_b).size() == 1;
        f.j_inside_nil_b = s.j.members().subset_of(nil_b);
        f.preimage_meets_nil_a_trivially = s.preimage.members().intersect(nil_a).size() == 1;
        f.preimage_inside_nil_a = s.preimage.members().subset_of(nil_a);
        f.f_injective = s.f.injective();
        f.image_meets_j_trivially = s.f.image().intersect(s.j.members()).size() == 1;
        f.j_meets_regular_central = !s.j.members().intersect(regular_central(b)).empty();
        f.j_semicommutative = is_semicommutative_ideal(s.b, s.j).holds;
        f.preimage_semicommutative = is_semicommutative_ideal(s.a, s.preimage).holds;
        f.j_radical = is_radical_ideal(s.b, s.j);
        CHECK(f == s.facts);
        CHECK_FALSE(f.j_meets_regular_central);
        CHECK(s.amalgam.ring->size() == s.a->size() * s.j.size());
        CHECK(s.j.proper());
    }
}

TEST_CASE("corpus contents")
{
    const auto& c = small_corpus();
    bool dup_z4 = false, scalar_t2 = false;
    for (const auto& s : c.scenarios) {
        if (s.a->name() == "zmod(4)" && s.b->name() == "zmod(4)" && s.j.size() == 2)
            dup_z4 = true;
        if (s.a->name() == "zmod(2)" && s.b->name() == "upper(zmod(2),2)" && s.j.members().members() == std::vector<Elem>{0, T_E12})
            scalar_t2 = true;
    }
    CHECK(dup_z4);
    CHECK(scalar_t2);

    auto again = build_corpus(CorpusConfig{8, 16, default_size_budget});
    REQUIRE(again.scenarios.size() == c.scenarios.size());
    for (std::size_t k = 0; k < c.scenarios.size(); ++k)
        CHECK(again.scenarios[k].id == c.scenarios[k].id);
}

TEST_CASE("canonical isomorphisms and the disjoint case on the small corpus")
{
    ReportCache cache;
    for (const auto& s : small_corpus().scenarios) {
        CAPTURE(s.id);
        auto iso = check_canonical_isos(s.amalgam);
        CHECK(iso.all_hold());
        const bool disjoint = s.facts.f_injective && s.facts.image_meets_j_trivially;
        CHECK(iso.disjoint.applicable == disjoint);
        if (!disjoint)
            continue;
        for (Property p : {Property::Reduced, Property::Semicommutative, Property::Armendariz,
                           Property::NilArmendariz, Property::WeakArmendariz})
            CHECK(cache.get(s.amalgam.ring, p, 1).holds() == cache.get(s.faj_ring(), p, 1).holds());
    }
}

TEST_CASE("harness on the small corpus")
{
    const auto& c = small_corpus();
    HarnessOptions opt;
    auto rep = run_harness(c.scenarios, 1, opt);
    CHECK(rep.scenario_count == c.scenarios.size());
    CHECK(rep.hard_violations() == 0);
    CHECK_FALSE(rep.incomplete);
    REQUIRE(rep.clauses.size() == clause_registry().size());
    for (const char* id : {"T2.2-3", "T3.1-3", "T4.1-3"}) {
        const auto& cs = rep.clause(id);
        CHECK(cs.vacuous);
        CHECK(cs.hyp_satisfied == 0);
        CHECK_FALSE(cs.notes.empty());
    }
    const auto& p21 = rep.clause("P2.1");
    CHECK(p21.tested == c.scenarios.size());
    CHECK(p21.hyp_satisfied == c.scenarios.size());
    CHECK(p21.passed == c.scenarios.size());
    for (const auto& cs : rep.clauses) {
        CHECK(cs.tested == c.scenarios.size());
        CHECK(cs.passed + cs.candidates + cs.hard + cs.skipped == cs.hyp_satisfied);
    }

    HarnessOptions four;
    four.threads = 4;
    auto rep4 = run_harness(c.scenarios, 1, four);
    for (std::size_t k = 0; k < rep.clauses.size(); ++k) {
        CHECK(rep4.clauses[k].passed == rep.clauses[k].passed);
        CHECK(rep4.clauses[k].hyp_satisfied == rep.clauses[k].hyp_satisfied);
        CHECK(rep4.clauses[k].candidates == rep.clauses[k].candidates);
    }
    CHECK(rep4.findings.size() == rep.findings.size());
}

TEST_CASE("report cache returns the same reports")
{
    ReportCache cache;
    auto t2 = upper_triangular(zmod(2), 2);
    const auto& a = cache.get(t2, Property::Armendariz, 1);
    const auto& b = cache.get(oracle::permuted(*t2, {0, 1, 2, 3, 4, 5, 6, 7}), Property::Armendariz, 1);
    CHECK(&a == &b);
    CHECK(cache.size() == 1);
    CHECK(cache.get(t2, Property::Reduced, 1).verdict == cache.get(t2, Property::Reduced, 2).verdict);
    CHECK(cache.size() == 2);
}

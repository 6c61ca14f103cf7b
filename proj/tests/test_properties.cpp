#include <doctest.h>

#include <numeric>

#include "amalg/constructions.hpp"
#include "amalg/poly.hpp"
#include "amalg/properties.hpp"
#include "oracle.hpp"

using namespace amalg;

namespace {

std::vector<RingPtr> small_rings()
{
    std::vector<RingPtr> out = {zmod(2), zmod(3), zmod(4), direct_product(zmod(2), zmod(2)),
                                poly_quotient(zmod(2), 2), oracle::gf4()};
    // The same rings with elements relabelled, so that zero and one move.
    const std::size_t base = out.size();
    for (std::size_t k = 0; k < base; ++k) {
        std::vector<Elem> sigma(out[k]->size());
        std::iota(sigma.begin(), sigma.end(), 0);
        std::reverse(sigma.begin(), sigma.end());
        out.push_back(oracle::permuted(*out[k], sigma));
    }
    return out;
}

struct Sets {
    ElementSet hyp;
    ElementSet concl;
    oracle::Membership hyp_m;
    oracle::Membership concl_m;
};

Sets sets_for(Property p, const FiniteRing& r)
{
    const auto zero = ElementSet::singleton(r.size(), r.zero());
    const auto nil = nilradical(r);
    switch (p) {
    case Property::Armendariz: return {zero, zero, oracle::is_zero(r), oracle::is_zero(r)};
    case Property::WeakArmendariz: return {zero, nil, oracle::is_zero(r), oracle::is_nil(r)};
    default: return {nil, nil, oracle::is_nil(r), oracle::is_nil(r)};
    }
}

void check_same(const std::optional<PairWitness>& got, const std::optional<oracle::Violation>& want)
{
    REQUIRE(got.has_value() == want.has_value());
    if (!want)
        return;
    CHECK(got->f == want->f);
    CHECK(got->g == want->g);
    CHECK(got->i == want->i);
    CHECK(got->j == want->j);
    CHECK(got->product == want->product);
}

constexpr Property poly_props[] = {Property::Armendariz, Property::NilArmendariz, Property::WeakArmendariz};

}  // namespace

TEST_CASE("engine matches naive enumeration on rings of size at most 4")
{
    for (const auto& r : small_rings())
        for (unsigned d = 0; d <= 2; ++d)
            for (Property p : poly_props) {
                CAPTURE(r->name());
                CAPTURE(d);
                CAPTURE(property_name(p));
                const auto s = sets_for(p, *r);
                const auto want = oracle::first_violation(*r, d, s.hyp_m, s.concl_m);
                check_same(find_violation(*r, d, s.hyp, s.concl).witness, want);
                auto rep = check_property(p, r, d);
                CHECK(rep.holds() == !want.has_value());
                check_same(rep.witness, want);
                if (d <= 1)
                    CHECK(count_annihilating_pairs(*r, d, s.hyp) == oracle::count_pairs(*r, d, s.hyp_m));
            }
}

TEST_CASE("engine matches naive enumeration on rings of size 8 and 16 at d = 1")
{
    const auto z2 = zmod(2);
    for (const auto& r : {zmod(8), upper_triangular(z2, 2), poly_quotient(z2, 3), direct_product(z2, zmod(4)),
                          zmod(16), matrix_ring(z2, 2), poly_quotient(zmod(4), 2), poly_quotient(z2, 4)})
        for (Property p : poly_props) {
            CAPTURE(r->name());
            CAPTURE(property_name(p));
            const auto s = sets_for(p, *r);
            check_same(check_property(p, r, 1).witness, oracle::first_violation(*r, 1, s.hyp_m, s.concl_m));
            CHECK(check_property(p, r, 1).holds() == !oracle::first_violation(*r, 1, s.hyp_m, s.concl_m));
        }
}

TEST_CASE("annihilating pair streams")
{
    auto z2 = zmod(2);
    const auto zero2 = ElementSet::singleton(2, 0);
    annihilating_pairs(*z2, 1, zero2, [](std::span<const Elem> f, std::span<const Elem> g) {
        const bool f0 = std::all_of(f.begin(), f.end(), [](Elem e) { return e == 0; });
        const bool g0 = std::all_of(g.begin(), g.end(), [](Elem e) { return e == 0; });
        CHECK((f0 || g0));
        return true;
    });
    CHECK(count_annihilating_pairs(*z2, 1, zero2) == 7);

    auto z4 = zmod(4);
    std::vector<std::pair<Elem, Elem>> seen;
    annihilating_pairs(*z4, 0, ElementSet::singleton(4, 0), [&](std::span<const Elem> f, std::span<const Elem> g) {
        seen.emplace_back(f[0], g[0]);
        return true;
    });
    const std::vector<std::pair<Elem, Elem>> want = {{0, 0}, {0, 1}, {0, 2}, {0, 3},
                                                     {1, 0}, {2, 0}, {2, 2}, {3, 0}};
    CHECK(seen == want);

    // T2(Z/2) at d = 1: same pairs, same order, as the naive double loop.
    auto t2 = upper_triangular(z2, 2);
    std::vector<std::vector<Elem>> naive;
    const auto all = oracle::tuples(8, 1);
    for (const auto& f : all)
        for (const auto& g : all) {
            auto c = oracle::convolve(*t2, f, g);
            if (std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; })) {
                auto fg = f;
                fg.insert(fg.end(), g.begin(), g.end());
                naive.push_back(fg);
            }
        }
    std::vector<std::vector<Elem>> streamed;
    annihilating_pairs(*t2, 1, ElementSet::singleton(8, 0), [&](std::span<const Elem> f, std::span<const Elem> g) {
        std::vector<Elem> fg(f.begin(), f.end());
        fg.insert(fg.end(), g.begin(), g.end());
        streamed.push_back(fg);
        return true;
    });
    CHECK(streamed == naive);
    CHECK(count_annihilating_pairs(*t2, 1, ElementSet::singleton(8, 0)) == naive.size());
    SearchOptions four;
    four.threads = 4;
    CHECK(count_annihilating_pairs(*t2, 1, ElementSet::singleton(8, 0), four) == naive.size());
}

TEST_CASE("Armendariz examples")
{
    CHECK(check_armendariz(zmod(2), 2).holds());
    CHECK(check_armendariz(zmod(4), 2).verdict == Verdict::HoldsUpToBound);

    auto t2 = upper_triangular(zmod(2), 2);
    // f = [[1,1],[0,0]] + E11 x, g = [[0,1],[0,1]] + E22 x
    const Elem f0 = parse_element(*t2, "[[1,1],[0,0]]"), e11 = parse_element(*t2, "[[1,0],[0,0]]");
    const Elem g0 = parse_element(*t2, "[[0,1],[0,1]]"), e22 = parse_element(*t2, "[[0,0],[0,1]]");
    const Elem e12 = parse_element(*t2, "[[0,1],[0,0]]");
    CHECK(poly_mul(make_poly(t2, {f0, e11}), make_poly(t2, {g0, e22})).is_zero());
    CHECK(t2->mul(f0, e22) == e12);

    auto rep = check_armendariz(t2, 1);
    CHECK(rep.verdict == Verdict::Refuted);
    REQUIRE(rep.witness.has_value());
    CHECK(revalidate(rep));
    const auto& w = *rep.witness;
    CHECK(poly_mul(make_poly(t2, w.f), make_poly(t2, w.g)).is_zero());
    CHECK(t2->mul(w.f[w.i], w.g[w.j]) != 0);
    auto want = oracle::first_violation(*t2, 1, oracle::is_zero(*t2), oracle::is_zero(*t2));
    check_same(rep.witness, want);
}

TEST_CASE("weak and nil Armendariz examples")
{
    auto m2 = matrix_ring(zmod(2), 2);
    const Elem e11 = parse_element(*m2, "[[1,0],[0,0]]"), e12 = parse_element(*m2, "[[0,1],[0,0]]");
    const Elem e21 = parse_element(*m2, "[[0,0],[1,0]]");
    CHECK(poly_mul(make_poly(m2, {e12, e11}), make_poly(m2, {e11, e21})).is_zero());
    CHECK(m2->mul(e12, e21) == e11);
    CHECK_FALSE(oracle::nilpotent(*m2, e11));

    auto weak = check_weak_armendariz(m2, 1);
    CHECK(weak.verdict == Verdict::Refuted);
    REQUIRE(weak.witness.has_value());
    CHECK(revalidate(weak));
    CHECK_FALSE(oracle::nilpotent(*m2, weak.witness->product));
    auto nil = check_nil_armendariz(m2, 1);
    CHECK(nil.verdict == Verdict::Refuted);
    CHECK(revalidate(nil));

    CHECK(check_weak_armendariz(upper_triangular(zmod(2), 2), 1).verdict == Verdict::HoldsUpToBound);
    CHECK(check_weak_armendariz(zmod(6), 2).holds());
    CHECK(check_nil_armendariz(zmod(4), 2).holds());
    for (unsigned d = 0; d <= 3; ++d)
        CHECK(check_nil_armendariz(zmod(2), d).holds());
}

TEST_CASE("nil-Armendariz agrees with direct search when nil(R) is an ideal")
{
    for (const auto& r : {zmod(8), zmod(9), upper_triangular(zmod(2), 2), poly_quotient(zmod(2), 3),
                          direct_product(zmod(4), zmod(2)), upper_triangular(zmod(3), 2)}) {
        CAPTURE(r->name());
        const auto nil = nilradical(*r);
        auto direct = find_violation(*r, 1, nil, nil);
        auto rep = check_nil_armendariz(r, 1);
        CHECK(rep.holds() == !direct.witness.has_value());
        if (direct.witness)
            CHECK(*rep.witness == *direct.witness);
    }
}

TEST_CASE("products are decided through their factors")
{
    const auto t2 = upper_triangular(zmod(2), 2);
    for (const auto& r : {direct_product(zmod(4), zmod(2)), direct_product(t2, zmod(2)), direct_product(zmod(3), t2),
                          direct_product(poly_quotient(zmod(2), 2), zmod(4))})
        for (Property p : poly_props) {
            CAPTURE(r->name());
            CAPTURE(property_name(p));
            const auto s = sets_for(p, *r);
            auto direct = find_violation(*r, 1, s.hyp, s.concl);
            auto rep = check_property(p, r, 1);
            CHECK(rep.holds() == !direct.witness.has_value());
            check_same(rep.witness, oracle::first_violation(*r, 1, s.hyp_m, s.concl_m));
        }
}

TEST_CASE("reports do not depend on the thread count")
{
    for (const auto& r : {upper_triangular(zmod(2), 2), matrix_ring(zmod(2), 2), direct_product(zmod(4), zmod(4))})
        for (Property p : poly_props) {
            CAPTURE(r->name());
            SearchOptions one;
            auto base = check_property(p, r, 2, one);
            for (unsigned t : {2u, 4u, 8u}) {
                SearchOptions many;
                many.threads = t;
                auto rep = check_property(p, r, 2, many);
                CHECK(rep.verdict == base.verdict);
                CHECK(rep.witness == base.witness);
                CHECK(rep.pairs_examined == base.pairs_examined);
            }
        }
}

TEST_CASE("fixing g instead of f finds the least witness in (g, f, j, i) order")
{
    for (const auto& r : {upper_triangular(zmod(2), 2), matrix_ring(zmod(2), 2), zmod(4)}) {
        const auto zero = ElementSet::singleton(r->size(), r->zero());
        const auto nil = nilradical(*r);
        SearchOptions right;
        right.fix_right = true;
        auto got = find_violation(*r, 1, zero, nil, right).witness;
        auto left = find_violation(*r, 1, zero, nil).witness;
        CHECK(got.has_value() == left.has_value());

        std::optional<PairWitness> want;
        const auto all = oracle::tuples(r->size(), 1);
        for (const auto& g : all) {
            for (const auto& f : all) {
                auto c = oracle::convolve(*r, f, g);
                if (!std::all_of(c.begin(), c.end(), [&](Elem e) { return e == r->zero(); }))
                    continue;
                for (std::size_t j = 0; j < 2 && !want; ++j)
                    for (std::size_t i = 0; i < 2 && !want; ++i)
                        if (!oracle::nilpotent(*r, r->mul(f[i], g[j])))
                            want = PairWitness{f, g, i, j, r->mul(f[i], g[j])};
                if (want)
                    break;
            }
            if (want)
                break;
        }
        CHECK(got == want);
    }
}

TEST_CASE("profiles and the implication audit")
{
    auto z6 = property_profile(zmod(6), 2);
    CHECK(z6.reduced.verdict == Verdict::HoldsExact);
    CHECK(z6.semicommutative.holds());
    CHECK(z6.armendariz.holds());
    CHECK(z6.nil_armendariz.holds());
    CHECK(z6.weak_armendariz.holds());
    CHECK(z6.audit.empty());

    auto t2 = property_profile(upper_triangular(zmod(2), 2), 1);
    CHECK_FALSE(t2.reduced.holds());
    CHECK_FALSE(t2.semicommutative.holds());
    CHECK_FALSE(t2.armendariz.holds());
    CHECK(t2.weak_armendariz.holds());
    CHECK(t2.audit_clean());

    auto m2 = property_profile(matrix_ring(zmod(2), 2), 1);
    CHECK_FALSE(m2.armendariz.holds());
    CHECK_FALSE(m2.nil_armendariz.holds());
    CHECK_FALSE(m2.weak_armendariz.holds());
    CHECK(m2.audit_clean());
}

TEST_CASE("refutations persist at higher bounds")
{
    for (const auto& r : {upper_triangular(zmod(2), 2), matrix_ring(zmod(2), 2)})
        for (Property p : poly_props) {
            auto r1 = check_property(p, r, 1);
            if (r1.holds())
                continue;
            auto r2 = check_property(p, r, 2);
            CHECK_FALSE(r2.holds());
            // The padded d = 1 witness is still a witness at d = 2.
            auto w = *r1.witness;
            w.f.push_back(r->zero());
            w.g.push_back(r->zero());
            PropertyReport padded = r2;
            padded.witness = w;
            CHECK(revalidate(padded));
        }
}

TEST_CASE("node budget")
{
    SearchOptions tiny;
    tiny.max_nodes = 1000;
    CHECK_THROWS_AS(check_armendariz(zmod(8), 2, tiny), BudgetExceeded);
    CHECK_THROWS_AS(check_weak_armendariz(matrix_ring(zmod(2), 2), 3, tiny), BudgetExceeded);
}

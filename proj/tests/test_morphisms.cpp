#include <doctest.h>

#include "amalg/canonical_isos.hpp"
#include "amalg/constructions.hpp"
#include "oracle.hpp"

using namespace amalg;

namespace {

Ideal ideal_of(const RingPtr& r, std::vector<Elem> members)
{
    auto i = Ideal::verify(r, ElementSet(r->size(), std::move(members)));
    REQUIRE(i.has_value());
    return *i;
}

constexpr Elem T_E12 = 2, T_I = 5;
constexpr Elem M_E12 = 4;

}  // namespace

TEST_CASE("generated ideals")
{
    auto z4 = generated_ideal(zmod(4), {2});
    CHECK(z4.members().members() == std::vector<Elem>{0, 2});
    CHECK(z4.proper());

    auto t2 = generated_ideal(upper_triangular(zmod(2), 2), {T_E12});
    CHECK(t2.members().members() == std::vector<Elem>{0, T_E12});
    CHECK(t2.proper());

    auto m2 = generated_ideal(matrix_ring(zmod(2), 2), {M_E12});
    CHECK(m2.size() == 16);
    CHECK_FALSE(m2.proper());
}

TEST_CASE("ideal enumeration")
{
    CHECK(enumerate_ideals(zmod(4)).size() == 3);
    CHECK(enumerate_ideals(zmod(6)).size() == 4);
    CHECK(enumerate_ideals(matrix_ring(zmod(2), 2)).size() == 2);

    // Against a brute-force scan of all subsets of a small ring.
    for (const auto& r : {zmod(6), upper_triangular(zmod(2), 2), direct_product(zmod(2), zmod(4))}) {
        const std::size_t n = r->size();
        std::vector<ElementSet> naive;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<Elem> m;
            for (Elem x = 0; x < n; ++x)
                if (mask >> x & 1)
                    m.push_back(x);
            if (Ideal::verify(r, ElementSet(n, m)))
                naive.push_back(ElementSet(n, m));
        }
        std::sort(naive.begin(), naive.end());
        auto got = enumerate_ideals(r);
        REQUIRE(got.size() == naive.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i].members() == naive[i]);
    }
}

TEST_CASE("homomorphism verification")
{
    auto z4 = zmod(4), z2 = zmod(2);
    auto red = verify_hom({0, 1, 0, 1}, z4, z2);
    REQUIRE(red.hom.has_value());
    CHECK(red.hom->surjective());
    CHECK_FALSE(red.hom->injective());

    auto t2 = upper_triangular(z2, 2);
    auto scalar = verify_hom({0, T_I}, z2, t2);
    REQUIRE(scalar.hom.has_value());
    CHECK(scalar.hom->injective());

    auto clash = verify_hom({0, 1}, z2, z4);
    CHECK_FALSE(clash.hom.has_value());
    REQUIRE(clash.violation.has_value());
    CHECK(clash.violation->law == HomLaw::Additive);
    CHECK(clash.violation->witness == std::vector<Elem>{1, 1});
}

TEST_CASE("homomorphism enumeration")
{
    auto z2 = zmod(2), z4 = zmod(4);
    CHECK(enumerate_homs(z2, z4).empty());
    auto r = enumerate_homs(z4, z2);
    REQUIRE(r.size() == 1);
    CHECK(r[0].map() == std::vector<Elem>{0, 1, 0, 1});
    auto t2 = upper_triangular(z2, 2);
    auto s = enumerate_homs(z2, t2);
    REQUIRE(s.size() == 1);
    CHECK(s[0].map() == std::vector<Elem>{0, T_I});

    // Matches a brute-force scan over all maps with 1 -> 1.
    const std::vector<std::pair<RingPtr, RingPtr>> pairs = {{zmod(4), direct_product(z2, z2)},
                                                            {direct_product(z2, z2), direct_product(z2, z2)},
                                                            {poly_quotient(z2, 2), t2},
                                                            {zmod(6), direct_product(z2, zmod(3))}};
    for (const auto& [a, b] : pairs) {
        std::vector<std::vector<Elem>> naive;
        for (const auto& m : oracle::tuples(b->size(), static_cast<unsigned>(a->size() - 1)))
            if (verify_hom(m, a, b).hom)
                naive.push_back(m);
        auto got = enumerate_homs(a, b);
        REQUIRE(got.size() == naive.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].map() == naive[i]);
            CHECK(verify_hom(got[i].map(), a, b).hom.has_value());
        }
    }
}

TEST_CASE("preimages")
{
    auto z4 = zmod(4), z2 = zmod(2);
    auto red = make_hom({0, 1, 0, 1}, z4, z2);
    CHECK(preimage_ideal(red, ideal_of(z2, {0})).members().members() == std::vector<Elem>{0, 2});

    auto t2 = upper_triangular(z2, 2);
    auto scalar = make_hom({0, T_I}, z2, t2);
    auto p = preimage_ideal(scalar, ideal_of(t2, {0, T_E12}));
    CHECK(p.members().members() == std::vector<Elem>{0});
    CHECK(p.proper());

    auto z8 = zmod(8);
    for (const auto& j : enumerate_ideals(z8))
        CHECK(preimage_ideal(RingHom::identity(z8), j).members() == j.members());
}

TEST_CASE("radical ideals")
{
    CHECK(is_radical_ideal(zmod(4), ideal_of(zmod(4), {0, 2})));
    CHECK_FALSE(is_radical_ideal(zmod(8), ideal_of(zmod(8), {0, 4})));
    CHECK(is_radical_ideal(zmod(6), ideal_of(zmod(6), {0})));

    // Agrees with reducedness of the quotient.
    for (const auto& r : {zmod(8), zmod(9), upper_triangular(zmod(2), 2), poly_quotient(zmod(2), 3)})
        for (const auto& j : enumerate_ideals(r))
            if (j.proper())
                CHECK(is_radical_ideal(r, j) == is_reduced(*quotient_ring(j).ring).reduced);
}

TEST_CASE("semicommutative ideals")
{
    auto t2 = upper_triangular(zmod(2), 2);
    CHECK(is_semicommutative_ideal(t2, ideal_of(t2, {0, T_E12})).holds);
    CHECK(is_semicommutative_ideal(zmod(4), ideal_of(zmod(4), {0, 2})).holds);
    auto z9 = zmod(9);
    auto v = is_semicommutative_ideal(z9, ideal_of(z9, {0, 3, 6}));
    CHECK(v.holds);
    CHECK(v.nil.members() == std::vector<Elem>{0, 3, 6});
    CHECK(v.nil_closed_under_add);
    CHECK(v.nil_absorbs_j);
}

TEST_CASE("no proper ideal meets the regular central elements")
{
    for (const auto& r : {zmod(8), zmod(6), upper_triangular(zmod(2), 2), matrix_ring(zmod(2), 2),
                          poly_quotient(zmod(3), 2), direct_product(zmod(2), zmod(4))}) {
        const auto s = regular_central(*r);
        for (const auto& j : enumerate_ideals(r))
            if (j.proper())
                CHECK(j.members().intersect(s).empty());
    }
}

TEST_CASE("canonical isomorphisms")
{
    auto z2 = zmod(2);
    auto t2 = upper_triangular(z2, 2);
    auto am = amalgamation(make_hom({0, T_I}, z2, t2), ideal_of(t2, {0, T_E12}));
    auto rep = check_canonical_isos(am);
    CHECK(rep.onto_a.holds);
    CHECK(rep.onto_faj.holds);
    CHECK(rep.disjoint.applicable);
    CHECK(rep.disjoint.holds);

    auto z4 = zmod(4);
    auto dup = duplication(z4, ideal_of(z4, {0, 2}));
    auto r4 = check_canonical_isos(dup);
    CHECK(r4.onto_a.holds);
    CHECK(r4.onto_faj.holds);
    CHECK_FALSE(r4.disjoint.applicable);
    CHECK(r4.all_hold());

    auto z6 = zmod(6);
    auto zero = check_canonical_isos(duplication(z6, ideal_of(z6, {0})));
    CHECK(zero.onto_a.holds);
    CHECK(zero.onto_faj.holds);
    CHECK(zero.disjoint.applicable);
    CHECK(zero.disjoint.holds);
}

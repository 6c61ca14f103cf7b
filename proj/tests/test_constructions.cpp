#include <doctest.h>

#include <numeric>

#include "amalg/constructions.hpp"
#include "oracle.hpp"

using namespace amalg;

namespace {

// Bijection from r onto s preserving zero, one, + and *.
bool is_isomorphism(const std::vector<Elem>& map, const FiniteRing& r, const FiniteRing& s)
{
    if (map.size() != r.size() || r.size() != s.size())
        return false;
    std::vector<char> hit(s.size(), 0);
    for (Elem x : map) {
        if (x >= s.size() || hit[x])
            return false;
        hit[x] = 1;
    }
    if (map[r.zero()] != s.zero() || map[r.one()] != s.one())
        return false;
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem b = 0; b < r.size(); ++b)
            if (map[r.add(a, b)] != s.add(map[a], map[b]) || map[r.mul(a, b)] != s.mul(map[a], map[b]))
                return false;
    return true;
}

Ideal ideal_of(const RingPtr& r, std::vector<Elem> members)
{
    auto i = Ideal::verify(r, ElementSet(r->size(), std::move(members)));
    REQUIRE(i.has_value());
    return *i;
}

constexpr Elem T_E12 = 2, T_I = 5;

}  // namespace

TEST_CASE("catalog sizes and identities")
{
    CHECK(zmod(4)->size() == 4);
    CHECK(nilradical(*zmod(4)).members() == std::vector<Elem>{0, 2});
    CHECK(is_reduced(*zmod(6)).reduced);
    CHECK_THROWS_AS(zmod(1), InvalidArgument);

    auto p = direct_product(zmod(2), zmod(3));
    CHECK(p->size() == 6);
    CHECK(p->one() == 1 * 3 + 1);
    CHECK(is_reduced(*direct_product(zmod(2), zmod(2))).reduced);

    auto t2 = upper_triangular(zmod(2), 2);
    CHECK(t2->size() == 8);
    CHECK(t2->one() == T_I);
    CHECK(nilradical(*t2).members() == std::vector<Elem>{0, T_E12});

    auto m2 = matrix_ring(zmod(2), 2);
    CHECK(m2->size() == 16);
    CHECK(m2->one() == parse_element(*m2, "[[1,0],[0,1]]"));
    auto ideals = enumerate_ideals(m2);
    REQUIRE(ideals.size() == 2);
    CHECK(ideals[0].size() == 1);
    CHECK(ideals[1].size() == 16);

    auto pq2 = poly_quotient(zmod(2), 2);
    CHECK(pq2->size() == 4);
    CHECK(pq2->mul(2, 2) == 0);
    CHECK(nilradical(*pq2).members() == std::vector<Elem>{0, 2});
    auto pq3 = poly_quotient(zmod(2), 3);
    CHECK(pq3->mul(2, 4) == 0);
    CHECK(pq3->mul(2, 2) == 4);

    CHECK_THROWS(matrix_ring(zmod(4), 3));
}

TEST_CASE("CRT map identifies Z/2 x Z/3 with Z/6")
{
    std::vector<Elem> crt(6);
    for (Elem x = 0; x < 6; ++x)
        crt[x] = (x % 2) * 3 + x % 3;
    CHECK(is_isomorphism(crt, *zmod(6), *direct_product(zmod(2), zmod(3))));
}

TEST_CASE("quotient rings")
{
    auto z4 = zmod(4);
    auto q = quotient_ring(ideal_of(z4, {0, 2}));
    CHECK(q.ring->size() == 2);
    CHECK(is_isomorphism({0, 1}, *q.ring, *zmod(2)));
    CHECK(q.surjection == std::vector<Elem>{0, 1, 0, 1});

    auto t2 = upper_triangular(zmod(2), 2);
    auto qt = quotient_ring(ideal_of(t2, {0, T_E12}));
    REQUIRE(qt.ring->size() == 4);
    // Cosets are ordered by least member: {0,E12}, {E22,..}, {E11,..}, {I,..};
    // the diagonal (a11, a22) lands on the product index a11*2 + a22.
    CHECK(is_isomorphism({0, 1, 2, 3}, *qt.ring, *direct_product(zmod(2), zmod(2))));

    auto m2 = matrix_ring(zmod(2), 2);
    auto q0 = quotient_ring(ideal_of(m2, {0}));
    std::vector<Elem> id(16);
    std::iota(id.begin(), id.end(), 0);
    CHECK(is_isomorphism(id, *q0.ring, *m2));
}

TEST_CASE("subring closure")
{
    auto t2 = upper_triangular(zmod(2), 2);
    auto e = subring_closure(t2, ElementSet(8, {T_I, T_E12}), true);
    CHECK(e.carrier.members() == std::vector<Elem>{0, T_E12, T_I, 7});
    CHECK(e.has_identity());

    auto whole = subring_closure(t2, ElementSet::all(8), false);
    CHECK(whole.carrier.size() == 8);

    auto z4 = subring_closure(zmod(4), ElementSet(4, {2}), false);
    CHECK(z4.carrier.members() == std::vector<Elem>{0, 2});
    CHECK_FALSE(z4.has_identity());
    CHECK_FALSE(z4.contains_host_one);
}

TEST_CASE("f(A)+J")
{
    auto z2 = zmod(2);
    auto t2 = upper_triangular(z2, 2);
    auto scalar = make_hom({0, T_I}, z2, t2);
    auto faj = f_plus_j(scalar, ideal_of(t2, {0, T_E12}));
    REQUIRE(faj.has_identity());
    CHECK(faj.carrier.members() == std::vector<Elem>{0, T_E12, T_I, 7});
    // a I + b E12 -> a + b t
    std::vector<Elem> to_pq(4);
    for (Elem k = 0; k < 4; ++k) {
        const Elem h = faj.map[k];
        to_pq[k] = ((h >> 2) & 1) + 2 * ((h >> 1) & 1);
    }
    CHECK(is_isomorphism(to_pq, **faj.sub, *poly_quotient(z2, 2)));

    auto z6 = zmod(6);
    auto same = f_plus_j(RingHom::identity(z6), ideal_of(z6, {0}));
    CHECK(same.carrier.size() == 6);

    auto red = make_hom({0, 1, 0, 1}, zmod(4), z2);
    CHECK(f_plus_j(red, ideal_of(z2, {0})).carrier.size() == 2);
}

TEST_CASE("amalgamation examples")
{
    auto z2 = zmod(2);
    auto trivial = amalgamation(RingHom::identity(z2), ideal_of(z2, {0}));
    CHECK(trivial.ring->size() == 2);
    CHECK(is_isomorphism({0, 1}, *trivial.ring, *z2));

    auto z4 = zmod(4);
    auto d4 = amalgamation(RingHom::identity(z4), ideal_of(z4, {0, 2}));
    CHECK(d4.ring->size() == 8);
    auto r = is_reduced(*d4.ring);
    CHECK_FALSE(r.reduced);
    REQUIRE(r.witness.has_value());
    CHECK(d4.decode[*r.witness] == std::pair<Elem, Elem>{0, 2});
    CHECK(r.witness == parse_element(*d4.ring, "(0,2)"));

    auto t2 = upper_triangular(z2, 2);
    auto am = amalgamation(make_hom({0, T_I}, z2, t2), ideal_of(t2, {0, T_E12}));
    REQUIRE(am.ring->size() == 4);
    // (a, aI + bE12) -> a + bt
    std::vector<Elem> to_pq(4);
    for (Elem k = 0; k < 4; ++k) {
        const auto [a, j] = am.decode[k];
        to_pq[k] = a + (j == T_E12 ? 2 : 0);
    }
    CHECK(is_isomorphism(to_pq, *am.ring, *poly_quotient(z2, 2)));

    CHECK_THROWS(amalgamation(RingHom::identity(z2), ideal_of(z2, {0, 1})));
}

TEST_CASE("duplication")
{
    auto z6 = zmod(6);
    auto d6 = duplication(z6, ideal_of(z6, {0, 2, 4}));
    CHECK(d6.ring->size() == 18);
    CHECK(is_reduced(*d6.ring).reduced);
    for (Elem x = 0; x < 18; ++x)
        CHECK(oracle::nilpotent(*d6.ring, x) == (x == d6.ring->zero()));

    auto z4 = zmod(4);
    auto d4 = duplication(z4, ideal_of(z4, {0, 2}));
    CHECK_FALSE(is_reduced(*d4.ring).reduced);
    auto am4 = amalgamation(RingHom::identity(z4), ideal_of(z4, {0, 2}));
    CHECK(d4.decode == am4.decode);
    CHECK(d4.ring->same_tables(*am4.ring));

    auto d0 = duplication(z6, ideal_of(z6, {0}));
    std::vector<Elem> id(6);
    std::iota(id.begin(), id.end(), 0);
    CHECK(is_isomorphism(id, *d0.ring, *z6));
}

TEST_CASE("amalgam invariants over every hom and ideal of small rings")
{
    const std::vector<RingPtr> rings = {zmod(2), zmod(4), zmod(6), upper_triangular(zmod(2), 2),
                                        poly_quotient(zmod(2), 2)};
    std::size_t checked = 0;
    for (const auto& a : rings)
        for (const auto& b : rings)
            for (const auto& f : enumerate_homs(a, b))
                for (const auto& j : enumerate_ideals(b)) {
                    if (!j.proper())
                        continue;
                    auto am = amalgamation(f, j);
                    const auto& r = *am.ring;
                    REQUIRE(r.size() == a->size() * j.size());
                    CHECK(am.decode[r.one()] == std::pair<Elem, Elem>{a->one(), b->zero()});
                    CHECK(am.decode[r.zero()] == std::pair<Elem, Elem>{a->zero(), b->zero()});

                    // The pair encoding into A x B is an injective ring map.
                    auto ab = direct_product(a, b);
                    std::vector<Elem> into(r.size());
                    for (Elem x = 0; x < r.size(); ++x) {
                        CHECK(am.proj_a[x] == am.decode[x].first);
                        CHECK(am.proj_b[x] == b->add(f(am.decode[x].first), am.decode[x].second));
                        into[x] = am.proj_a[x] * static_cast<Elem>(b->size()) + am.proj_b[x];
                    }
                    bool ok = true;
                    for (Elem x = 0; x < r.size(); ++x)
                        for (Elem y = 0; y < r.size(); ++y) {
                            ok = ok && into[r.add(x, y)] == ab->add(into[x], into[y]);
                            ok = ok && into[r.mul(x, y)] == ab->mul(into[x], into[y]);
                        }
                    CHECK(ok);
                    CHECK(make_hom(am.proj_a, am.ring, a).surjective());

                    std::vector<Elem> img(am.proj_b);
                    CHECK(ElementSet(b->size(), img) == f_plus_j(f, j).carrier);

                    // Reducedness of the amalgam matches a direct square scan.
                    bool nil_meets_j = false;
                    for (Elem x : j.members())
                        nil_meets_j = nil_meets_j || (x != b->zero() && oracle::nilpotent(*b, x));
                    CHECK(is_reduced(r).reduced == (is_reduced(*a).reduced && !nil_meets_j));
                    ++checked;
                }
    CHECK(checked > 20);
}

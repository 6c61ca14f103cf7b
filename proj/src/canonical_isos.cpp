#include "amalg/canonical_isos.hpp"

namespace amalg {

namespace {

// A bijective map that passes full hom verification.
IsoCheck verify_iso(const std::vector<Elem>& map, const RingPtr& from, const RingPtr& to)
{
    IsoCheck c;
    auto v = verify_hom(map, from, to);
    if (!v.hom) {
        c.detail = "map is not a ring homomorphism";
        return c;
    }
    if (!v.hom->injective() || !v.hom->surjective()) {
        c.detail = "homomorphism is not bijective";
        return c;
    }
    c.holds = true;
    c.detail = "verified";
    return c;
}

// Pushes a map on the amalgam through the quotient by `members`; fails if
// the map is not constant on cosets.
std::optional<std::vector<Elem>> through_quotient(const AmalgamRing& am, const ElementSet& members,
                                                  const std::vector<Elem>& map, RingPtr& quotient)
{
    auto ideal = Ideal::verify(am.ring, members);
    if (!ideal)
        throw InternalError("canonical kernel of " + am.ring->name() + " is not an ideal");
    auto q = quotient_ring(*ideal);
    quotient = q.ring;
    std::vector<Elem> induced(q.ring->size(), static_cast<Elem>(-1));
    for (Elem u = 0; u < am.ring->size(); ++u) {
        Elem c = q.surjection[u];
        if (induced[c] == static_cast<Elem>(-1))
            induced[c] = map[u];
        else if (induced[c] != map[u])
            return std::nullopt;
    }
    return induced;
}

}  // namespace

bool image_meets_ideal_trivially(const RingHom& f, const Ideal& j)
{
    const FiniteRing& B = *f.codomain();
    for (Elem a = 0; a < f.domain()->size(); ++a)
        if (f(a) != B.zero() && j.contains(f(a)))
            return false;
    return true;
}

CanonicalIsoReport check_canonical_isos(const AmalgamRing& am)
{
    CanonicalIsoReport rep;
    const FiniteRing& A = *am.a;
    const FiniteRing& B = *am.b;
    const Embedding faj = f_plus_j(am.hom, am.ideal);
    std::vector<int> faj_pos(B.size(), -1);
    for (std::size_t i = 0; i < faj.map.size(); ++i)
        faj_pos[faj.map[i]] = static_cast<int>(i);
    std::vector<Elem> to_faj(am.ring->size());
    for (Elem u = 0; u < am.ring->size(); ++u) {
        if (faj_pos[am.proj_b[u]] < 0)
            throw InternalError("proj_b leaves f(A)+J");
        to_faj[u] = static_cast<Elem>(faj_pos[am.proj_b[u]]);
    }

    // 0 × J = {(0, j)}.
    {
        std::vector<Elem> members;
        for (Elem u = 0; u < am.ring->size(); ++u)
            if (am.decode[u].first == A.zero())
                members.push_back(u);
        RingPtr q;
        auto induced = through_quotient(am, ElementSet(am.ring->size(), members), am.proj_a, q);
        if (!induced)
            rep.onto_a.detail = "projection to A is not constant on cosets of 0xJ";
        else
            rep.onto_a = verify_iso(*induced, q, am.a);
    }
    // f⁻¹(J) × 0 = {(a, 0) : f(a) ∈ J}.
    {
        std::vector<Elem> members;
        for (Elem u = 0; u < am.ring->size(); ++u)
            if (am.proj_b[u] == B.zero())
                members.push_back(u);
        RingPtr q;
        auto induced = through_quotient(am, ElementSet(am.ring->size(), members), to_faj, q);
        if (!induced)
            rep.onto_faj.detail = "projection to f(A)+J is not constant on cosets of f^-1(J)x0";
        else
            rep.onto_faj = verify_iso(*induced, q, *faj.sub);
    }
    if (am.hom.injective() && image_meets_ideal_trivially(am.hom, am.ideal)) {
        rep.disjoint = verify_iso(to_faj, am.ring, *faj.sub);
    } else {
        rep.disjoint.applicable = false;
        rep.disjoint.holds = false;
        rep.disjoint.detail = "not applicable";
    }
    return rep;
}

}  // namespace amalg

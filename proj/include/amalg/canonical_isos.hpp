#pragma once

#include <string>

#include "amalg/constructions.hpp"

namespace amalg {

struct IsoCheck {
    bool applicable = true;
    bool holds = false;
    std::string detail;
};

/// Explicit-map verification of the three standard isomorphisms of an
/// amalgamation: quotient by 0×J onto A, quotient by f⁻¹(J)×0 onto
/// f(A)+J, and (f injective, f(A)∩J = 0) the amalgam onto f(A)+J.
struct CanonicalIsoReport {
    IsoCheck onto_a;
    IsoCheck onto_faj;
    IsoCheck disjoint;

    [[nodiscard]] bool all_hold() const
    {
        return onto_a.holds && onto_faj.holds && (!disjoint.applicable || disjoint.holds);
    }
};

CanonicalIsoReport check_canonical_isos(const AmalgamRing& am);

/// f(A) ∩ J = {0}.
bool image_meets_ideal_trivially(const RingHom& f, const Ideal& j);

}  // namespace amalg

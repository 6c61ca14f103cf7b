#pragma once

// Verified two-sided ideals and unital homomorphisms between finite rings.

#include <optional>
#include <string>
#include <vector>

#include "amalg/ring.hpp"

namespace amalg {

class Ideal {
public:
    /// Checks additive closure, negation and two-sided absorption.
    static std::optional<Ideal> verify(RingPtr host, const ElementSet& members);

    [[nodiscard]] const RingPtr& host() const { return host_; }
    [[nodiscard]] const ElementSet& members() const { return members_; }
    [[nodiscard]] bool proper() const { return proper_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool contains(Elem e) const { return members_.contains(e); }
    /// Position of e in the sorted member sequence, or -1.
    [[nodiscard]] int position(Elem e) const;

private:
    Ideal(RingPtr host, ElementSet members);

    RingPtr host_;
    ElementSet members_;
    std::vector<int> position_;
    bool proper_ = true;
};

class RingHom;
struct HomVerdict;
HomVerdict verify_hom(const std::vector<Elem>& map, const RingPtr& a, const RingPtr& b);

class RingHom {
public:
    [[nodiscard]] const RingPtr& domain() const { return domain_; }
    [[nodiscard]] const RingPtr& codomain() const { return codomain_; }
    [[nodiscard]] const std::vector<Elem>& map() const { return map_; }
    [[nodiscard]] Elem operator()(Elem a) const { return map_[a]; }
    [[nodiscard]] bool injective() const { return injective_; }
    [[nodiscard]] bool surjective() const { return surjective_; }
    [[nodiscard]] ElementSet image() const;

    static RingHom identity(RingPtr r);

private:
    friend HomVerdict verify_hom(const std::vector<Elem>& map, const RingPtr& a, const RingPtr& b);
    RingHom(RingPtr domain, RingPtr codomain, std::vector<Elem> map);

    RingPtr domain_;
    RingPtr codomain_;
    std::vector<Elem> map_;
    bool injective_ = false;
    bool surjective_ = false;
};

enum class HomLaw { Range, Unital, Additive, Multiplicative };

struct HomViolation {
    HomLaw law;
    std::vector<Elem> witness;  // the domain pair (x, y), or the single offending element
};

struct HomVerdict {
    std::optional<RingHom> hom;
    std::optional<HomViolation> violation;
};

/// Like verify_hom but throws InvalidArgument on failure.
RingHom make_hom(const std::vector<Elem>& map, const RingPtr& a, const RingPtr& b);

Ideal generated_ideal(const RingPtr& r, const std::vector<Elem>& gens);

/// All two-sided ideals ordered by size, then by member sequence.
std::vector<Ideal> enumerate_ideals(const RingPtr& r, std::size_t budget = 256);

/// All unital homomorphisms, in lexicographic order of their maps.
std::vector<RingHom> enumerate_homs(const RingPtr& a, const RingPtr& b, std::size_t budget = 256);

Ideal preimage_ideal(const RingHom& f, const Ideal& j);

/// B/J reduced, i.e. x^2 in J implies x in J.
bool is_radical_ideal(const RingPtr& r, const Ideal& j);

struct IdealSemicommutativity {
    /// x, y in J with xy = 0 imply xJy = 0.
    bool holds = true;
    std::optional<SemicommutativeWitness> witness;
    /// Same condition with the middle factor ranging over the whole host.
    bool holds_host_middle = true;
    std::optional<SemicommutativeWitness> witness_host_middle;
    ElementSet nil;                         // nilradical(host) intersected with J
    bool nil_closed_under_add = true;
    bool nil_absorbs_j = true;              // J nil(J) and nil(J) J inside nil(J)
};

IdealSemicommutativity is_semicommutative_ideal(const RingPtr& r, const Ideal& j);

}  // namespace amalg

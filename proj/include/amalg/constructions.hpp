#pragma once

// Catalog rings and the amalgamation A ⋈^f J = {(a, f(a) + j)} ⊆ A × B.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "amalg/morphisms.hpp"
#include "amalg/ring.hpp"

namespace amalg {

inline constexpr std::size_t default_size_budget = 256;

RingPtr zmod(int n);
RingPtr direct_product(const RingPtr& r, const RingPtr& s, std::size_t budget = default_size_budget);
/// T_k(R); entries row-major over the upper triangle, first entry most significant.
RingPtr upper_triangular(const RingPtr& r, int k, std::size_t budget = default_size_budget);
/// M_k(R); entries row-major, first entry most significant.
RingPtr matrix_ring(const RingPtr& r, int k, std::size_t budget = default_size_budget);
/// R[t]/(t^k); index = sum c_i |R|^i.
RingPtr poly_quotient(const RingPtr& r, int k, std::size_t budget = default_size_budget);

struct QuotientRing {
    RingPtr ring;
    std::vector<Elem> surjection;  // host element -> coset index
};

/// Cosets ordered by their smallest member, which is also the representative.
QuotientRing quotient_ring(const Ideal& ideal);

/// A subset of `host` closed under +, - and *; `sub` is present when the
/// carrier has its own multiplicative identity (it need not be host's one).
struct Embedding {
    RingPtr host;
    ElementSet carrier;
    std::optional<RingPtr> sub;
    std::vector<Elem> map;  // sub index -> host index (carrier order)
    bool contains_host_one = false;

    [[nodiscard]] bool has_identity() const { return sub.has_value(); }
};

Embedding subring_closure(const RingPtr& r, const ElementSet& seed, bool require_one);

/// The subring f(A) + J of B.
Embedding f_plus_j(const RingHom& f, const Ideal& j);

struct AmalgamRing {
    RingPtr ring;
    RingPtr a;
    RingPtr b;
    RingHom hom;
    Ideal ideal;
    std::vector<std::pair<Elem, Elem>> decode;  // (a, j) with j an element of B lying in J
    std::vector<Elem> proj_a;
    std::vector<Elem> proj_b;

    [[nodiscard]] Elem encode(Elem a_elem, Elem j_elem) const;
};

/// Element order: lexicographic in (a, position of j in J).
AmalgamRing amalgamation(const RingHom& f, const Ideal& j, std::size_t budget = default_size_budget);
AmalgamRing duplication(const RingPtr& a, const Ideal& i, std::size_t budget = default_size_budget);

/// Parses an element literal in the ring's native notation: integers for
/// Z/n, (x,y) for products and amalgams, [[..],[..]] for matrices and
/// c0 + c1 t + c2 t^2 for truncated polynomials.
Elem parse_element(const FiniteRing& r, std::string_view text);

}  // namespace amalg

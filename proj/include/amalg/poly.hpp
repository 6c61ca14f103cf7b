#pragma once

// Dense bounded-degree polynomials over a finite ring.

#include <optional>
#include <string>
#include <vector>

#include "amalg/ring.hpp"

namespace amalg {

struct Polynomial {
    RingPtr host;
    std::vector<Elem> coeffs;  // coeffs[i] multiplies x^i; trailing zeros allowed

    /// Largest i with a nonzero coefficient; nullopt for the zero polynomial.
    [[nodiscard]] std::optional<std::size_t> degree() const;
    [[nodiscard]] bool is_zero() const { return !degree().has_value(); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.host == b.host && a.coeffs == b.coeffs; }
};

Polynomial make_poly(RingPtr host, std::vector<Elem> coeffs);

/// Coefficient k of the result is the ring sum of a_i b_j over i + j = k.
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
/// Coefficientwise sum; the shorter operand is zero-padded.
Polynomial poly_add(const Polynomial& f, const Polynomial& g);

bool product_coeffs_in_set(const Polynomial& f, const Polynomial& g, const ElementSet& s);

/// "c0 + c1*x + c2*x^2" using element labels; zero terms are dropped.
std::string render(const Polynomial& p);

/// All coefficient sequences of length d+1 in lexicographic order
/// (a_0 most significant), streamed.
class PolyStream {
public:
    PolyStream(RingPtr host, std::size_t degree_bound, std::size_t max_count = 1u << 26);

    /// Advances to the next polynomial; false once the stream is exhausted.
    bool next(Polynomial& out);
    [[nodiscard]] std::size_t total() const { return total_; }

private:
    RingPtr host_;
    std::vector<Elem> cur_;
    std::size_t total_ = 0;
    std::size_t emitted_ = 0;
};

PolyStream enumerate_polys(RingPtr host, std::size_t degree_bound, std::size_t max_count = 1u << 26);

}  // namespace amalg

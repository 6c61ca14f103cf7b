#pragma once

// Finite unital rings given by Cayley tables, and the element-level
// computations everything else is built from.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalg {

using Elem = std::uint32_t;

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

/// Raised when an object that should be consistent by construction is not.
struct InternalError : Error {
    using Error::Error;
};

enum class RingKind { Zmod, Product, Upper, Matrix, PolyQuotient, Table, Quotient, Subring, Amalgam };

/// How a ring was built. Element literal parsing and label generation
/// dispatch on this.
struct Provenance {
    RingKind kind = RingKind::Table;
    std::string descriptor;
    int param = 0;               // modulus, matrix dimension or truncation length
    std::vector<RingPtr> parts;  // base rings (product factors, matrix base, host, A/B)
    std::vector<Elem> link;      // quotient: host -> coset; subring: sub -> host; amalgam: elem -> a*|B|+b
};

/// Sorted, duplicate-free subset of a ring's elements with O(1) membership.
class ElementSet {
public:
    ElementSet() = default;
    ElementSet(std::size_t host_size, std::vector<Elem> members);

    static ElementSet from_mask(const std::vector<char>& mask);
    static ElementSet all(std::size_t host_size);
    static ElementSet singleton(std::size_t host_size, Elem e);

    [[nodiscard]] bool contains(Elem e) const { return e < mask_.size() && mask_[e] != 0; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] std::size_t host_size() const { return mask_.size(); }
    [[nodiscard]] const std::vector<Elem>& members() const { return members_; }
    [[nodiscard]] const std::vector<char>& mask() const { return mask_; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }

    [[nodiscard]] ElementSet intersect(const ElementSet& other) const;
    [[nodiscard]] bool subset_of(const ElementSet& other) const;

    friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.members_ == b.members_ && a.mask_.size() == b.mask_.size(); }
    friend bool operator<(const ElementSet& a, const ElementSet& b);

private:
    std::vector<Elem> members_;
    std::vector<char> mask_;
};

enum class Law { AddComm, AddAssoc, AddIdentity, AddInverse, MulAssoc, MulIdentity, DistribL, DistribR, Range };

const char* law_name(Law law);

struct AxiomViolation {
    Law law;
    std::vector<Elem> witness;  // arity of the violated law
};

/// Raw candidate data for a ring; validated by verify_axioms.
struct RingTables {
    std::size_t size = 0;
    std::vector<Elem> add;  // row-major size*size
    std::vector<Elem> mul;
    Elem zero = 0;
    Elem one = 1;
};

/// First violated ring axiom in a fixed scan order (laws in enum order,
/// witnesses lexicographic), or nullopt if the tables define a unital ring
/// with 1 != 0.
std::optional<AxiomViolation> verify_axioms(const RingTables& t);

/// Thrown when tables handed to FiniteRing::create are not a ring.
struct AxiomError : Error {
    AxiomError(AxiomViolation v);
    AxiomViolation violation;
};

class FiniteRing {
public:
    /// Verifies the axioms; throws AxiomError (or InvalidArgument for n < 2).
    static RingPtr create(RingTables tables, std::vector<std::string> labels, Provenance provenance);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] Elem zero() const { return zero_; }
    [[nodiscard]] Elem one() const { return one_; }

    [[nodiscard]] Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    [[nodiscard]] Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
    [[nodiscard]] Elem neg(Elem a) const { return neg_[a]; }
    [[nodiscard]] Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    [[nodiscard]] std::span<const Elem> add_row(Elem a) const { return {add_.data() + a * n_, n_}; }
    [[nodiscard]] std::span<const Elem> mul_row(Elem a) const { return {mul_.data() + a * n_, n_}; }
    [[nodiscard]] const std::vector<Elem>& add_table() const { return add_; }
    [[nodiscard]] const std::vector<Elem>& mul_table() const { return mul_; }

    [[nodiscard]] const std::string& label(Elem a) const { return labels_[a]; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const Provenance& provenance() const { return provenance_; }
    [[nodiscard]] const std::string& name() const { return provenance_.descriptor; }

    /// Stable hash of the operation tables (labels and provenance excluded).
    [[nodiscard]] std::uint64_t fingerprint() const { return fingerprint_; }
    [[nodiscard]] bool same_tables(const FiniteRing& other) const;

    [[nodiscard]] bool is_commutative() const;

private:
    FiniteRing() = default;

    std::size_t n_ = 0;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    Elem zero_ = 0;
    Elem one_ = 1;
    std::vector<std::string> labels_;
    Provenance provenance_;
    std::uint64_t fingerprint_ = 0;
};

Elem power(const FiniteRing& r, Elem a, unsigned k);

struct Nilpotency {
    bool nilpotent = false;
    std::optional<unsigned> index;  // smallest k >= 1 with a^k = 0
};

Nilpotency is_nilpotent(const FiniteRing& r, Elem a);

/// Set of all nilpotent elements. Not assumed to be an ideal.
ElementSet nilradical(const FiniteRing& r);

struct ReducedVerdict {
    bool reduced = true;
    std::optional<Elem> witness;  // smallest nonzero a with a^2 = 0
};

ReducedVerdict is_reduced(const FiniteRing& r);

/// Central elements e with x -> ex and x -> xe both injective.
ElementSet regular_central(const FiniteRing& r);

ElementSet center(const FiniteRing& r);

/// Two-sided inverse of a, if any.
std::optional<Elem> inverse(const FiniteRing& r, Elem a);

struct SemicommutativeWitness {
    Elem a, b, r;
};

struct SemicommutativeVerdict {
    bool holds = true;
    std::optional<SemicommutativeWitness> witness;  // lexicographic (a, b, r)
};

SemicommutativeVerdict is_semicommutative_ring(const FiniteRing& r);

}  // namespace amalg

#pragma once

// Degree-bounded Armendariz-type checks by pruned search over polynomial
// pairs (f, g) whose product has all coefficients in a given set.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amalg/poly.hpp"
#include "amalg/ring.hpp"

namespace amalg {

enum class Property { Reduced, Semicommutative, Armendariz, NilArmendariz, WeakArmendariz };
enum class Verdict { HoldsUpToBound, HoldsExact, Refuted };

const char* property_name(Property p);
const char* verdict_name(Verdict v);
bool holds(Verdict v);

struct SearchOptions {
    unsigned threads = 1;
    /// Hard cap on search-tree nodes per check.
    std::uint64_t max_nodes = 20'000'000'000ULL;
    /// Symmetric mode: fix g and backtrack over f instead.
    bool fix_right = false;
};

/// (f, g) with every coefficient of fg in the hypothesis set and
/// a_i b_j outside the conclusion set.
struct PairWitness {
    std::vector<Elem> f;
    std::vector<Elem> g;
    std::size_t i = 0;
    std::size_t j = 0;
    Elem product = 0;

    friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

struct PropertyReport {
    Property property = Property::Reduced;
    RingPtr ring;
    std::optional<unsigned> degree_bound;
    Verdict verdict = Verdict::HoldsExact;
    std::optional<PairWitness> witness;
    std::vector<Elem> element_witness;  // reduced: {a}; semicommutative: {a, b, r}
    std::uint64_t pairs_examined = 0;  // search nodes; depends on the input only
    double elapsed_seconds = 0.0;

    [[nodiscard]] bool holds() const { return amalg::holds(verdict); }
};

struct ViolationSearch {
    std::optional<PairWitness> witness;
    std::uint64_t leaves = 0;  // complete pairs reached
    std::uint64_t nodes = 0;   // partial assignments of g visited
};

/// Lexicographically least (f, g, i, j), f and g of degree <= d with
/// a_0 most significant, such that fg has coefficients in `hyp` and
/// a_i b_j is outside `concl`.
ViolationSearch find_violation(const FiniteRing& r, unsigned d, const ElementSet& hyp, const ElementSet& concl,
                               const SearchOptions& opt = {});

using PairVisitor = std::function<bool(std::span<const Elem> f, std::span<const Elem> g)>;

/// Streams every (f, g) of degree <= d whose product has all coefficients
/// in `s`, in lexicographic (f, g) order; the visitor returns false to stop.
/// Returns the number of pairs visited.
std::uint64_t annihilating_pairs(const FiniteRing& r, unsigned d, const ElementSet& s, const PairVisitor& visit,
                                 const SearchOptions& opt = {});

std::uint64_t count_annihilating_pairs(const FiniteRing& r, unsigned d, const ElementSet& s,
                                       const SearchOptions& opt = {});

PropertyReport check_reduced(const RingPtr& r);
PropertyReport check_semicommutative(const RingPtr& r);
PropertyReport check_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt = {});
PropertyReport check_weak_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt = {});
PropertyReport check_nil_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt = {});
PropertyReport check_property(Property p, const RingPtr& r, unsigned d, const SearchOptions& opt = {});

/// Re-derives a refutation from scratch with poly_mul and set membership.
bool revalidate(const PropertyReport& report);

enum class AuditLevel { Failure, Anomaly };

struct AuditFlag {
    AuditLevel level;
    std::string message;
};

struct PropertyProfile {
    RingPtr ring;
    unsigned degree_bound = 0;
    PropertyReport reduced;
    PropertyReport semicommutative;
    PropertyReport armendariz;
    PropertyReport nil_armendariz;
    PropertyReport weak_armendariz;
    std::vector<AuditFlag> audit;

    [[nodiscard]] bool audit_clean() const;
    [[nodiscard]] const PropertyReport& get(Property p) const;
};

/// Runs all five checks and audits the degree-local implications
/// reduced => Armendariz and nil-Armendariz => weak Armendariz.
PropertyProfile property_profile(const RingPtr& r, unsigned d, const SearchOptions& opt = {});

}  // namespace amalg

#pragma once

// Theorem clauses about A ⋈^f J as executable hypothesis/conclusion records,
// the scenario corpus they are run against, and the harness.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amalg/constructions.hpp"
#include "amalg/properties.hpp"

namespace amalg {

/// Structural facts about a scenario that the clauses test against.
struct ScenarioFacts {
    bool nil_b_meets_j_trivially = false;  // nil(B) ∩ J = 0
    bool j_inside_nil_b = false;
    bool preimage_meets_nil_a_trivially = false;  // f⁻¹(J) ∩ nil(A) = 0
    bool preimage_inside_nil_a = false;
    bool f_injective = false;
    bool image_meets_j_trivially = false;  // f(A) ∩ J = 0
    bool j_meets_regular_central = false;
    bool j_semicommutative = false;
    bool preimage_semicommutative = false;
    bool j_radical = false;

    friend bool operator==(const ScenarioFacts&, const ScenarioFacts&) = default;
};

struct Scenario {
    std::string id;
    RingPtr a;
    RingPtr b;
    RingHom f;
    Ideal j;
    AmalgamRing amalgam;
    Embedding faj;
    Ideal preimage;
    ScenarioFacts facts;

    [[nodiscard]] const RingPtr& faj_ring() const { return *faj.sub; }
};

ScenarioFacts compute_facts(const RingHom& f, const Ideal& j, const Ideal& preimage);
Scenario make_scenario(const RingHom& f, const Ideal& j, std::size_t budget = default_size_budget);

/// Property reports keyed by operation tables, safe for concurrent use.
/// Lookups never change a result: reports are pure functions of the tables.
class ReportCache {
public:
    explicit ReportCache(SearchOptions opt = {}) : opt_(opt) {}

    const PropertyReport& get(const RingPtr& r, Property p, unsigned d);
    [[nodiscard]] const SearchOptions& options() const { return opt_; }
    [[nodiscard]] std::size_t size() const;

private:
    struct Entry {
        RingPtr ring;
        Property property;
        unsigned degree;
        std::unique_ptr<PropertyReport> report;
    };

    SearchOptions opt_;
    mutable std::mutex lock_;
    std::map<std::uint64_t, std::vector<Entry>> entries_;
};

enum class ClauseMode { Implication, Equivalence };

using ScenarioPredicate = std::function<bool(const Scenario&, unsigned d, ReportCache&)>;

/// Implication: hypothesis ⇒ conclusion.
/// Equivalence: hypothesis ⇒ (left ⇔ conclusion).
struct TheoremClause {
    std::string id;
    std::string statement;
    ClauseMode mode = ClauseMode::Implication;
    bool degree_local = true;
    ScenarioPredicate hypothesis;
    ScenarioPredicate left;
    ScenarioPredicate conclusion;
    /// Set when the hypothesis is structurally impossible on finite rings.
    std::string vacuity_reason;
};

const std::vector<TheoremClause>& clause_registry();
const TheoremClause& find_clause(const std::string& id);

enum class ClauseStatus { HypothesisFailed, Passed, ViolationCandidate, HardViolation, SkippedBudget };

const char* status_name(ClauseStatus s);

struct ClauseOutcome {
    std::string clause_id;
    std::string scenario_id;
    ClauseStatus status = ClauseStatus::HypothesisFailed;
    std::string details;
};

ClauseOutcome evaluate_clause(const TheoremClause& clause, const Scenario& s, unsigned d, ReportCache& cache);

struct CorpusConfig {
    std::size_t max_ring_size = 64;     // products of two atoms
    std::size_t max_amalgam_size = 64;
    std::size_t enumeration_budget = default_size_budget;
};

struct Corpus {
    std::vector<RingPtr> rings;
    std::vector<Scenario> scenarios;
    std::vector<std::string> notes;  // skipped entries
};

/// Atoms, products of two atoms, then every (A, B, f, J) with J proper.
/// Deterministic order.
Corpus build_corpus(const CorpusConfig& config = {});
std::vector<RingPtr> corpus_atoms();

struct ClauseSummary {
    std::string id;
    std::size_t tested = 0;
    std::size_t hyp_satisfied = 0;
    std::size_t passed = 0;
    std::size_t candidates = 0;
    std::size_t hard = 0;
    std::size_t skipped = 0;
    bool vacuous = false;
    std::vector<std::string> notes;
};

struct HarnessReport {
    unsigned degree = 0;
    std::size_t scenario_count = 0;
    std::vector<ClauseSummary> clauses;  // registry order
    std::vector<ClauseOutcome> findings;  // candidates, hard violations, skips
    bool incomplete = false;  // interrupted; counts cover finished scenarios only
    double elapsed_seconds = 0.0;

    [[nodiscard]] std::size_t hard_violations() const;
    [[nodiscard]] const ClauseSummary& clause(const std::string& id) const;
};

struct HarnessOptions {
    unsigned threads = 1;
    SearchOptions search;
    /// Polled before each scenario.
    bool (*interrupted)() = nullptr;
};

HarnessReport run_harness(const std::vector<Scenario>& corpus, unsigned d, const HarnessOptions& opt = {});
HarnessReport run_harness(const std::vector<Scenario>& corpus, unsigned d, const HarnessOptions& opt,
                          ReportCache& cache);

}  // namespace amalg

#pragma once

// Line-oriented specification language:
//
//   ring A = zmod 4
//   ring T = upper(A, 2)
//   ideal J of A = generated { 2 }
//   hom f : A -> A = canonical
//   amalgam D = A join f J
//   check D reduced degree 2 assert refuted
//   harness degree 1
//   search weak-not-nil degree 2 max-size 16
//
// '#' starts a comment.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "amalg/properties.hpp"

namespace amalg::dsl {

enum class DiagCode { Syntax, UnknownConstructor, UnresolvedName, Arity, Constraint, DuplicateName, BadElement };

const char* code_name(DiagCode c);

struct Diagnostic {
    DiagCode code = DiagCode::Syntax;
    int line = 0;
    int column = 0;
    std::string message;

    /// "line:col: E_CODE: message"
    [[nodiscard]] std::string str() const;
};

struct RingDef {
    std::string name;
    std::string ctor;  // zmod, product, upper, matrix, polyquot, table
    std::vector<std::string> refs;
    int param = 0;
    // table only
    std::vector<Elem> add;
    std::vector<Elem> mul;
    Elem zero = 0;
    Elem one = 1;

    friend bool operator==(const RingDef&, const RingDef&) = default;
};

struct IdealDef {
    std::string name;
    std::string ring;
    std::vector<std::string> gens;  // element literals, whitespace-normalized

    friend bool operator==(const IdealDef&, const IdealDef&) = default;
};

struct HomDef {
    std::string name;
    std::string domain;
    std::string codomain;
    bool canonical = false;
    std::vector<std::pair<std::string, std::string>> pairs;

    friend bool operator==(const HomDef&, const HomDef&) = default;
};

struct AmalgamDef {
    std::string name;
    std::string a;
    std::string hom;
    std::string ideal;

    friend bool operator==(const AmalgamDef&, const AmalgamDef&) = default;
};

enum class Assertion { Holds, Refuted };

struct CheckDirective {
    std::string ring;
    Property property = Property::Reduced;
    std::optional<unsigned> degree;
    std::optional<Assertion> assertion;

    friend bool operator==(const CheckDirective&, const CheckDirective&) = default;
};

struct HarnessDirective {
    std::optional<unsigned> degree;

    friend bool operator==(const HarnessDirective&, const HarnessDirective&) = default;
};

enum class SearchGoal { WeakNotNil, ArmendarizRefutation };

struct SearchDirective {
    SearchGoal goal = SearchGoal::WeakNotNil;
    std::optional<unsigned> degree;
    std::optional<std::size_t> max_size;

    friend bool operator==(const SearchDirective&, const SearchDirective&) = default;
};

using Statement = std::variant<RingDef, IdealDef, HomDef, AmalgamDef, CheckDirective, HarnessDirective, SearchDirective>;

struct SpecModel {
    std::vector<Statement> statements;
    std::vector<int> lines;  // source line per statement; not part of equality

    friend bool operator==(const SpecModel& a, const SpecModel& b) { return a.statements == b.statements; }
};

struct ParseResult {
    std::optional<SpecModel> model;
    std::vector<Diagnostic> diagnostics;  // empty iff model is present

    [[nodiscard]] bool ok() const { return model.has_value(); }
};

/// Never throws on malformed input; every problem becomes a diagnostic.
ParseResult parse_spec(std::string_view text);

/// Canonical text form; parse_spec(print_spec(m)) yields a model equal to m.
std::string print_spec(const SpecModel& model);

struct ExecConfig {
    unsigned default_degree = 2;
    std::size_t max_ring_size = 64;
    unsigned threads = 1;
    bool revalidate = false;
    std::uint64_t seed = 0;
    /// Polled between units of work; returning true stops with INCOMPLETE.
    bool (*interrupted)() = nullptr;
};

enum ExitCode : int { Ok = 0, Violation = 1, Budget = 2, Internal = 3, BadSpec = 4 };

struct ExecResult {
    int exit_code = ExitCode::Ok;
    bool incomplete = false;
    std::vector<Diagnostic> diagnostics;  // elaboration errors (bad element literals, ...)
    std::string text;
    nlohmann::json json;
};

inline constexpr const char* report_version = "amalg-report/1";

ExecResult execute(const SpecModel& model, const ExecConfig& config = {});

}  // namespace amalg::dsl

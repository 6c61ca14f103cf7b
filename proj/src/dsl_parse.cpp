#include "amalg/dsl.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace amalg::dsl {

const char* code_name(DiagCode c)
{
    switch (c) {
    case DiagCode::Syntax: return "E_SYNTAX";
    case DiagCode::UnknownConstructor: return "E_UNKNOWN_CONSTRUCTOR";
    case DiagCode::UnresolvedName: return "E_UNRESOLVED_NAME";
    case DiagCode::Arity: return "E_ARITY";
    case DiagCode::Constraint: return "E_CONSTRAINT";
    case DiagCode::DuplicateName: return "E_DUPLICATE_NAME";
    case DiagCode::BadElement: return "E_BAD_ELEMENT";
    }
    return "E_?";
}

std::string Diagnostic::str() const
{
    return std::to_string(line) + ":" + std::to_string(column) + ": " + code_name(code) + ": " + message;
}

namespace {

struct Failure {
    Diagnostic diag;
};

std::string normalize(std::string_view s)
{
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
            continue;
        }
        if (space)
            out += ' ';
        space = false;
        out += c;
    }
    return out;
}

// Cursor over one source line.
class Line {
public:
    Line(std::string_view text, int number, std::size_t base = 0) : text_(text), number_(number), base_(base) {}

    [[noreturn]] void fail(DiagCode code, std::string msg, std::size_t at) const
    {
        throw Failure{Diagnostic{code, number_, static_cast<int>(base_ + at) + 1, std::move(msg)}};
    }
    [[noreturn]] void fail(DiagCode code, std::string msg) const { fail(code, std::move(msg), pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= text_.size();
    }
    std::size_t pos()
    {
        skip_ws();
        return pos_;
    }

    bool peek(std::string_view s)
    {
        skip_ws();
        return text_.substr(pos_, s.size()) == s;
    }
    bool accept(std::string_view s)
    {
        if (!peek(s))
            return false;
        pos_ += s.size();
        return true;
    }
    void expect(std::string_view s)
    {
        if (!accept(s))
            fail(DiagCode::Syntax, "expected '" + std::string(s) + "'" + found());
    }

    bool peek_ident()
    {
        skip_ws();
        return pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_');
    }
    bool peek_int()
    {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    // Letters, digits, '_' and inner '-' (as in nil-armendariz, but not "->").
    std::string ident(const char* what = "a name")
    {
        if (!peek_ident())
            fail(DiagCode::Syntax, std::string("expected ") + what + found());
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else if (c == '-' && pos_ + 1 < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    long integer(const char* what = "an integer")
    {
        if (!peek_int())
            fail(DiagCode::Syntax, std::string("expected ") + what + found());
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        long v = 0;
        auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || v > 1'000'000)
            fail(DiagCode::Constraint, "integer out of range", start);
        return v;
    }

    // Text between '{' and the matching '}', bracket-aware.
    std::string_view braced(std::size_t& body_start)
    {
        expect("{");
        body_start = pos_;
        int depth = 0;
        for (; pos_ < text_.size(); ++pos_) {
            char c = text_[pos_];
            if (c == '(' || c == '[')
                ++depth;
            else if (c == ')' || c == ']')
                --depth;
            else if (c == '}' && depth <= 0) {
                auto body = text_.substr(body_start, pos_ - body_start);
                ++pos_;
                return body;
            }
        }
        fail(DiagCode::Syntax, "unterminated '{'", body_start - 1);
    }

    void finish()
    {
        if (!at_end())
            fail(DiagCode::Syntax, "unexpected trailing text" + found());
    }

private:
    std::string found()
    {
        skip_ws();
        if (pos_ >= text_.size())
            return " at end of line";
        std::size_t end = pos_;
        while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && end - pos_ < 16)
            ++end;
        return ", found '" + std::string(text_.substr(pos_, end - pos_)) + "'";
    }

    std::string_view text_;
    int number_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

// Splits at top-level occurrences of `sep`; offsets are relative to `body`.
std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view body, std::string_view sep)
{
    std::vector<std::pair<std::string_view, std::size_t>> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(' || c == '[')
            ++depth;
        else if (c == ')' || c == ']')
            --depth;
        else if (depth == 0 && body.substr(i, sep.size()) == sep) {
            parts.emplace_back(body.substr(start, i - start), start);
            start = i + sep.size();
            i += sep.size() - 1;
        }
    }
    parts.emplace_back(body.substr(start), start);
    return parts;
}

struct CtorShape {
    std::vector<bool> is_int;  // per argument
};

const std::map<std::string, CtorShape>& ctors()
{
    static const std::map<std::string, CtorShape> table = {
        {"zmod", {{true}}},
        {"product", {{false, false}}},
        {"upper", {{false, true}}},
        {"matrix", {{false, true}}},
        {"polyquot", {{false, true}}},
    };
    return table;
}

std::optional<Property> property_from(std::string_view s)
{
    for (Property p : {Property::Reduced, Property::Semicommutative, Property::Armendariz, Property::NilArmendariz,
                       Property::WeakArmendariz})
        if (s == property_name(p))
            return p;
    return std::nullopt;
}

const char* goal_name(SearchGoal g)
{
    return g == SearchGoal::WeakNotNil ? "weak-not-nil" : "armendariz-refutation";
}

class Parser {
public:
    ParseResult run(std::string_view text)
    {
        int number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++number;
            std::string_view line = text.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            try {
                cur_line_ = number;
                Line cur(line, number);
                if (!cur.at_end())
                    statement(cur);
            } catch (const Failure& f) {
                diags_.push_back(f.diag);
            }
            start = end + 1;
        }
        ParseResult res;
        if (diags_.empty())
            res.model = std::move(model_);
        res.diagnostics = std::move(diags_);
        return res;
    }

private:
    enum class Kind { Ring, Ideal, Hom };

    void statement(Line& in)
    {
        const std::size_t at = in.pos();
        const std::string kw = in.ident("a statement keyword");
        if (kw == "ring")
            ring(in);
        else if (kw == "ideal")
            ideal(in);
        else if (kw == "hom")
            hom(in);
        else if (kw == "amalgam")
            amalgam(in);
        else if (kw == "check")
            check(in);
        else if (kw == "harness")
            harness(in);
        else if (kw == "search")
            search(in);
        else
            in.fail(DiagCode::Syntax, "unknown statement '" + kw + "'", at);
        in.finish();
    }

    std::string define(Line& in, Kind kind)
    {
        const std::size_t at = in.pos();
        std::string name = in.ident();
        if (names_[kind].count(name))
            in.fail(DiagCode::DuplicateName, "'" + name + "' is already defined", at);
        return name;
    }

    std::string use(Line& in, Kind kind, const char* what)
    {
        const std::size_t at = in.pos();
        std::string name = in.ident(what);
        if (!names_[kind].count(name))
            in.fail(DiagCode::UnresolvedName, std::string("unknown ") + what + " '" + name + "'", at);
        return name;
    }

    void push(Statement s, int line_no)
    {
        model_.statements.push_back(std::move(s));
        model_.lines.push_back(line_no);
    }

    void ring(Line& in)
    {
        RingDef r;
        r.name = define(in, Kind::Ring);
        in.expect("=");
        const std::size_t at = in.pos();
        r.ctor = in.ident("a ring constructor");
        if (r.ctor == "table") {
            table(in, r);
        } else {
            auto it = ctors().find(r.ctor);
            if (it == ctors().end())
                in.fail(DiagCode::UnknownConstructor, "unknown ring constructor '" + r.ctor + "'", at);
            struct Arg {
                bool is_int;
                long value;
                std::string name;
                std::size_t at;
            };
            std::vector<Arg> args;
            auto one = [&] {
                Arg a{in.peek_int(), 0, {}, in.pos()};
                if (a.is_int)
                    a.value = in.integer();
                else
                    a.name = in.ident("a ring name or integer");
                args.push_back(a);
            };
            if (in.accept("(")) {
                if (!in.peek(")")) {
                    one();
                    while (in.accept(","))
                        one();
                }
                in.expect(")");
            } else if (!in.at_end()) {
                one();
            }
            const auto& shape = it->second.is_int;
            if (args.size() != shape.size())
                in.fail(DiagCode::Arity,
                        r.ctor + " takes " + std::to_string(shape.size()) + " argument(s), got " +
                            std::to_string(args.size()),
                        at);
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (shape[i] != args[i].is_int)
                    in.fail(DiagCode::Syntax,
                            std::string("argument ") + std::to_string(i + 1) + " of " + r.ctor + " must be " +
                                (shape[i] ? "an integer" : "a ring name"),
                            args[i].at);
                if (!args[i].is_int) {
                    if (!names_[Kind::Ring].count(args[i].name))
                        in.fail(DiagCode::UnresolvedName, "unknown ring '" + args[i].name + "'", args[i].at);
                    r.refs.push_back(args[i].name);
                } else {
                    r.param = static_cast<int>(args[i].value);
                    const long min = 2;
                    if (args[i].value < min)
                        in.fail(DiagCode::Constraint,
                                r.ctor + " requires " + (r.ctor == "zmod" ? "n" : "k") + " >= " + std::to_string(min),
                                args[i].at);
                }
            }
        }
        names_[Kind::Ring].insert(r.name);
        push(std::move(r), cur_line_);
    }

    void table(Line& in, RingDef& r)
    {
        std::size_t body_at = 0;
        std::string_view body = in.braced(body_at);
        bool have_add = false, have_mul = false;
        for (auto [item, off] : split_top(body, ";")) {
            const std::size_t base = body_at + off;
            Line part(item, cur_line_, base);
            if (part.at_end())
                continue;
            std::string key = part.ident("a table field");
            part.expect("=");
            std::vector<Elem> nums;
            while (!part.at_end())
                nums.push_back(static_cast<Elem>(part.integer()));
            if (key == "add" || key == "mul") {
                (key == "add" ? r.add : r.mul) = nums;
                (key == "add" ? have_add : have_mul) = true;
            } else if ((key == "zero" || key == "one") && nums.size() == 1) {
                (key == "zero" ? r.zero : r.one) = nums[0];
            } else {
                in.fail(DiagCode::Syntax, "bad table field '" + key + "'", base);
            }
        }
        if (!have_add || !have_mul)
            in.fail(DiagCode::Syntax, "table needs both 'add' and 'mul'", body_at);
        std::size_t n = 0;
        while (n * n < r.add.size())
            ++n;
        if (n < 2 || n * n != r.add.size() || r.mul.size() != r.add.size())
            in.fail(DiagCode::Constraint, "table must list n*n entries for each operation with n >= 2", body_at);
    }

    std::vector<std::string> elements(Line& in, std::string_view body, std::size_t body_at)
    {
        std::vector<std::string> out;
        for (auto [item, off] : split_top(body, ",")) {
            std::string e = normalize(item);
            if (e.empty())
                in.fail(DiagCode::Syntax, "empty element literal", body_at + off);
            out.push_back(std::move(e));
        }
        return out;
    }

    void ideal(Line& in)
    {
        IdealDef d;
        d.name = define(in, Kind::Ideal);
        in.expect("of");
        d.ring = use(in, Kind::Ring, "ring");
        in.expect("=");
        const std::size_t at = in.pos();
        std::string how = in.ident("'generated'");
        if (how != "generated")
            in.fail(DiagCode::UnknownConstructor, "unknown ideal constructor '" + how + "'", at);
        std::size_t body_at = 0;
        auto body = in.braced(body_at);
        d.gens = elements(in, body, body_at);
        names_[Kind::Ideal].insert(d.name);
        push(std::move(d), cur_line_);
    }

    void hom(Line& in)
    {
        HomDef h;
        h.name = define(in, Kind::Hom);
        in.expect(":");
        h.domain = use(in, Kind::Ring, "ring");
        in.expect("->");
        h.codomain = use(in, Kind::Ring, "ring");
        in.expect("=");
        const std::size_t at = in.pos();
        std::string how = in.ident("'canonical' or 'map'");
        if (how == "canonical") {
            h.canonical = true;
        } else if (how == "map") {
            std::size_t body_at = 0;
            auto body = in.braced(body_at);
            for (auto [item, off] : split_top(body, ",")) {
                auto sides = split_top(item, "->");
                if (sides.size() != 2)
                    in.fail(DiagCode::Syntax, "expected 'x -> y'", body_at + off);
                std::string x = normalize(sides[0].first), y = normalize(sides[1].first);
                if (x.empty() || y.empty())
                    in.fail(DiagCode::Syntax, "empty element literal", body_at + off);
                h.pairs.emplace_back(std::move(x), std::move(y));
            }
        } else {
            in.fail(DiagCode::UnknownConstructor, "unknown hom constructor '" + how + "'", at);
        }
        names_[Kind::Hom].insert(h.name);
        push(std::move(h), cur_line_);
    }

    void amalgam(Line& in)
    {
        AmalgamDef a;
        a.name = define(in, Kind::Ring);
        in.expect("=");
        a.a = use(in, Kind::Ring, "ring");
        in.expect("join");
        a.hom = use(in, Kind::Hom, "hom");
        a.ideal = use(in, Kind::Ideal, "ideal");
        names_[Kind::Ring].insert(a.name);
        push(std::move(a), cur_line_);
    }

    std::optional<unsigned> degree(Line& in)
    {
        const std::size_t at = in.pos();
        long d = in.integer("a degree");
        if (d > 8)
            in.fail(DiagCode::Constraint, "degree must be at most 8", at);
        return static_cast<unsigned>(d);
    }

    void check(Line& in)
    {
        CheckDirective c;
        c.ring = use(in, Kind::Ring, "ring");
        const std::size_t at = in.pos();
        std::string prop = in.ident("a property");
        auto p = property_from(prop);
        if (!p)
            in.fail(DiagCode::Syntax, "unknown property '" + prop + "'", at);
        c.property = *p;
        while (!in.at_end()) {
            const std::size_t opt_at = in.pos();
            std::string opt = in.ident("an option");
            if (opt == "degree" && !c.degree) {
                c.degree = degree(in);
            } else if (opt == "assert" && !c.assertion) {
                const std::size_t v_at = in.pos();
                std::string v = in.ident("'holds' or 'refuted'");
                if (v == "holds")
                    c.assertion = Assertion::Holds;
                else if (v == "refuted")
                    c.assertion = Assertion::Refuted;
                else
                    in.fail(DiagCode::Syntax, "expected 'holds' or 'refuted'", v_at);
            } else {
                in.fail(DiagCode::Syntax, "unexpected option '" + opt + "'", opt_at);
            }
        }
        push(std::move(c), cur_line_);
    }

    void harness(Line& in)
    {
        HarnessDirective h;
        if (in.accept("degree"))
            h.degree = degree(in);
        push(std::move(h), cur_line_);
    }

    void search(Line& in)
    {
        SearchDirective s;
        const std::size_t at = in.pos();
        std::string goal = in.ident("a search goal");
        if (goal == "weak-not-nil")
            s.goal = SearchGoal::WeakNotNil;
        else if (goal == "armendariz-refutation")
            s.goal = SearchGoal::ArmendarizRefutation;
        else
            in.fail(DiagCode::Syntax, "unknown search goal '" + goal + "'", at);
        while (!in.at_end()) {
            const std::size_t opt_at = in.pos();
            std::string opt = in.ident("an option");
            if (opt == "degree" && !s.degree) {
                s.degree = degree(in);
            } else if (opt == "max-size" && !s.max_size) {
                const std::size_t v_at = in.pos();
                long v = in.integer();
                if (v < 2)
                    in.fail(DiagCode::Constraint, "max-size must be at least 2", v_at);
                s.max_size = static_cast<std::size_t>(v);
            } else {
                in.fail(DiagCode::Syntax, "unexpected option '" + opt + "'", opt_at);
            }
        }
        push(std::move(s), cur_line_);
    }

public:
    int cur_line_ = 0;

private:
    SpecModel model_;
    std::vector<Diagnostic> diags_;
    std::map<Kind, std::set<std::string>> names_;
};

std::string join(const std::vector<std::string>& xs)
{
    std::string out;
    for (const auto& x : xs)
        out += (out.empty() ? "" : ", ") + x;
    return out;
}

std::string numbers(const std::vector<Elem>& xs)
{
    std::string out;
    for (Elem x : xs)
        out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

}  // namespace

ParseResult parse_spec(std::string_view text)
{
    Parser p;
    return p.run(text);
}

std::string print_spec(const SpecModel& model)
{
    std::string out;
    for (const auto& st : model.statements) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, RingDef>) {
                    out += "ring " + s.name + " = ";
                    if (s.ctor == "zmod")
                        out += "zmod " + std::to_string(s.param);
                    else if (s.ctor == "product")
                        out += "product(" + s.refs[0] + ", " + s.refs[1] + ")";
                    else if (s.ctor == "table")
                        out += "table { add = " + numbers(s.add) + " ; mul = " + numbers(s.mul) +
                               " ; zero = " + std::to_string(s.zero) + " ; one = " + std::to_string(s.one) + " }";
                    else
                        out += s.ctor + "(" + s.refs[0] + ", " + std::to_string(s.param) + ")";
                } else if constexpr (std::is_same_v<T, IdealDef>) {
                    out += "ideal " + s.name + " of " + s.ring + " = generated { " + join(s.gens) + " }";
                } else if constexpr (std::is_same_v<T, HomDef>) {
                    out += "hom " + s.name + " : " + s.domain + " -> " + s.codomain + " = ";
                    if (s.canonical) {
                        out += "canonical";
                    } else {
                        std::vector<std::string> items;
                        for (const auto& [x, y] : s.pairs)
                            items.push_back(x + " -> " + y);
                        out += "map { " + join(items) + " }";
                    }
                } else if constexpr (std::is_same_v<T, AmalgamDef>) {
                    out += "amalgam " + s.name + " = " + s.a + " join " + s.hom + " " + s.ideal;
                } else if constexpr (std::is_same_v<T, CheckDirective>) {
                    out += "check " + s.ring + " " + property_name(s.property);
                    if (s.degree)
                        out += " degree " + std::to_string(*s.degree);
                    if (s.assertion)
                        out += std::string(" assert ") + (*s.assertion == Assertion::Holds ? "holds" : "refuted");
                } else if constexpr (std::is_same_v<T, HarnessDirective>) {
                    out += "harness";
                    if (s.degree)
                        out += " degree " + std::to_string(*s.degree);
                } else if constexpr (std::is_same_v<T, SearchDirective>) {
                    out += std::string("search ") + goal_name(s.goal);
                    if (s.degree)
                        out += " degree " + std::to_string(*s.degree);
                    if (s.max_size)
                        out += " max-size " + std::to_string(*s.max_size);
                }
            },
            st);
        out += "\n";
    }
    return out;
}

}  // namespace amalg::dsl

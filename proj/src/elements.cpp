#include <algorithm>
#include <cctype>
#include <string>

#include "amalg/constructions.hpp"

namespace amalg {

namespace {

std::string strip_spaces(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

class ElementParser {
public:
    explicit ElementParser(std::string_view text) : text_(text) {}

    Elem parse_all(const FiniteRing& r)
    {
        Elem e = parse(r);
        skip();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw InvalidArgument("element literal '" + std::string(text_) + "': " + why);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c))
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    long integer()
    {
        skip();
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        long v = std::stol(std::string(text_.substr(start, pos_ - start)));
        return negative ? -v : v;
    }

    Elem parse(const FiniteRing& r)
    {
        const Provenance& p = r.provenance();
        switch (p.kind) {
        case RingKind::Zmod: {
            long n = static_cast<long>(r.size());
            long v = integer() % n;
            return static_cast<Elem>(v < 0 ? v + n : v);
        }
        case RingKind::Table: {
            long v = integer();
            if (v < 0 || static_cast<std::size_t>(v) >= r.size())
                fail("index out of range");
            return static_cast<Elem>(v);
        }
        case RingKind::Product: {
            expect('(');
            Elem x = parse(*p.parts[0]);
            expect(',');
            Elem y = parse(*p.parts[1]);
            expect(')');
            return static_cast<Elem>(x * p.parts[1]->size() + y);
        }
        case RingKind::Amalgam: {
            expect('(');
            Elem x = parse(*p.parts[0]);
            expect(',');
            Elem y = parse(*p.parts[1]);
            expect(')');
            Elem code = static_cast<Elem>(x * p.parts[1]->size() + y);
            auto it = std::find(p.link.begin(), p.link.end(), code);
            if (it == p.link.end())
                fail("pair is not an element of the amalgamation");
            return static_cast<Elem>(it - p.link.begin());
        }
        case RingKind::Upper:
        case RingKind::Matrix:
            return parse_matrix(r);
        case RingKind::PolyQuotient:
            return parse_poly(r);
        case RingKind::Quotient:
            return p.link[parse(*p.parts[0])];
        case RingKind::Subring: {
            Elem h = parse(*p.parts[0]);
            auto it = std::find(p.link.begin(), p.link.end(), h);
            if (it == p.link.end())
                fail("element is not in the subring");
            return static_cast<Elem>(it - p.link.begin());
        }
        }
        fail("unsupported ring kind");
    }

    Elem parse_matrix(const FiniteRing& r)
    {
        const Provenance& p = r.provenance();
        const FiniteRing& base = *p.parts[0];
        const int k = p.param;
        const bool upper = p.kind == RingKind::Upper;
        std::vector<Elem> entries;
        expect('[');
        for (int i = 0; i < k; ++i) {
            if (i)
                expect(',');
            expect('[');
            for (int j = 0; j < k; ++j) {
                if (j)
                    expect(',');
                Elem e = parse(base);
                if (upper && j < i) {
                    if (e != base.zero())
                        fail("entry below the diagonal of a triangular matrix");
                    continue;
                }
                entries.push_back(e);
            }
            expect(']');
        }
        expect(']');
        std::size_t idx = 0;
        for (Elem e : entries)
            idx = idx * base.size() + e;
        return static_cast<Elem>(idx);
    }

    // c0 + c1 t + c2 t^2, with optional '*' and parenthesised coefficients.
    Elem parse_poly(const FiniteRing& r)
    {
        const Provenance& p = r.provenance();
        const FiniteRing& base = *p.parts[0];
        const auto len = static_cast<std::size_t>(p.param);
        std::vector<Elem> coeffs(len, base.zero());
        do {
            Elem c = base.one();
            bool have_coeff = false;
            if (!peek('t')) {
                const bool tuple_base = base.provenance().kind == RingKind::Product || base.provenance().kind == RingKind::Amalgam;
                if (peek('(') && !tuple_base) {
                    expect('(');
                    c = parse(base);
                    expect(')');
                } else {
                    c = parse(base);
                }
                have_coeff = true;
            }
            if (peek('*'))
                ++pos_;
            std::size_t power = 0;
            if (peek('t')) {
                ++pos_;
                power = 1;
                if (peek('^')) {
                    ++pos_;
                    long e = integer();
                    if (e < 0)
                        fail("negative exponent");
                    power = static_cast<std::size_t>(e);
                }
            } else if (!have_coeff) {
                fail("expected a term");
            }
            if (power < len)
                coeffs[power] = base.add(coeffs[power], c);
        } while (peek('+') && (++pos_, true));
        std::size_t idx = 0;
        for (std::size_t i = len; i-- > 0;)
            idx = idx * base.size() + coeffs[i];
        return static_cast<Elem>(idx);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Elem parse_element(const FiniteRing& r, std::string_view text)
{
    const std::string key = strip_spaces(text);
    for (Elem e = 0; e < r.size(); ++e)
        if (strip_spaces(r.label(e)) == key)
            return e;
    return ElementParser(text).parse_all(r);
}

}  // namespace amalg

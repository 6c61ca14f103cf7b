#include "amalg/ring.hpp"

#include <algorithm>
#include <string>

namespace amalg {

ElementSet::ElementSet(std::size_t host_size, std::vector<Elem> members)
    : members_(std::move(members)), mask_(host_size, 0)
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (Elem e : members_) {
        if (e >= host_size)
            throw InvalidArgument("element index " + std::to_string(e) + " out of range");
        mask_[e] = 1;
    }
}

ElementSet ElementSet::from_mask(const std::vector<char>& mask)
{
    std::vector<Elem> m;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i])
            m.push_back(static_cast<Elem>(i));
    return ElementSet(mask.size(), std::move(m));
}

ElementSet ElementSet::all(std::size_t host_size)
{
    return from_mask(std::vector<char>(host_size, 1));
}

ElementSet ElementSet::singleton(std::size_t host_size, Elem e)
{
    return ElementSet(host_size, {e});
}

ElementSet ElementSet::intersect(const ElementSet& other) const
{
    std::vector<Elem> out;
    for (Elem e : members_)
        if (other.contains(e))
            out.push_back(e);
    return ElementSet(mask_.size(), std::move(out));
}

bool ElementSet::subset_of(const ElementSet& other) const
{
    return std::all_of(members_.begin(), members_.end(), [&](Elem e) { return other.contains(e); });
}

bool operator<(const ElementSet& a, const ElementSet& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a.members_ < b.members_;
}

const char* law_name(Law law)
{
    switch (law) {
    case Law::AddComm: return "ADD_COMM";
    case Law::AddAssoc: return "ADD_ASSOC";
    case Law::AddIdentity: return "ADD_IDENTITY";
    case Law::AddInverse: return "ADD_INVERSE";
    case Law::MulAssoc: return "MUL_ASSOC";
    case Law::MulIdentity: return "MUL_IDENTITY";
    case Law::DistribL: return "DISTRIB_L";
    case Law::DistribR: return "DISTRIB_R";
    case Law::Range: return "RANGE";
    }
    return "?";
}

AxiomError::AxiomError(AxiomViolation v)
    : Error(std::string("ring axiom violated: ") + law_name(v.law)), violation(std::move(v))
{
}

std::optional<AxiomViolation> verify_axioms(const RingTables& t)
{
    const std::size_t n = t.size;
    if (n < 2)
        throw InvalidArgument("a ring needs at least two elements");
    if (t.add.size() != n * n || t.mul.size() != n * n)
        return AxiomViolation{Law::Range, {}};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (t.add[a * n + b] >= n || t.mul[a * n + b] >= n)
                return AxiomViolation{Law::Range, {Elem(a), Elem(b)}};
    if (t.zero >= n)
        return AxiomViolation{Law::Range, {t.zero}};
    if (t.one >= n)
        return AxiomViolation{Law::Range, {t.one}};

    auto add = [&](Elem a, Elem b) { return t.add[a * n + b]; };
    auto mul = [&](Elem a, Elem b) { return t.mul[a * n + b]; };
    const Elem N = static_cast<Elem>(n);

    for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
            if (add(a, b) != add(b, a))
                return AxiomViolation{Law::AddComm, {a, b}};
    for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
            for (Elem c = 0; c < N; ++c)
                if (add(add(a, b), c) != add(a, add(b, c)))
                    return AxiomViolation{Law::AddAssoc, {a, b, c}};
    for (Elem a = 0; a < N; ++a)
        if (add(t.zero, a) != a || add(a, t.zero) != a)
            return AxiomViolation{Law::AddIdentity, {a}};
    for (Elem a = 0; a < N; ++a) {
        bool found = false;
        for (Elem b = 0; b < N && !found; ++b)
            found = add(a, b) == t.zero;
        if (!found)
            return AxiomViolation{Law::AddInverse, {a}};
    }
    for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
            for (Elem c = 0; c < N; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return AxiomViolation{Law::MulAssoc, {a, b, c}};
    for (Elem a = 0; a < N; ++a)
        if (mul(t.one, a) != a || mul(a, t.one) != a)
            return AxiomViolation{Law::MulIdentity, {a}};
    for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
            for (Elem c = 0; c < N; ++c)
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                    return AxiomViolation{Law::DistribL, {a, b, c}};
    for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b)
            for (Elem c = 0; c < N; ++c)
                if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
                    return AxiomViolation{Law::DistribR, {a, b, c}};
    return std::nullopt;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::vector<Elem>& v)
{
    for (Elem e : v) {
        h ^= e;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

RingPtr FiniteRing::create(RingTables tables, std::vector<std::string> labels, Provenance provenance)
{
    if (auto v = verify_axioms(tables))
        throw AxiomError(std::move(*v));

    const std::size_t n = tables.size;
    auto r = std::shared_ptr<FiniteRing>(new FiniteRing());
    r->n_ = n;
    r->add_ = std::move(tables.add);
    r->mul_ = std::move(tables.mul);
    r->zero_ = tables.zero;
    r->one_ = tables.one;
    r->neg_.assign(n, 0);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (r->add(a, b) == r->zero_) {
                r->neg_[a] = b;
                break;
            }
    if (labels.size() != n) {
        labels.resize(n);
        for (Elem a = 0; a < n; ++a)
            if (labels[a].empty())
                labels[a] = std::to_string(a);
    }
    r->labels_ = std::move(labels);
    r->provenance_ = std::move(provenance);
    std::uint64_t h = 1469598103934665603ULL ^ n;
    h = fnv1a(h, r->add_);
    h = fnv1a(h, r->mul_);
    h = fnv1a(h, {r->zero_, r->one_});
    r->fingerprint_ = h;
    return r;
}

bool FiniteRing::same_tables(const FiniteRing& other) const
{
    return n_ == other.n_ && zero_ == other.zero_ && one_ == other.one_ && add_ == other.add_ && mul_ == other.mul_;
}

bool FiniteRing::is_commutative() const
{
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

Elem power(const FiniteRing& r, Elem a, unsigned k)
{
    Elem result = r.one();
    Elem base = a;
    while (k > 0) {
        if (k & 1u)
            result = r.mul(result, base);
        base = r.mul(base, base);
        k >>= 1u;
    }
    return result;
}

Nilpotency is_nilpotent(const FiniteRing& r, Elem a)
{
    // Powers a, a^2, ... either reach zero or enter a cycle avoiding it.
    std::vector<char> seen(r.size(), 0);
    Elem p = a;
    for (unsigned k = 1; k <= r.size(); ++k) {
        if (p == r.zero())
            return {true, k};
        if (seen[p])
            return {false, std::nullopt};
        seen[p] = 1;
        p = r.mul(p, a);
    }
    return {false, std::nullopt};
}

ElementSet nilradical(const FiniteRing& r)
{
    std::vector<char> mask(r.size(), 0);
    for (Elem a = 0; a < r.size(); ++a)
        mask[a] = is_nilpotent(r, a).nilpotent ? 1 : 0;
    return ElementSet::from_mask(mask);
}

ReducedVerdict is_reduced(const FiniteRing& r)
{
    for (Elem a = 0; a < r.size(); ++a)
        if (a != r.zero() && r.mul(a, a) == r.zero())
            return {false, a};
    return {true, std::nullopt};
}

ElementSet center(const FiniteRing& r)
{
    std::vector<Elem> out;
    for (Elem e = 0; e < r.size(); ++e) {
        bool central = true;
        for (Elem x = 0; x < r.size() && central; ++x)
            central = r.mul(e, x) == r.mul(x, e);
        if (central)
            out.push_back(e);
    }
    return ElementSet(r.size(), std::move(out));
}

ElementSet regular_central(const FiniteRing& r)
{
    std::vector<Elem> out;
    for (Elem e : center(r)) {
        // Central, so left and right multiplication coincide.
        std::vector<char> hit(r.size(), 0);
        bool injective = true;
        for (Elem x = 0; x < r.size() && injective; ++x) {
            Elem y = r.mul(e, x);
            injective = !hit[y];
            hit[y] = 1;
        }
        if (injective)
            out.push_back(e);
    }
    return ElementSet(r.size(), std::move(out));
}

std::optional<Elem> inverse(const FiniteRing& r, Elem a)
{
    for (Elem b = 0; b < r.size(); ++b)
        if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one())
            return b;
    return std::nullopt;
}

SemicommutativeVerdict is_semicommutative_ring(const FiniteRing& r)
{
    const Elem n = static_cast<Elem>(r.size());
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (r.mul(a, b) != r.zero())
                continue;
            for (Elem x = 0; x < n; ++x)
                if (r.mul(r.mul(a, x), b) != r.zero())
                    return {false, SemicommutativeWitness{a, b, x}};
        }
    return {true, std::nullopt};
}

}  // namespace amalg

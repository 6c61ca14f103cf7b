#include "amalg/constructions.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace amalg {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t budget, const std::string& what)
{
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        v *= base;
        if (v > budget)
            throw BudgetExceeded(what + " exceeds size budget of " + std::to_string(budget));
    }
    return v;
}

bool needs_parens(const std::string& label)
{
    return label.find_first_of(" +") != std::string::npos;
}

// Ring on tuples of base-ring entries, given a multiplication on tuples.
template <class MulFn>
RingPtr tuple_ring(const FiniteRing& base, std::size_t len, std::size_t size, bool first_most_significant,
                   MulFn mul_entries, std::vector<Elem> one_entries, std::vector<std::string> labels, Provenance prov)
{
    const std::size_t m = base.size();
    auto decode = [&](Elem idx) {
        std::vector<Elem> e(len);
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t pos = first_most_significant ? len - 1 - t : t;
            e[pos] = idx % m;
            idx /= static_cast<Elem>(m);
        }
        return e;
    };
    auto encode = [&](const std::vector<Elem>& e) {
        std::size_t idx = 0;
        for (std::size_t t = 0; t < len; ++t) {
            std::size_t pos = first_most_significant ? t : len - 1 - t;
            idx = idx * m + e[pos];
        }
        return static_cast<Elem>(idx);
    };
    std::vector<std::vector<Elem>> entries(size);
    for (Elem i = 0; i < size; ++i)
        entries[i] = decode(i);

    RingTables t;
    t.size = size;
    t.add.resize(size * size);
    t.mul.resize(size * size);
    std::vector<Elem> tmp(len);
    for (Elem x = 0; x < size; ++x)
        for (Elem y = 0; y < size; ++y) {
            for (std::size_t p = 0; p < len; ++p)
                tmp[p] = base.add(entries[x][p], entries[y][p]);
            t.add[x * size + y] = encode(tmp);
            t.mul[x * size + y] = encode(mul_entries(entries[x], entries[y]));
        }
    t.zero = encode(std::vector<Elem>(len, base.zero()));
    t.one = encode(one_entries);
    return FiniteRing::create(std::move(t), std::move(labels), std::move(prov));
}

}  // namespace

RingPtr zmod(int n)
{
    if (n < 2)
        throw InvalidArgument("zmod: modulus must be at least 2");
    RingTables t;
    t.size = static_cast<std::size_t>(n);
    t.add.resize(t.size * t.size);
    t.mul.resize(t.size * t.size);
    std::vector<std::string> labels(t.size);
    for (int a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (int b = 0; b < n; ++b) {
            t.add[a * n + b] = static_cast<Elem>((a + b) % n);
            t.mul[a * n + b] = static_cast<Elem>((a * b) % n);
        }
    }
    t.zero = 0;
    t.one = 1;
    Provenance p{RingKind::Zmod, "zmod(" + std::to_string(n) + ")", n, {}, {}};
    return FiniteRing::create(std::move(t), std::move(labels), std::move(p));
}

RingPtr direct_product(const RingPtr& r, const RingPtr& s, std::size_t budget)
{
    const std::size_t n = r->size(), m = s->size();
    if (n * m > budget)
        throw BudgetExceeded("direct product " + r->name() + " x " + s->name() + " exceeds size budget");
    const std::size_t size = n * m;
    RingTables t;
    t.size = size;
    t.add.resize(size * size);
    t.mul.resize(size * size);
    std::vector<std::string> labels(size);
    for (Elem x = 0; x < size; ++x) {
        Elem x1 = x / m, x2 = x % m;
        labels[x] = "(" + r->label(x1) + "," + s->label(x2) + ")";
        for (Elem y = 0; y < size; ++y) {
            Elem y1 = y / m, y2 = y % m;
            t.add[x * size + y] = r->add(x1, y1) * m + s->add(x2, y2);
            t.mul[x * size + y] = r->mul(x1, y1) * m + s->mul(x2, y2);
        }
    }
    t.zero = r->zero() * m + s->zero();
    t.one = r->one() * m + s->one();
    Provenance p{RingKind::Product, "product(" + r->name() + "," + s->name() + ")", 0, {r, s}, {}};
    return FiniteRing::create(std::move(t), std::move(labels), std::move(p));
}

namespace {

RingPtr square_matrices(const RingPtr& r, int k, bool upper, std::size_t budget)
{
    if (k < 2)
        throw InvalidArgument("matrix dimension must be at least 2");
    const FiniteRing& R = *r;
    // Flat slot list of the stored entries.
    std::vector<std::pair<int, int>> slots;
    std::vector<std::vector<int>> slot_of(k, std::vector<int>(k, -1));
    for (int i = 0; i < k; ++i)
        for (int j = upper ? i : 0; j < k; ++j) {
            slot_of[i][j] = static_cast<int>(slots.size());
            slots.emplace_back(i, j);
        }
    const std::string desc = std::string(upper ? "upper(" : "matrix(") + r->name() + "," + std::to_string(k) + ")";
    const std::size_t size = checked_power(R.size(), slots.size(), budget, desc);

    auto mul = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
        std::vector<Elem> z(slots.size(), R.zero());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            auto [i, j] = slots[s];
            Elem acc = R.zero();
            for (int l = 0; l < k; ++l) {
                int a = slot_of[i][l], b = slot_of[l][j];
                if (a < 0 || b < 0)
                    continue;
                acc = R.add(acc, R.mul(x[a], y[b]));
            }
            z[s] = acc;
        }
        return z;
    };
    std::vector<Elem> one(slots.size(), R.zero());
    for (int i = 0; i < k; ++i)
        one[slot_of[i][i]] = R.one();

    const std::size_t m = R.size();
    std::vector<std::string> labels(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::vector<Elem> e(slots.size());
        std::size_t v = idx;
        for (std::size_t s = slots.size(); s-- > 0;) {
            e[s] = static_cast<Elem>(v % m);
            v /= m;
        }
        std::string lab = "[";
        for (int i = 0; i < k; ++i) {
            lab += i ? ",[" : "[";
            for (int j = 0; j < k; ++j) {
                if (j)
                    lab += ",";
                int s = slot_of[i][j];
                lab += s < 0 ? R.label(R.zero()) : R.label(e[s]);
            }
            lab += "]";
        }
        labels[idx] = lab + "]";
    }
    Provenance p{upper ? RingKind::Upper : RingKind::Matrix, desc, k, {r}, {}};
    return tuple_ring(R, slots.size(), size, true, mul, one, std::move(labels), std::move(p));
}

}  // namespace

RingPtr upper_triangular(const RingPtr& r, int k, std::size_t budget)
{
    return square_matrices(r, k, true, budget);
}

RingPtr matrix_ring(const RingPtr& r, int k, std::size_t budget)
{
    return square_matrices(r, k, false, budget);
}

RingPtr poly_quotient(const RingPtr& r, int k, std::size_t budget)
{
    if (k < 2)
        throw InvalidArgument("polyquot: truncation length must be at least 2");
    const FiniteRing& R = *r;
    const std::string desc = "polyquot(" + r->name() + "," + std::to_string(k) + ")";
    const std::size_t size = checked_power(R.size(), static_cast<std::size_t>(k), budget, desc);
    const std::size_t len = static_cast<std::size_t>(k);

    auto mul = [&](const std::vector<Elem>& x, const std::vector<Elem>& y) {
        std::vector<Elem> z(len, R.zero());
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; i + j < len; ++j)
                z[i + j] = R.add(z[i + j], R.mul(x[i], y[j]));
        return z;
    };
    std::vector<Elem> one(len, R.zero());
    one[0] = R.one();

    std::vector<std::string> labels(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t v = idx;
        std::string lab;
        for (std::size_t i = 0; i < len; ++i) {
            Elem c = static_cast<Elem>(v % R.size());
            v /= R.size();
            if (c == R.zero())
                continue;
            std::string term;
            if (i == 0)
                term = R.label(c);
            else {
                std::string mono = i == 1 ? "t" : "t^" + std::to_string(i);
                if (c == R.one())
                    term = mono;
                else
                    term = (needs_parens(R.label(c)) ? "(" + R.label(c) + ")" : R.label(c)) + " " + mono;
            }
            lab += lab.empty() ? term : " + " + term;
        }
        labels[idx] = lab.empty() ? R.label(R.zero()) : lab;
    }
    Provenance p{RingKind::PolyQuotient, desc, k, {r}, {}};
    return tuple_ring(R, len, size, false, mul, one, std::move(labels), std::move(p));
}

QuotientRing quotient_ring(const Ideal& ideal)
{
    const RingPtr& host = ideal.host();
    const FiniteRing& R = *host;
    if (!ideal.proper())
        throw InvalidArgument("quotient by the whole ring is the zero ring");
    std::vector<Elem> rep(R.size());
    for (Elem x = 0; x < R.size(); ++x) {
        Elem best = x;
        for (Elem i : ideal.members())
            best = std::min(best, R.add(x, i));
        rep[x] = best;
    }
    std::vector<Elem> reps;
    for (Elem x = 0; x < R.size(); ++x)
        if (rep[x] == x)
            reps.push_back(x);
    std::vector<Elem> coset(R.size());
    std::vector<int> coset_of_rep(R.size(), -1);
    for (std::size_t c = 0; c < reps.size(); ++c)
        coset_of_rep[reps[c]] = static_cast<int>(c);
    for (Elem x = 0; x < R.size(); ++x)
        coset[x] = static_cast<Elem>(coset_of_rep[rep[x]]);

    const std::size_t q = reps.size();
    RingTables t;
    t.size = q;
    t.add.resize(q * q);
    t.mul.resize(q * q);
    std::vector<std::string> labels(q);
    for (std::size_t a = 0; a < q; ++a) {
        labels[a] = R.label(reps[a]);
        for (std::size_t b = 0; b < q; ++b) {
            t.add[a * q + b] = coset[R.add(reps[a], reps[b])];
            t.mul[a * q + b] = coset[R.mul(reps[a], reps[b])];
        }
    }
    t.zero = coset[R.zero()];
    t.one = coset[R.one()];
    Provenance p{RingKind::Quotient, R.name() + "/I" + std::to_string(ideal.size()), 0, {host}, coset};
    return {FiniteRing::create(std::move(t), std::move(labels), std::move(p)), coset};
}

namespace {

Embedding embed_closed_set(const RingPtr& r, std::vector<Elem> carrier, const std::string& desc)
{
    const FiniteRing& R = *r;
    std::sort(carrier.begin(), carrier.end());
    Embedding emb;
    emb.host = r;
    emb.carrier = ElementSet(R.size(), carrier);
    emb.map = carrier;
    emb.contains_host_one = emb.carrier.contains(R.one());

    std::optional<Elem> identity;
    for (Elem e : carrier) {
        bool ok = true;
        for (Elem x : carrier)
            if (R.mul(e, x) != x || R.mul(x, e) != x) {
                ok = false;
                break;
            }
        if (ok) {
            identity = e;
            break;
        }
    }
    if (!identity || carrier.size() < 2)
        return emb;

    const std::size_t n = carrier.size();
    std::vector<int> pos(R.size(), -1);
    for (std::size_t i = 0; i < n; ++i)
        pos[carrier[i]] = static_cast<int>(i);
    RingTables t;
    t.size = n;
    t.add.resize(n * n);
    t.mul.resize(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = R.label(carrier[a]);
        for (std::size_t b = 0; b < n; ++b) {
            t.add[a * n + b] = static_cast<Elem>(pos[R.add(carrier[a], carrier[b])]);
            t.mul[a * n + b] = static_cast<Elem>(pos[R.mul(carrier[a], carrier[b])]);
        }
    }
    t.zero = static_cast<Elem>(pos[R.zero()]);
    t.one = static_cast<Elem>(pos[*identity]);
    Provenance p{RingKind::Subring, desc, 0, {r}, carrier};
    emb.sub = FiniteRing::create(std::move(t), std::move(labels), std::move(p));
    return emb;
}

}  // namespace

Embedding subring_closure(const RingPtr& r, const ElementSet& seed, bool require_one)
{
    const FiniteRing& R = *r;
    if (seed.empty())
        throw InvalidArgument("subring_closure: empty seed");
    std::vector<char> in(R.size(), 0);
    std::vector<Elem> members;
    std::deque<Elem> work;
    auto push = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            work.push_back(e);
        }
    };
    push(R.zero());
    if (require_one)
        push(R.one());
    for (Elem e : seed)
        push(e);
    while (!work.empty()) {
        Elem x = work.front();
        work.pop_front();
        members.push_back(x);
        push(R.neg(x));
        for (std::size_t i = 0; i < members.size(); ++i) {
            Elem y = members[i];
            push(R.add(x, y));
            push(R.mul(x, y));
            push(R.mul(y, x));
        }
    }
    return embed_closed_set(r, std::move(members), "subring(" + R.name() + ")");
}

Embedding f_plus_j(const RingHom& f, const Ideal& j)
{
    const RingPtr& b = f.codomain();
    const FiniteRing& B = *b;
    std::vector<char> in(B.size(), 0);
    for (Elem a = 0; a < f.domain()->size(); ++a)
        for (Elem x : j.members())
            in[B.add(f(a), x)] = 1;
    std::vector<Elem> carrier;
    for (Elem y = 0; y < B.size(); ++y)
        if (in[y])
            carrier.push_back(y);
    Embedding emb = embed_closed_set(b, std::move(carrier), "f(" + f.domain()->name() + ")+J in " + B.name());
    if (!emb.contains_host_one || !emb.sub)
        throw InternalError("f(A)+J does not contain the identity of B");
    return emb;
}

Elem AmalgamRing::encode(Elem a_elem, Elem j_elem) const
{
    int p = ideal.position(j_elem);
    if (p < 0)
        throw InvalidArgument("amalgam: second component offset is not in J");
    return static_cast<Elem>(a_elem * ideal.size() + static_cast<std::size_t>(p));
}

AmalgamRing amalgamation(const RingHom& f, const Ideal& j, std::size_t budget)
{
    const RingPtr& a = f.domain();
    const RingPtr& b = f.codomain();
    const FiniteRing& A = *a;
    const FiniteRing& B = *b;
    if (j.host() != b && !j.host()->same_tables(B))
        throw InvalidArgument("amalgamation: J is not an ideal of the codomain of f");
    if (!j.proper())
        throw InvalidArgument("amalgamation: J must be a proper ideal");
    const std::size_t js = j.size();
    const std::size_t size = A.size() * js;
    if (size > budget)
        throw BudgetExceeded("amalgamation of size " + std::to_string(size) + " exceeds size budget");

    const auto& jm = j.members().members();
    std::vector<std::pair<Elem, Elem>> decode(size);
    std::vector<Elem> proj_a(size), proj_b(size);
    for (Elem x = 0; x < A.size(); ++x)
        for (std::size_t p = 0; p < js; ++p) {
            Elem idx = static_cast<Elem>(x * js + p);
            decode[idx] = {x, jm[p]};
            proj_a[idx] = x;
            proj_b[idx] = B.add(f(x), jm[p]);
        }
    auto index_of = [&](Elem x, Elem jelem) {
        return static_cast<Elem>(x * js + static_cast<std::size_t>(j.position(jelem)));
    };

    RingTables t;
    t.size = size;
    t.add.resize(size * size);
    t.mul.resize(size * size);
    for (Elem u = 0; u < size; ++u)
        for (Elem v = 0; v < size; ++v) {
            auto [x, jx] = decode[u];
            auto [y, jy] = decode[v];
            t.add[u * size + v] = index_of(A.add(x, y), B.add(jx, jy));
            Elem xy = A.mul(x, y);
            Elem prod_b = B.mul(proj_b[u], proj_b[v]);
            t.mul[u * size + v] = index_of(xy, B.sub(prod_b, f(xy)));
        }
    t.zero = index_of(A.zero(), B.zero());
    t.one = index_of(A.one(), B.zero());

    std::vector<std::string> labels(size);
    std::vector<Elem> link(size);
    for (Elem u = 0; u < size; ++u) {
        labels[u] = "(" + A.label(proj_a[u]) + "," + B.label(proj_b[u]) + ")";
        link[u] = static_cast<Elem>(proj_a[u] * B.size() + proj_b[u]);
    }
    Provenance p{RingKind::Amalgam, "amalgam(" + A.name() + "," + B.name() + ",J" + std::to_string(js) + ")", 0, {a, b},
                 link};
    RingPtr ring = FiniteRing::create(std::move(t), std::move(labels), std::move(p));
    return AmalgamRing{ring, a, b, f, j, std::move(decode), std::move(proj_a), std::move(proj_b)};
}

AmalgamRing duplication(const RingPtr& a, const Ideal& i, std::size_t budget)
{
    return amalgamation(RingHom::identity(a), i, budget);
}

}  // namespace amalg

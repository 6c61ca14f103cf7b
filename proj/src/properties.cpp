#include "amalg/properties.hpp"

#include "amalg/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace amalg {

const char* property_name(Property p)
{
    switch (p) {
    case Property::Reduced: return "reduced";
    case Property::Semicommutative: return "semicommutative";
    case Property::Armendariz: return "armendariz";
    case Property::NilArmendariz: return "nil-armendariz";
    case Property::WeakArmendariz: return "weak-armendariz";
    }
    return "?";
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::HoldsUpToBound: return "HOLDS_UP_TO_BOUND";
    case Verdict::HoldsExact: return "HOLDS_EXACT";
    case Verdict::Refuted: return "REFUTED";
    }
    return "?";
}

bool holds(Verdict v)
{
    return v != Verdict::Refuted;
}

namespace {

constexpr Elem no_elem = static_cast<Elem>(-1);

// Search over (f, g) with f fixed in the outer loop and g assigned
// b_0, b_1, ... in order. Coefficient k of fg is a_0 b_k + (terms with
// b_j, j < k), so it is settled the moment b_k is chosen; the admissible
// b_k for each value of the remaining sum are precomputed per a_0.
class PairEngine {
public:
    PairEngine(const FiniteRing& r, unsigned d, const ElementSet& hyp, const ElementSet* concl, bool transpose)
        : n_(r.size()), d_(d), zero_(r.zero()), add_(r.add_table()), mul_(r.mul_table()), hyp_(hyp.mask())
    {
        if (transpose)
            for (Elem a = 0; a < n_; ++a)
                for (Elem b = 0; b < n_; ++b)
                    mul_[a * n_ + b] = r.mul(b, a);
        if (concl) {
            bad_.assign(n_ * n_, 0);
            can_violate_.assign(n_, 0);
            for (Elem a = 0; a < n_; ++a)
                for (Elem b = 0; b < n_; ++b)
                    if (!concl->contains(mul(a, b))) {
                        bad_[a * n_ + b] = 1;
                        can_violate_[a] = 1;
                    }
        }
    }

    [[nodiscard]] std::size_t partitions() const { return n_; }

    struct Outcome {
        std::optional<PairWitness> witness;
        std::uint64_t leaves = 0;
        std::uint64_t nodes = 0;
    };

    // One block of the f-order: all f with a_0 = a0. With `hunt` set, stops
    // at the first violating pair; otherwise streams every admissible pair.
    Outcome run(Elem a0, bool hunt, const PairVisitor* visit, std::atomic<std::uint64_t>& nodes, std::uint64_t max_nodes,
                const std::atomic<std::size_t>* stop_above) const
    {
        Outcome out;
        State st{*this, std::vector<Elem>(d_ + 1, 0), std::vector<Elem>(d_ + 1, 0), {}, {}, hunt, visit, nodes,
                 max_nodes, 0, out};
        build_allowed(a0, st.offsets, st.pool);
        st.f[0] = a0;
        // Odometer over a_1..a_d.
        while (true) {
            if (stop_above && stop_above->load(std::memory_order_relaxed) < a0)
                break;
            bool worth = true;
            if (hunt) {
                worth = false;
                for (Elem a : st.f)
                    worth = worth || can_violate_[a];
            }
            if (worth && st.descend(0, false))
                break;
            std::size_t i = d_;
            while (i >= 1) {
                if (++st.f[i] < n_)
                    break;
                st.f[i] = 0;
                --i;
            }
            if (i == 0)
                break;
        }
        nodes.fetch_add(st.local_nodes, std::memory_order_relaxed);
        out.nodes = st.total_nodes;
        return out;
    }

private:
    [[nodiscard]] Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    [[nodiscard]] Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }

    void build_allowed(Elem a0, std::vector<std::uint32_t>& offsets, std::vector<Elem>& pool) const
    {
        std::vector<std::vector<Elem>> lists(n_);
        for (Elem b = 0; b < n_; ++b) {
            Elem v = mul(a0, b);
            for (Elem c = 0; c < n_; ++c)
                if (hyp_[add(v, c)])
                    lists[c].push_back(b);
        }
        offsets.assign(n_ + 1, 0);
        pool.clear();
        for (Elem c = 0; c < n_; ++c) {
            offsets[c] = static_cast<std::uint32_t>(pool.size());
            pool.insert(pool.end(), lists[c].begin(), lists[c].end());
        }
        offsets[n_] = static_cast<std::uint32_t>(pool.size());
    }

    struct State {
        const PairEngine& e;
        std::vector<Elem> f;
        std::vector<Elem> g;
        std::vector<std::uint32_t> offsets;
        std::vector<Elem> pool;
        bool hunt;
        const PairVisitor* visit;
        std::atomic<std::uint64_t>& nodes;
        std::uint64_t max_nodes;
        std::uint64_t local_nodes;
        Outcome& out;
        std::uint64_t total_nodes = 0;

        [[nodiscard]] bool violates(Elem b) const
        {
            for (Elem a : f)
                if (e.bad_[a * e.n_ + b])
                    return true;
            return false;
        }

        void tick()
        {
            if (++total_nodes > max_nodes)
                throw BudgetExceeded("polynomial pair search exceeds the node budget");
            if ((++local_nodes & 0xFFFFu) == 0) {
                std::uint64_t total = nodes.fetch_add(0x10000u, std::memory_order_relaxed) + 0x10000u;
                local_nodes -= 0x10000u;
                if (total > max_nodes)
                    throw BudgetExceeded("polynomial pair search exceeds the node budget");
            }
        }

        // True when the search should stop.
        bool descend(unsigned j, bool violated)
        {
            const unsigned d = e.d_;
            Elem c = e.zero_;
            for (unsigned i = 1; i <= j; ++i)
                c = e.add(c, e.mul(f[i], g[j - i]));
            const Elem* first = pool.data() + offsets[c];
            const Elem* last = pool.data() + offsets[c + 1];
            for (const Elem* it = first; it != last; ++it) {
                const Elem b = *it;
                tick();
                bool v = false;
                if (hunt) {
                    v = violated || violates(b);
                    if (j == d && !v)
                        continue;
                }
                g[j] = b;
                if (j < d) {
                    if (descend(j + 1, v))
                        return true;
                    continue;
                }
                if (!tail_ok())
                    continue;
                ++out.leaves;
                if (hunt) {
                    out.witness = least_violation();
                    return true;
                }
                if (visit && !(*visit)(f, g))
                    return true;
            }
            return false;
        }

        // Coefficients d+1 .. 2d close only once g is complete.
        [[nodiscard]] bool tail_ok() const
        {
            const unsigned d = e.d_;
            for (unsigned k = d + 1; k <= 2 * d; ++k) {
                Elem c = e.zero_;
                for (unsigned i = k - d; i <= d; ++i)
                    c = e.add(c, e.mul(f[i], g[k - i]));
                if (!e.hyp_[c])
                    return false;
            }
            return true;
        }

        [[nodiscard]] PairWitness least_violation() const
        {
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = 0; j < g.size(); ++j)
                    if (e.bad_[f[i] * e.n_ + g[j]])
                        return PairWitness{f, g, i, j, e.mul(f[i], g[j])};
            throw InternalError("violation flag without a violating coefficient pair");
        }
    };

    std::size_t n_;
    unsigned d_;
    Elem zero_;
    const std::vector<Elem>& add_;
    std::vector<Elem> mul_;
    const std::vector<char>& hyp_;
    std::vector<char> bad_;
    std::vector<char> can_violate_;
};

template <class Fn>
void run_partitions(std::size_t count, unsigned threads, Fn&& fn)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads == 1) {
        for (std::size_t p = 0; p < count; ++p)
            fn(p);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t p = next++; p < count; p = next++)
                    fn(p);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        });
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace

ViolationSearch find_violation(const FiniteRing& r, unsigned d, const ElementSet& hyp, const ElementSet& concl,
                               const SearchOptions& opt)
{
    PairEngine engine(r, d, hyp, &concl, opt.fix_right);
    const std::size_t parts = engine.partitions();
    std::vector<PairEngine::Outcome> outcomes(parts);
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> best{parts};
    run_partitions(parts, opt.threads, [&](std::size_t p) {
        if (best.load() < p)
            return;
        outcomes[p] = engine.run(static_cast<Elem>(p), true, nullptr, nodes, opt.max_nodes, &best);
        if (outcomes[p].witness) {
            std::size_t cur = best.load();
            while (p < cur && !best.compare_exchange_weak(cur, p)) {
            }
        }
    });
    ViolationSearch res;
    for (std::size_t p = 0; p < parts; ++p) {
        res.leaves += outcomes[p].leaves;
        res.nodes += outcomes[p].nodes;
        if (outcomes[p].witness) {
            res.witness = outcomes[p].witness;
            break;
        }
    }
    if (res.witness && opt.fix_right) {
        // The engine ran on the opposite ring with the factors swapped.
        PairWitness& w = *res.witness;
        std::swap(w.f, w.g);
        std::swap(w.i, w.j);
        w.product = r.mul(w.f[w.i], w.g[w.j]);
    }
    return res;
}

std::uint64_t annihilating_pairs(const FiniteRing& r, unsigned d, const ElementSet& s, const PairVisitor& visit,
                                 const SearchOptions& opt)
{
    PairEngine engine(r, d, s, nullptr, opt.fix_right);
    std::atomic<std::uint64_t> nodes{0};
    std::uint64_t total = 0;
    bool stopped = false;
    PairVisitor wrapped = [&](std::span<const Elem> f, std::span<const Elem> g) {
        bool go = opt.fix_right ? visit(g, f) : visit(f, g);
        stopped = !go;
        return go;
    };
    for (std::size_t p = 0; p < engine.partitions() && !stopped; ++p)
        total += engine.run(static_cast<Elem>(p), false, &wrapped, nodes, opt.max_nodes, nullptr).leaves;
    return total;
}

std::uint64_t count_annihilating_pairs(const FiniteRing& r, unsigned d, const ElementSet& s, const SearchOptions& opt)
{
    PairEngine engine(r, d, s, nullptr, opt.fix_right);
    std::vector<std::uint64_t> counts(engine.partitions(), 0);
    std::atomic<std::uint64_t> nodes{0};
    run_partitions(engine.partitions(), opt.threads, [&](std::size_t p) {
        counts[p] = engine.run(static_cast<Elem>(p), false, nullptr, nodes, opt.max_nodes, nullptr).leaves;
    });
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    return total;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

PropertyReport polynomial_check(Property p, const RingPtr& r, unsigned d, const ElementSet& hyp,
                                const ElementSet& concl, const SearchOptions& opt)
{
    auto t0 = Clock::now();
    PropertyReport rep;
    rep.property = p;
    rep.ring = r;
    rep.degree_bound = d;
    auto found = find_violation(*r, d, hyp, concl, opt);
    rep.pairs_examined = found.nodes;
    rep.witness = found.witness;
    rep.verdict = found.witness ? Verdict::Refuted : Verdict::HoldsUpToBound;
    rep.elapsed_seconds = seconds_since(t0);
    if (rep.witness && !revalidate(rep))
        throw InternalError(std::string("witness for ") + property_name(p) + " failed revalidation");
    return rep;
}

}  // namespace

PropertyReport check_reduced(const RingPtr& r)
{
    auto t0 = Clock::now();
    PropertyReport rep;
    rep.property = Property::Reduced;
    rep.ring = r;
    auto v = is_reduced(*r);
    rep.verdict = v.reduced ? Verdict::HoldsExact : Verdict::Refuted;
    if (v.witness)
        rep.element_witness = {*v.witness};
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

PropertyReport check_semicommutative(const RingPtr& r)
{
    auto t0 = Clock::now();
    PropertyReport rep;
    rep.property = Property::Semicommutative;
    rep.ring = r;
    auto v = is_semicommutative_ring(*r);
    rep.verdict = v.holds ? Verdict::HoldsExact : Verdict::Refuted;
    if (v.witness)
        rep.element_witness = {v.witness->a, v.witness->b, v.witness->r};
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

namespace {

PropertyReport search_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    const ElementSet zero = ElementSet::singleton(r->size(), r->zero());
    return polynomial_check(Property::Armendariz, r, d, zero, zero, opt);
}


PropertyReport search_nil_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    const ElementSet nil = nilradical(*r);
    auto ideal = nil.size() > 1 ? Ideal::verify(r, nil) : std::nullopt;
    if (!ideal)
        return polynomial_check(Property::NilArmendariz, r, d, nil, nil, opt);

    // nil(R) is an ideal N: fg in N[x] and a_i b_j in N read off R/N, so
    // the question is plain Armendariz there. Cosets are ordered by least
    // member, hence lifting by least members keeps the witness minimal.
    auto t0 = Clock::now();
    const QuotientRing q = quotient_ring(*ideal);
    const ElementSet zero = ElementSet::singleton(q.ring->size(), q.ring->zero());
    auto found = find_violation(*q.ring, d, zero, zero, opt);
    std::vector<Elem> least(q.ring->size(), no_elem);
    for (Elem u = 0; u < r->size(); ++u)
        if (least[q.surjection[u]] == no_elem)
            least[q.surjection[u]] = u;
    PropertyReport rep;
    rep.property = Property::NilArmendariz;
    rep.ring = r;
    rep.degree_bound = d;
    rep.pairs_examined = found.nodes;
    rep.verdict = found.witness ? Verdict::Refuted : Verdict::HoldsUpToBound;
    if (found.witness) {
        PairWitness w = *found.witness;
        for (Elem& c : w.f)
            c = least[c];
        for (Elem& c : w.g)
            c = least[c];
        w.product = r->mul(w.f[w.i], w.g[w.j]);
        rep.witness = w;
        if (!revalidate(rep))
            throw InternalError("lifted nil-Armendariz witness failed revalidation");
    }
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

PropertyReport search_weak_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    const ElementSet zero = ElementSet::singleton(r->size(), r->zero());
    const ElementSet nil = nilradical(*r);
    // fg = 0 lies in nil(R)[x], so nil-Armendariz at bound d gives weak
    // Armendariz at bound d. Worth trying first only when nil(R) is an
    // ideal, where the nil check runs on the small ring R/nil(R).
    if (nil.size() > 1 && Ideal::verify(r, nil)) {
        auto t0 = Clock::now();
        auto via_nil = search_nil_armendariz(r, d, opt);
        if (via_nil.holds()) {
            via_nil.property = Property::WeakArmendariz;
            via_nil.elapsed_seconds = seconds_since(t0);
            return via_nil;
        }
    }
    return polynomial_check(Property::WeakArmendariz, r, d, zero, nil, opt);
}

/// eR with identity e, for a central idempotent e.
RingPtr corner(const RingPtr& r, Elem e)
{
    std::vector<Elem> carrier;
    for (Elem x = 0; x < r->size(); ++x)
        carrier.push_back(r->mul(e, x));
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    std::vector<Elem> index(r->size(), no_elem);
    for (std::size_t k = 0; k < carrier.size(); ++k)
        index[carrier[k]] = static_cast<Elem>(k);
    const std::size_t n = carrier.size();
    RingTables t;
    t.size = n;
    t.add.resize(n * n);
    t.mul.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            t.add[a * n + b] = index[r->add(carrier[a], carrier[b])];
            t.mul[a * n + b] = index[r->mul(carrier[a], carrier[b])];
        }
    t.zero = index[r->zero()];
    t.one = index[e];
    std::vector<std::string> labels;
    for (Elem x : carrier)
        labels.push_back(r->label(x));
    return FiniteRing::create(std::move(t), std::move(labels),
                              Provenance{RingKind::Subring, "corner(" + r->name() + "," + r->label(e) + ")", 0, {r},
                                         carrier});
}

/// Least central idempotent other than 0 and 1.
std::optional<Elem> splitting_idempotent(const FiniteRing& r)
{
    for (Elem e = 0; e < r.size(); ++e) {
        if (e == r.zero() || e == r.one() || r.mul(e, e) != e)
            continue;
        bool central = true;
        for (Elem x = 0; x < r.size() && central; ++x)
            central = r.mul(e, x) == r.mul(x, e);
        if (central)
            return e;
    }
    return std::nullopt;
}

PropertyReport search_property(Property p, const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    switch (p) {
    case Property::Armendariz: return search_armendariz(r, d, opt);
    case Property::NilArmendariz: return search_nil_armendariz(r, d, opt);
    default: return search_weak_armendariz(r, d, opt);
    }
}

// R = eR x (1-e)R. Polynomials, nil(R), zero products and the conclusions
// all split componentwise, so R has a violation at bound d exactly when a
// factor does. Only a positive answer is taken from the factors: when a
// factor fails, R is searched directly so the witness is R's least one.
PropertyReport polynomial_property(Property p, const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    const auto e = splitting_idempotent(*r);
    if (!e)
        return search_property(p, r, d, opt);
    auto t0 = Clock::now();
    std::uint64_t nodes = 0;
    for (Elem idem : {*e, r->sub(r->one(), *e)}) {
        auto part = polynomial_property(p, corner(r, idem), d, opt);
        nodes += part.pairs_examined;
        if (!part.holds())
            return search_property(p, r, d, opt);
    }
    PropertyReport rep;
    rep.property = p;
    rep.ring = r;
    rep.degree_bound = d;
    rep.verdict = Verdict::HoldsUpToBound;
    rep.pairs_examined = nodes;
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

}  // namespace

PropertyReport check_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    return polynomial_property(Property::Armendariz, r, d, opt);
}

PropertyReport check_weak_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    return polynomial_property(Property::WeakArmendariz, r, d, opt);
}

PropertyReport check_nil_armendariz(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    return polynomial_property(Property::NilArmendariz, r, d, opt);
}

PropertyReport check_property(Property p, const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    switch (p) {
    case Property::Reduced: return check_reduced(r);
    case Property::Semicommutative: return check_semicommutative(r);
    case Property::Armendariz: return check_armendariz(r, d, opt);
    case Property::NilArmendariz: return check_nil_armendariz(r, d, opt);
    case Property::WeakArmendariz: return check_weak_armendariz(r, d, opt);
    }
    throw InvalidArgument("unknown property");
}

bool revalidate(const PropertyReport& rep)
{
    const FiniteRing& R = *rep.ring;
    if (rep.verdict != Verdict::Refuted)
        return true;
    switch (rep.property) {
    case Property::Reduced: {
        if (rep.element_witness.size() != 1)
            return false;
        Elem a = rep.element_witness[0];
        return a != R.zero() && R.mul(a, a) == R.zero();
    }
    case Property::Semicommutative: {
        if (rep.element_witness.size() != 3)
            return false;
        Elem a = rep.element_witness[0], b = rep.element_witness[1], x = rep.element_witness[2];
        return R.mul(a, b) == R.zero() && R.mul(R.mul(a, x), b) != R.zero();
    }
    default: break;
    }
    if (!rep.witness)
        return false;
    const PairWitness& w = *rep.witness;
    if (w.i >= w.f.size() || w.j >= w.g.size())
        return false;
    const Polynomial f = make_poly(rep.ring, w.f);
    const Polynomial g = make_poly(rep.ring, w.g);
    const ElementSet nil = nilradical(R);
    const ElementSet zero = ElementSet::singleton(R.size(), R.zero());
    const ElementSet& hyp = rep.property == Property::NilArmendariz ? nil : zero;
    const ElementSet& concl = rep.property == Property::Armendariz ? zero : nil;
    const Elem prod = R.mul(w.f[w.i], w.g[w.j]);
    return product_coeffs_in_set(f, g, hyp) && prod == w.product && !concl.contains(prod);
}

bool PropertyProfile::audit_clean() const
{
    return std::none_of(audit.begin(), audit.end(), [](const AuditFlag& f) { return f.level == AuditLevel::Failure; });
}

const PropertyReport& PropertyProfile::get(Property p) const
{
    switch (p) {
    case Property::Reduced: return reduced;
    case Property::Semicommutative: return semicommutative;
    case Property::Armendariz: return armendariz;
    case Property::NilArmendariz: return nil_armendariz;
    case Property::WeakArmendariz: return weak_armendariz;
    }
    throw InvalidArgument("unknown property");
}

PropertyProfile property_profile(const RingPtr& r, unsigned d, const SearchOptions& opt)
{
    PropertyProfile prof;
    prof.ring = r;
    prof.degree_bound = d;
    prof.reduced = check_reduced(r);
    prof.semicommutative = check_semicommutative(r);
    prof.armendariz = check_armendariz(r, d, opt);
    prof.nil_armendariz = check_nil_armendariz(r, d, opt);
    prof.weak_armendariz = check_weak_armendariz(r, d, opt);
    if (prof.reduced.holds() && !prof.armendariz.holds())
        prof.audit.push_back({AuditLevel::Failure, "reduced ring refutes Armendariz at bound " + std::to_string(d)});
    if (prof.nil_armendariz.holds() && !prof.weak_armendariz.holds())
        prof.audit.push_back(
            {AuditLevel::Failure, "nil-Armendariz holds but weak Armendariz is refuted at bound " + std::to_string(d)});
    if (prof.armendariz.holds() && !prof.nil_armendariz.holds())
        prof.audit.push_back({AuditLevel::Anomaly, "ANOMALY-FOR-ESCALATION: Armendariz holds but nil-Armendariz is "
                                                   "refuted at bound " + std::to_string(d)});
    return prof;
}

}  // namespace amalg

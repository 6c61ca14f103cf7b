#include "amalg/morphisms.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace amalg {

Ideal::Ideal(RingPtr host, ElementSet members)
    : host_(std::move(host)), members_(std::move(members)), position_(host_->size(), -1)
{
    int pos = 0;
    for (Elem e : members_)
        position_[e] = pos++;
    proper_ = !members_.contains(host_->one());
}

int Ideal::position(Elem e) const
{
    return e < position_.size() ? position_[e] : -1;
}

std::optional<Ideal> Ideal::verify(RingPtr host, const ElementSet& members)
{
    const FiniteRing& r = *host;
    if (members.host_size() != r.size() || !members.contains(r.zero()))
        return std::nullopt;
    for (Elem x : members) {
        if (!members.contains(r.neg(x)))
            return std::nullopt;
        for (Elem y : members)
            if (!members.contains(r.add(x, y)))
                return std::nullopt;
        for (Elem s = 0; s < r.size(); ++s)
            if (!members.contains(r.mul(s, x)) || !members.contains(r.mul(x, s)))
                return std::nullopt;
    }
    return Ideal(std::move(host), members);
}

RingHom::RingHom(RingPtr domain, RingPtr codomain, std::vector<Elem> map)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map))
{
    std::vector<char> hit(codomain_->size(), 0);
    std::size_t distinct = 0;
    for (Elem y : map_)
        if (!hit[y]) {
            hit[y] = 1;
            ++distinct;
        }
    injective_ = distinct == map_.size();
    surjective_ = distinct == codomain_->size();
}

ElementSet RingHom::image() const
{
    return ElementSet(codomain_->size(), map_);
}

RingHom RingHom::identity(RingPtr r)
{
    std::vector<Elem> id(r->size());
    for (Elem a = 0; a < id.size(); ++a)
        id[a] = a;
    return RingHom(r, r, std::move(id));
}

HomVerdict verify_hom(const std::vector<Elem>& map, const RingPtr& a, const RingPtr& b)
{
    const FiniteRing& A = *a;
    const FiniteRing& B = *b;
    if (map.size() != A.size())
        return {std::nullopt, HomViolation{HomLaw::Range, {}}};
    for (Elem x = 0; x < A.size(); ++x)
        if (map[x] >= B.size())
            return {std::nullopt, HomViolation{HomLaw::Range, {x}}};
    if (map[A.one()] != B.one())
        return {std::nullopt, HomViolation{HomLaw::Unital, {A.one()}}};
    for (Elem x = 0; x < A.size(); ++x)
        for (Elem y = 0; y < A.size(); ++y)
            if (map[A.add(x, y)] != B.add(map[x], map[y]))
                return {std::nullopt, HomViolation{HomLaw::Additive, {x, y}}};
    for (Elem x = 0; x < A.size(); ++x)
        for (Elem y = 0; y < A.size(); ++y)
            if (map[A.mul(x, y)] != B.mul(map[x], map[y]))
                return {std::nullopt, HomViolation{HomLaw::Multiplicative, {x, y}}};
    return {RingHom(a, b, map), std::nullopt};
}

RingHom make_hom(const std::vector<Elem>& map, const RingPtr& a, const RingPtr& b)
{
    auto v = verify_hom(map, a, b);
    if (!v.hom)
        throw InvalidArgument("map " + a->name() + " -> " + b->name() + " is not a unital ring homomorphism");
    return *v.hom;
}

Ideal generated_ideal(const RingPtr& r, const std::vector<Elem>& gens)
{
    const FiniteRing& R = *r;
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
    for (Elem g : gens) {
        if (g >= R.size())
            throw InvalidArgument("generator out of range");
        push(g);
    }
    // Finite additive closure makes negation automatic; products with
    // every ring element on either side give the two-sided sandwich.
    while (!work.empty()) {
        Elem x = work.front();
        work.pop_front();
        members.push_back(x);
        for (Elem s = 0; s < R.size(); ++s) {
            push(R.mul(s, x));
            push(R.mul(x, s));
        }
        for (std::size_t i = 0; i < members.size(); ++i)
            push(R.add(x, members[i]));
    }
    auto ideal = Ideal::verify(r, ElementSet(R.size(), members));
    if (!ideal)
        throw InternalError("ideal closure is not an ideal");
    return *ideal;
}

std::vector<Ideal> enumerate_ideals(const RingPtr& r, std::size_t budget)
{
    if (r->size() > budget)
        throw BudgetExceeded("ideal enumeration: ring " + r->name() + " exceeds size budget");
    // Every ideal is reached from (0) by adjoining one element at a time.
    std::set<std::vector<Elem>> seen;
    std::vector<Ideal> found;
    std::deque<std::size_t> work;
    auto record = [&](Ideal i) {
        if (seen.insert(i.members().members()).second) {
            found.push_back(std::move(i));
            work.push_back(found.size() - 1);
        }
    };
    record(generated_ideal(r, {}));
    while (!work.empty()) {
        std::size_t idx = work.front();
        work.pop_front();
        std::vector<Elem> base = found[idx].members().members();
        for (Elem x = 0; x < r->size(); ++x) {
            if (found[idx].contains(x))
                continue;
            std::vector<Elem> gens = base;
            gens.push_back(x);
            record(generated_ideal(r, gens));
        }
    }
    std::sort(found.begin(), found.end(), [](const Ideal& a, const Ideal& b) { return a.members() < b.members(); });
    return found;
}

namespace {

struct HomSearch {
    const FiniteRing& A;
    const FiniteRing& B;
    static constexpr Elem unset = static_cast<Elem>(-1);

    // Extends a partial map through + and * closure; false on a clash.
    bool propagate(std::vector<Elem>& map, std::vector<Elem> fresh) const
    {
        std::vector<Elem> mapped;
        for (Elem x = 0; x < A.size(); ++x)
            if (map[x] != unset)
                mapped.push_back(x);
        auto bind = [&](Elem z, Elem image) {
            if (map[z] == unset) {
                map[z] = image;
                mapped.push_back(z);
                fresh.push_back(z);
                return true;
            }
            return map[z] == image;
        };
        for (std::size_t k = 0; k < fresh.size(); ++k) {
            Elem x = fresh[k];
            for (std::size_t t = 0; t < mapped.size(); ++t) {
                Elem y = mapped[t];
                if (!bind(A.add(x, y), B.add(map[x], map[y])))
                    return false;
                if (!bind(A.mul(x, y), B.mul(map[x], map[y])))
                    return false;
                if (!bind(A.mul(y, x), B.mul(map[y], map[x])))
                    return false;
            }
        }
        return true;
    }

    void search(std::vector<Elem>& map, const RingPtr& a, const RingPtr& b, std::vector<RingHom>& out) const
    {
        auto next = std::find(map.begin(), map.end(), unset);
        if (next == map.end()) {
            auto v = verify_hom(map, a, b);
            if (v.hom)
                out.push_back(std::move(*v.hom));
            return;
        }
        Elem x = static_cast<Elem>(next - map.begin());
        for (Elem y = 0; y < B.size(); ++y) {
            std::vector<Elem> trial = map;
            trial[x] = y;
            if (propagate(trial, {x}))
                search(trial, a, b, out);
        }
    }
};

}  // namespace

std::vector<RingHom> enumerate_homs(const RingPtr& a, const RingPtr& b, std::size_t budget)
{
    if (a->size() > budget || b->size() > budget)
        throw BudgetExceeded("hom enumeration: " + a->name() + " -> " + b->name() + " exceeds size budget");
    HomSearch hs{*a, *b};
    std::vector<Elem> map(a->size(), HomSearch::unset);
    map[a->zero()] = b->zero();
    map[a->one()] = b->one();
    std::vector<RingHom> out;
    if (hs.propagate(map, {a->zero(), a->one()}))
        hs.search(map, a, b, out);
    std::sort(out.begin(), out.end(), [](const RingHom& x, const RingHom& y) { return x.map() < y.map(); });
    return out;
}

Ideal preimage_ideal(const RingHom& f, const Ideal& j)
{
    std::vector<Elem> members;
    for (Elem a = 0; a < f.domain()->size(); ++a)
        if (j.contains(f(a)))
            members.push_back(a);
    auto ideal = Ideal::verify(f.domain(), ElementSet(f.domain()->size(), members));
    if (!ideal)
        throw InternalError("preimage of an ideal failed ideal verification");
    return *ideal;
}

bool is_radical_ideal(const RingPtr& r, const Ideal& j)
{
    for (Elem x = 0; x < r->size(); ++x)
        if (j.contains(r->mul(x, x)) && !j.contains(x))
            return false;
    return true;
}

IdealSemicommutativity is_semicommutative_ideal(const RingPtr& r, const Ideal& j)
{
    const FiniteRing& R = *r;
    IdealSemicommutativity out;
    const auto& J = j.members();
    for (Elem x : J)
        for (Elem y : J) {
            if (R.mul(x, y) != R.zero())
                continue;
            if (out.holds)
                for (Elem m : J)
                    if (R.mul(R.mul(x, m), y) != R.zero()) {
                        out.holds = false;
                        out.witness = SemicommutativeWitness{x, y, m};
                        break;
                    }
            if (out.holds_host_middle)
                for (Elem m = 0; m < R.size(); ++m)
                    if (R.mul(R.mul(x, m), y) != R.zero()) {
                        out.holds_host_middle = false;
                        out.witness_host_middle = SemicommutativeWitness{x, y, m};
                        break;
                    }
        }

    out.nil = nilradical(R).intersect(J);
    for (Elem x : out.nil) {
        for (Elem y : out.nil)
            if (!out.nil.contains(R.add(x, y)))
                out.nil_closed_under_add = false;
        for (Elem m : J)
            if (!out.nil.contains(R.mul(m, x)) || !out.nil.contains(R.mul(x, m)))
                out.nil_absorbs_j = false;
    }
    return out;
}

}  // namespace amalg

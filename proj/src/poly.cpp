#include "amalg/poly.hpp"

namespace amalg {

std::optional<std::size_t> Polynomial::degree() const
{
    for (std::size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i] != host->zero())
            return i;
    return std::nullopt;
}

Polynomial make_poly(RingPtr host, std::vector<Elem> coeffs)
{
    for (Elem c : coeffs)
        if (c >= host->size())
            throw InvalidArgument("polynomial coefficient out of range");
    if (coeffs.empty())
        coeffs.push_back(host->zero());
    return Polynomial{std::move(host), std::move(coeffs)};
}

namespace {

void require_same_host(const Polynomial& f, const Polynomial& g)
{
    if (f.host != g.host && !f.host->same_tables(*g.host))
        throw InvalidArgument("polynomials over different rings");
}

}  // namespace

Polynomial poly_mul(const Polynomial& f, const Polynomial& g)
{
    require_same_host(f, g);
    const FiniteRing& R = *f.host;
    std::vector<Elem> out(f.coeffs.size() + g.coeffs.size() - 1, R.zero());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            out[i + j] = R.add(out[i + j], R.mul(f.coeffs[i], g.coeffs[j]));
    return Polynomial{f.host, std::move(out)};
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g)
{
    require_same_host(f, g);
    const FiniteRing& R = *f.host;
    std::vector<Elem> out(std::max(f.coeffs.size(), g.coeffs.size()), R.zero());
    for (std::size_t i = 0; i < out.size(); ++i) {
        Elem a = i < f.coeffs.size() ? f.coeffs[i] : R.zero();
        Elem b = i < g.coeffs.size() ? g.coeffs[i] : R.zero();
        out[i] = R.add(a, b);
    }
    return Polynomial{f.host, std::move(out)};
}

bool product_coeffs_in_set(const Polynomial& f, const Polynomial& g, const ElementSet& s)
{
    const Polynomial p = poly_mul(f, g);
    for (Elem c : p.coeffs)
        if (!s.contains(c))
            return false;
    return true;
}

std::string render(const Polynomial& p)
{
    const FiniteRing& R = *p.host;
    std::string out;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] == R.zero())
            continue;
        std::string lab = R.label(p.coeffs[i]);
        if (i > 0 && lab.find_first_of(" +") != std::string::npos)
            lab = "(" + lab + ")";
        std::string term = i == 0 ? lab : i == 1 ? lab + "*x" : lab + "*x^" + std::to_string(i);
        out += out.empty() ? term : " + " + term;
    }
    return out.empty() ? R.label(R.zero()) : out;
}

PolyStream::PolyStream(RingPtr host, std::size_t degree_bound, std::size_t max_count) : host_(std::move(host))
{
    std::size_t total = 1;
    for (std::size_t i = 0; i <= degree_bound; ++i) {
        total *= host_->size();
        if (total > max_count)
            throw BudgetExceeded("polynomial enumeration exceeds the search budget");
    }
    total_ = total;
    cur_.assign(degree_bound + 1, 0);
}

bool PolyStream::next(Polynomial& out)
{
    if (emitted_ == total_)
        return false;
    if (emitted_ > 0) {
        // Odometer with a_0 as the most significant digit.
        for (std::size_t i = cur_.size(); i-- > 0;) {
            if (++cur_[i] < host_->size())
                break;
            cur_[i] = 0;
        }
    }
    ++emitted_;
    out.host = host_;
    out.coeffs = cur_;
    return true;
}

PolyStream enumerate_polys(RingPtr host, std::size_t degree_bound, std::size_t max_count)
{
    return PolyStream(std::move(host), degree_bound, max_count);
}

}  // namespace amalg

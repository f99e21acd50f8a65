#include "dqi/polyvector.hpp"

#include <algorithm>

#include "dqi/error.hpp"

namespace dqi {

namespace detail {

std::optional<std::pair<int, IndexTuple>> wedge_indices(const IndexTuple &a, const IndexTuple &b)
{
    IndexTuple merged;
    merged.reserve(a.size() + b.size());
    int inversions = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            merged.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            // b[j] jumps over the remaining elements of a
            inversions += static_cast<int>(a.size() - i);
            merged.push_back(b[j++]);
        } else {
            return std::nullopt;
        }
    }
    return std::make_pair(inversions % 2 == 0 ? 1 : -1, std::move(merged));
}

int sort_with_sign(IndexTuple &idx)
{
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i])
            return 0;
    return sign;
}

} // namespace detail

Polyvector::Polyvector(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

Polyvector Polyvector::function(const Polynomial &f)
{
    Polyvector v(f.dim(), 0);
    v.add({}, f);
    return v;
}

Polyvector Polyvector::basis(std::size_t dim, IndexTuple indices, const Polynomial &coefficient)
{
    Polyvector v(dim, indices.size());
    v.add(std::move(indices), coefficient);
    return v;
}

Polyvector Polyvector::basis(std::size_t dim, IndexTuple indices)
{
    return basis(dim, std::move(indices), Polynomial::constant(dim, 1));
}

Polynomial Polyvector::component(const IndexTuple &indices) const
{
    auto it = components_.find(indices);
    return it == components_.end() ? Polynomial(dim_) : it->second;
}

void Polyvector::add(IndexTuple indices, const Polynomial &coefficient)
{
    if (indices.size() != degree_)
        throw ArgumentError("polyvector component has wrong degree");
    if (coefficient.dim() != dim_)
        throw DimensionError("polyvector coefficient has wrong dimension");
    for (std::size_t i : indices)
        if (i >= dim_)
            throw ArgumentError("polyvector index " + std::to_string(i) + " out of range");
    int sign = detail::sort_with_sign(indices);
    if (sign == 0 || coefficient.is_zero())
        return;
    auto [it, inserted] = components_.try_emplace(indices, sign > 0 ? coefficient : -coefficient);
    if (!inserted) {
        if (sign > 0)
            it->second += coefficient;
        else
            it->second -= coefficient;
        if (it->second.is_zero())
            components_.erase(it);
    }
}

Polyvector &Polyvector::operator+=(const Polyvector &rhs)
{
    if (dim_ != rhs.dim_ || degree_ != rhs.degree_)
        throw DimensionError("polyvector sum: dimension or degree mismatch");
    for (const auto &[idx, c] : rhs.components_)
        add(idx, c);
    return *this;
}

Polyvector &Polyvector::operator-=(const Polyvector &rhs)
{
    if (dim_ != rhs.dim_ || degree_ != rhs.degree_)
        throw DimensionError("polyvector difference: dimension or degree mismatch");
    for (const auto &[idx, c] : rhs.components_)
        add(idx, -c);
    return *this;
}

Polyvector operator*(const Polynomial &f, const Polyvector &v)
{
    Polyvector out(v.dim_, v.degree_);
    for (const auto &[idx, c] : v.components_)
        out.add(idx, f * c);
    return out;
}

Polyvector operator*(const Rational &c, const Polyvector &v)
{
    Polyvector out(v.dim_, v.degree_);
    for (const auto &[idx, coeff] : v.components_)
        out.add(idx, coeff * c);
    return out;
}

Polynomial Polyvector::bivector_entry(std::size_t i, std::size_t j) const
{
    if (degree_ != 2)
        throw ArgumentError("bivector_entry on a polyvector of degree " + std::to_string(degree_));
    if (i == j)
        return Polynomial(dim_);
    if (i < j)
        return component({i, j});
    return -component({j, i});
}

Polyvector wedge(const Polyvector &p, const Polyvector &q)
{
    if (p.dim() != q.dim())
        throw DimensionError("wedge: dimension mismatch");
    Polyvector out(p.dim(), p.degree() + q.degree());
    for (const auto &[ip, cp] : p.components()) {
        for (const auto &[iq, cq] : q.components()) {
            auto merged = detail::wedge_indices(ip, iq);
            if (!merged)
                continue;
            Polynomial c = cp * cq;
            out.add(merged->second, merged->first > 0 ? c : -c);
        }
    }
    return out;
}

namespace {

// Left derivative d/dxi_i of the odd monomial xi_I.
std::optional<std::pair<int, IndexTuple>> odd_derivative(const IndexTuple &idx, std::size_t i)
{
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end())
        return std::nullopt;
    auto pos = it - idx.begin();
    IndexTuple rest(idx.begin(), it);
    rest.insert(rest.end(), it + 1, idx.end());
    return std::make_pair(pos % 2 == 0 ? 1 : -1, std::move(rest));
}

// sum_i (d/dx_i A) ^ (d/dxi_i B)
Polyvector contract_half(const Polyvector &a, const Polyvector &b)
{
    const std::size_t dim = a.dim();
    Polyvector out(dim, a.degree() + b.degree() - 1);
    if (b.degree() == 0)
        return out;
    for (const auto &[ib, cb] : b.components()) {
        for (std::size_t i : ib) {
            auto db = odd_derivative(ib, i);
            for (const auto &[ia, ca] : a.components()) {
                Polynomial dca = partial(ca, i);
                if (dca.is_zero())
                    continue;
                auto merged = detail::wedge_indices(ia, db->second);
                if (!merged)
                    continue;
                Polynomial c = dca * cb;
                out.add(merged->second, merged->first * db->first > 0 ? c : -c);
            }
        }
    }
    return out;
}

} // namespace

Polyvector schouten_bracket(const Polyvector &p, const Polyvector &q)
{
    if (p.dim() != q.dim())
        throw DimensionError("schouten_bracket: dimension mismatch");
    if (p.degree() + q.degree() == 0)
        return Polyvector(p.dim(), 0);
    Polyvector out(p.dim(), p.degree() + q.degree() - 1);
    if (p.degree() > 0)
        out += contract_half(q, p);
    if (q.degree() > 0) {
        const long sign_exp = (static_cast<long>(p.degree()) - 1) * (static_cast<long>(q.degree()) - 1);
        Polyvector second = contract_half(p, q);
        if (sign_exp % 2 == 0)
            out -= second;
        else
            out += second;
    }
    return out;
}

JacobiCheck jacobi_check(const Polyvector &pi)
{
    if (pi.degree() != 2)
        throw ArgumentError("jacobi_check: expected a bivector, got degree " + std::to_string(pi.degree()));
    Polyvector w = schouten_bracket(pi, pi);
    bool ok = w.is_zero();
    return {ok, std::move(w)};
}

Polyvector d_pi(const Polyvector &pi, const Polyvector &t)
{
    if (!jacobi_check(pi).is_poisson)
        throw PreconditionError("d_pi: bivector is not Poisson");
    return schouten_bracket(pi, t);
}

Polynomial poisson_bracket(const Polyvector &pi, const Polynomial &f, const Polynomial &g)
{
    if (pi.degree() != 2)
        throw ArgumentError("poisson_bracket: expected a bivector, got degree " + std::to_string(pi.degree()));
    if (pi.dim() != f.dim() || pi.dim() != g.dim())
        throw DimensionError("poisson_bracket: dimension mismatch");
    Polynomial out(pi.dim());
    for (const auto &[idx, c] : pi.components()) {
        const std::size_t i = idx[0], j = idx[1];
        out += c * (partial(f, i) * partial(g, j) - partial(f, j) * partial(g, i));
    }
    return out;
}

Polynomial apply_vector_field(const Polyvector &x, const Polynomial &f)
{
    if (x.degree() != 1)
        throw ArgumentError("apply_vector_field: expected a vector field");
    if (x.dim() != f.dim())
        throw DimensionError("apply_vector_field: dimension mismatch");
    Polynomial out(f.dim());
    for (const auto &[idx, c] : x.components())
        out += c * partial(f, idx[0]);
    return out;
}

Polyvector hamiltonian_vector_field(const Polyvector &pi, const Polynomial &f)
{
    return schouten_bracket(pi, Polyvector::function(f));
}

} // namespace dqi

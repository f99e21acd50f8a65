#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dqi/error.hpp"

namespace dqi {

// Formal series c_0 + hbar c_1 + ... + hbar^N c_N. Coefficients above the
// order are dropped silently.
template <typename P>
class TruncatedSeries {
public:
    TruncatedSeries(std::size_t order, const P &zero) : coeffs_(order + 1, zero) {}

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const P &operator[](std::size_t k) const { return coeffs_.at(k); }
    const std::vector<P> &coefficients() const noexcept { return coeffs_; }

    // Ignored beyond the truncation order.
    void set(std::size_t k, P value)
    {
        if (k < coeffs_.size())
            coeffs_[k] = std::move(value);
    }

    void add(std::size_t k, const P &value)
    {
        if (k < coeffs_.size())
            coeffs_[k] += value;
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<P> coeffs_;
};

// Cauchy product with a bilinear payload map:
// c_n = sum_{k+l=n} combiner(u_k, v_l), truncated at the common order.
template <typename P, typename Q, typename F>
auto series_combine(const TruncatedSeries<P> &u, const TruncatedSeries<Q> &v, F &&combiner)
{
    using R = decltype(combiner(u[0], v[0]));
    if (u.order() != v.order())
        throw DimensionError("series_combine: truncation orders differ");
    const std::size_t order = u.order();
    std::vector<R> coeffs;
    coeffs.reserve(order + 1);
    for (std::size_t n = 0; n <= order; ++n) {
        std::optional<R> acc;
        for (std::size_t k = 0; k <= n; ++k) {
            R term = combiner(u[k], v[n - k]);
            if (acc)
                *acc += term;
            else
                acc.emplace(std::move(term));
        }
        coeffs.push_back(std::move(*acc));
    }
    TruncatedSeries<R> out(order, coeffs.front());
    for (std::size_t n = 0; n <= order; ++n)
        out.set(n, std::move(coeffs[n]));
    return out;
}

} // namespace dqi

#pragma once

#include <cstddef>
#include <map>

#include "dqi/integrable_system.hpp"
#include "dqi/polynomial.hpp"
#include "dqi/polyvector.hpp"

namespace dqi {

// Element of A (x) wedge^k R^n: components w_I e_I over increasing k-tuples
// I of generator indices (0-based), coefficients polynomials on R^m.
class RelativeClass {
public:
    using Components = std::map<IndexTuple, Polynomial>;

    RelativeClass(std::size_t ambient_dim, std::size_t system_size, std::size_t degree);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t system_size() const noexcept { return system_size_; }
    std::size_t degree() const noexcept { return degree_; }
    const Components &components() const noexcept { return components_; }
    bool is_zero() const noexcept { return components_.empty(); }
    Polynomial component(const IndexTuple &indices) const;

    // Accumulates w * e_I for unsorted I (sign applied).
    void add(IndexTuple indices, const Polynomial &w);

    RelativeClass &operator+=(const RelativeClass &rhs);
    RelativeClass &operator-=(const RelativeClass &rhs);
    friend RelativeClass operator+(RelativeClass a, const RelativeClass &b) { return a += b; }
    friend RelativeClass operator-(RelativeClass a, const RelativeClass &b) { return a -= b; }

    friend bool operator==(const RelativeClass &a, const RelativeClass &b)
    {
        return a.ambient_dim_ == b.ambient_dim_ && a.system_size_ == b.system_size_ &&
               a.degree_ == b.degree_ && a.components_ == b.components_;
    }

private:
    std::size_t ambient_dim_;
    std::size_t system_size_;
    std::size_t degree_;
    Components components_;
};

// d_hor(w (x) v) = sum_i {f_i, w} (x) e_i ^ v.
RelativeClass d_hor(const IntegrableSystem &system, const RelativeClass &c);

} // namespace dqi

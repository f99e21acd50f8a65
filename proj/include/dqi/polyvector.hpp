#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dqi/polynomial.hpp"

namespace dqi {

// Strictly increasing tuple of basis indices (d_i or e_i).
using IndexTuple = std::vector<std::size_t>;

namespace detail {

// Sign and support of the exterior product e_I ^ e_J, or nullopt when the
// index sets overlap.
std::optional<std::pair<int, IndexTuple>> wedge_indices(const IndexTuple &a, const IndexTuple &b);

// Sign of e_I rearranged into increasing order; 0 when an index repeats.
int sort_with_sign(IndexTuple &idx);

} // namespace detail

// Skew-symmetric multivector field sum_I P^I d_I with polynomial
// coefficients; I runs over strictly increasing k-tuples of coordinates.
class Polyvector {
public:
    using Components = std::map<IndexTuple, Polynomial>;

    Polyvector(std::size_t dim, std::size_t degree);

    static Polyvector function(const Polynomial &f);
    // coefficient * d_{i1} ^ ... ^ d_{ik}; the indices may come in any order.
    static Polyvector basis(std::size_t dim, IndexTuple indices, const Polynomial &coefficient);
    static Polyvector basis(std::size_t dim, IndexTuple indices);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t degree() const noexcept { return degree_; }
    const Components &components() const noexcept { return components_; }
    bool is_zero() const noexcept { return components_.empty(); }
    Polynomial component(const IndexTuple &indices) const;

    // Accumulates coefficient * d_I for unsorted I (sign applied).
    void add(IndexTuple indices, const Polynomial &coefficient);

    Polyvector &operator+=(const Polyvector &rhs);
    Polyvector &operator-=(const Polyvector &rhs);
    friend Polyvector operator+(Polyvector a, const Polyvector &b) { return a += b; }
    friend Polyvector operator-(Polyvector a, const Polyvector &b) { return a -= b; }
    friend Polyvector operator*(const Polynomial &f, const Polyvector &v);
    friend Polyvector operator*(const Rational &c, const Polyvector &v);

    friend bool operator==(const Polyvector &a, const Polyvector &b)
    {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.components_ == b.components_;
    }

    // Bivector entry pi^{ij} for any ordered pair (antisymmetric extension).
    Polynomial bivector_entry(std::size_t i, std::size_t j) const;

private:
    std::size_t dim_;
    std::size_t degree_;
    Components components_;
};

Polyvector wedge(const Polyvector &p, const Polyvector &q);

// Schouten-Nijenhuis bracket of degree |P|+|Q|-1. Conventions: the Lie
// bracket on vector fields, [X, f] = X(f), and [X^Y, f] = X(f) Y - Y(f) X.
// In odd coordinates xi_i = d_i:
//   [P,Q] = sum_i dQ/dx_i ^ dP/dxi_i - (-1)^{(p-1)(q-1)} dP/dx_i ^ dQ/dxi_i
// with left xi-derivatives.
Polyvector schouten_bracket(const Polyvector &p, const Polyvector &q);

struct JacobiCheck {
    bool is_poisson;
    Polyvector witness; // [pi, pi]
};

// Throws ArgumentError unless pi is a bivector.
JacobiCheck jacobi_check(const Polyvector &pi);

// Poisson differential T -> [pi, T]. Throws PreconditionError unless pi is
// Poisson.
Polyvector d_pi(const Polyvector &pi, const Polyvector &t);

// {f, g} = sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g).
Polynomial poisson_bracket(const Polyvector &pi, const Polynomial &f, const Polynomial &g);

// X(f) for a vector field X.
Polynomial apply_vector_field(const Polyvector &x, const Polynomial &f);

// Hamiltonian vector field {f, .}, i.e. d_pi(f).
Polyvector hamiltonian_vector_field(const Polyvector &pi, const Polynomial &f);

} // namespace dqi

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "dqi/integrable_system.hpp"
#include "dqi/polynomial.hpp"
#include "dqi/polyvector.hpp"

namespace dqi {

// One derivative multi-index per argument slot.
using SlotIndices = std::vector<ExponentVector>;

// Polydifferential operator sum_a c_a(x) d^{a_1} (x) ... (x) d^{a_k}, i.e. a
// local Hochschild k-cochain on the polynomial algebra. Terms with the same
// slot indices are merged and zero coefficients pruned, so equality of
// operators is structural equality.
class PolyDiffOp {
public:
    using Terms = std::map<SlotIndices, Polynomial>;

    PolyDiffOp(std::size_t dim, std::size_t arity);

    // Arity-0 cochain (a function).
    static PolyDiffOp function(const Polynomial &f);
    // Commutative product m(a, b) = ab.
    static PolyDiffOp multiplication(std::size_t dim);
    static PolyDiffOp identity(std::size_t dim);
    // coefficient * d^alpha, arity 1.
    static PolyDiffOp derivative(const ExponentVector &alpha, const Polynomial &coefficient);
    static PolyDiffOp derivative(const ExponentVector &alpha);
    // coefficient * d^a (x) d^b, arity 2.
    static PolyDiffOp bidifferential(const ExponentVector &a, const ExponentVector &b,
                                     const Polynomial &coefficient);
    static PolyDiffOp bidifferential(const ExponentVector &a, const ExponentVector &b);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t arity() const noexcept { return arity_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    // Largest total derivative degree in any slot; 0 for the zero operator.
    unsigned order() const;
    // Largest coefficient degree; -1 for the zero operator.
    int coefficient_degree() const;

    void add_term(const SlotIndices &slots, const Polynomial &coefficient);

    PolyDiffOp &operator+=(const PolyDiffOp &rhs);
    PolyDiffOp &operator-=(const PolyDiffOp &rhs);
    PolyDiffOp &operator*=(const Rational &c);
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp &b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp &b) { return a -= b; }
    friend PolyDiffOp operator*(const Rational &c, PolyDiffOp a) { return a *= c; }
    friend PolyDiffOp operator-(PolyDiffOp a) { return a *= Rational(-1); }
    // Pointwise product of the coefficient with the operator value.
    friend PolyDiffOp operator*(const Polynomial &f, const PolyDiffOp &op);

    friend bool operator==(const PolyDiffOp &a, const PolyDiffOp &b)
    {
        return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    void check_shape(const PolyDiffOp &other) const;

    std::size_t dim_;
    std::size_t arity_;
    Terms terms_;
};

// Evaluates the operator on k polynomial arguments.
Polynomial apply_op(const PolyDiffOp &op, std::span<const Polynomial> args);

// Hochschild differential
//   (d phi)(f_1..f_{k+1}) = f_1 phi(f_2..) + sum_j (-1)^j phi(.., f_j f_{j+1}, ..)
//                           + (-1)^{k+1} phi(f_1..f_k) f_{k+1}.
PolyDiffOp hochschild_d(const PolyDiffOp &op);

// (phi u psi)(f_1..f_{i+j}) = (-1)^{ij} phi(f_1..f_i) psi(f_{i+1}..f_{i+j}).
PolyDiffOp cup(const PolyDiffOp &phi, const PolyDiffOp &psi);

// phi(f_1..f_{slot}, psi(...), ...): psi substituted into one argument slot
// (0-based), with derivatives distributed over psi's output by Leibniz.
PolyDiffOp insert_at(const PolyDiffOp &phi, std::size_t slot, const PolyDiffOp &psi);

// Gerstenhaber composition sum_{l=0}^{i-1} (-1)^{l(j-1)} phi(.., psi at slot l, ..).
// Throws ArgumentError when phi has arity 0.
PolyDiffOp gerst_circ(const PolyDiffOp &phi, const PolyDiffOp &psi);

// [phi, psi] = phi o psi - (-1)^{(i-1)(j-1)} psi o phi; a composition into an
// arity-0 cochain counts as zero.
PolyDiffOp gerst_bracket(const PolyDiffOp &phi, const PolyDiffOp &psi);

// hochschild_d(phi) = sign * [m, phi] for phi of the given arity.
int hochschild_bracket_sign(std::size_t arity);

// HKR map: X_1^..^X_k -> (1/k!) sum_sigma sgn(sigma) X_1(g_sigma(1))..X_k(g_sigma(k)).
PolyDiffOp hkr_to_cochain(const Polyvector &p);

// Monomials f^e in the generators with total degree <= max_degree, in the
// graded order of exponents_up_to.
std::vector<Polynomial> generator_monomials(const IntegrableSystem &system, unsigned max_degree);

struct RestrictedTable {
    unsigned slot_degree = 0;
    // Exponents (over the generators) of the arguments in each slot.
    std::vector<std::vector<ExponentVector>> arguments;
    std::vector<Polynomial> values;

    bool all_zero() const;
    // Index of the first nonzero value, or values.size().
    std::size_t first_nonzero() const;
};

// Values of op on every k-tuple of generator monomials of degree <= slot_degree.
RestrictedTable restricted_values(const PolyDiffOp &op, const IntegrableSystem &system,
                                  unsigned slot_degree);

// Whether op vanishes on C, decided on the table with slot degree order(op)+1.
bool vanishes_on_subalgebra(const PolyDiffOp &op, const IntegrableSystem &system);

} // namespace dqi

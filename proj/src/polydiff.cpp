#include "dqi/polydiff.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dqi/error.hpp"

namespace dqi {

PolyDiffOp::PolyDiffOp(std::size_t dim, std::size_t arity) : dim_(dim), arity_(arity) {}

PolyDiffOp PolyDiffOp::function(const Polynomial &f)
{
    PolyDiffOp op(f.dim(), 0);
    op.add_term({}, f);
    return op;
}

PolyDiffOp PolyDiffOp::multiplication(std::size_t dim)
{
    return bidifferential(zero_exponent(dim), zero_exponent(dim), Polynomial::constant(dim, 1));
}

PolyDiffOp PolyDiffOp::identity(std::size_t dim) { return derivative(zero_exponent(dim)); }

PolyDiffOp PolyDiffOp::derivative(const ExponentVector &alpha, const Polynomial &coefficient)
{
    PolyDiffOp op(alpha.size(), 1);
    op.add_term({alpha}, coefficient);
    return op;
}

PolyDiffOp PolyDiffOp::derivative(const ExponentVector &alpha)
{
    return derivative(alpha, Polynomial::constant(alpha.size(), 1));
}

PolyDiffOp PolyDiffOp::bidifferential(const ExponentVector &a, const ExponentVector &b,
                                      const Polynomial &coefficient)
{
    PolyDiffOp op(a.size(), 2);
    op.add_term({a, b}, coefficient);
    return op;
}

PolyDiffOp PolyDiffOp::bidifferential(const ExponentVector &a, const ExponentVector &b)
{
    return bidifferential(a, b, Polynomial::constant(a.size(), 1));
}

unsigned PolyDiffOp::order() const
{
    unsigned r = 0;
    for (const auto &[slots, c] : terms_)
        for (const auto &alpha : slots)
            r = std::max(r, total_degree(alpha));
    return r;
}

int PolyDiffOp::coefficient_degree() const
{
    int d = -1;
    for (const auto &[slots, c] : terms_)
        d = std::max(d, c.degree());
    return d;
}

void PolyDiffOp::add_term(const SlotIndices &slots, const Polynomial &coefficient)
{
    if (slots.size() != arity_)
        throw ArgumentError("operator term has " + std::to_string(slots.size()) + " slots, arity is " +
                            std::to_string(arity_));
    if (coefficient.dim() != dim_)
        throw DimensionError("operator coefficient has wrong dimension");
    for (const auto &alpha : slots)
        if (alpha.size() != dim_)
            throw DimensionError("derivative multi-index has wrong dimension");
    if (coefficient.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(slots, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void PolyDiffOp::check_shape(const PolyDiffOp &other) const
{
    if (dim_ != other.dim_)
        throw DimensionError("operator dimensions differ");
    if (arity_ != other.arity_)
        throw ArgumentError("operator arities differ (" + std::to_string(arity_) + " vs " +
                            std::to_string(other.arity_) + ")");
}

PolyDiffOp &PolyDiffOp::operator+=(const PolyDiffOp &rhs)
{
    check_shape(rhs);
    for (const auto &[slots, c] : rhs.terms_)
        add_term(slots, c);
    return *this;
}

PolyDiffOp &PolyDiffOp::operator-=(const PolyDiffOp &rhs)
{
    check_shape(rhs);
    for (const auto &[slots, c] : rhs.terms_)
        add_term(slots, -c);
    return *this;
}

PolyDiffOp &PolyDiffOp::operator*=(const Rational &c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[slots, coeff] : terms_)
        coeff *= c;
    return *this;
}

PolyDiffOp operator*(const Polynomial &f, const PolyDiffOp &op)
{
    PolyDiffOp out(op.dim_, op.arity_);
    for (const auto &[slots, c] : op.terms_)
        out.add_term(slots, f * c);
    return out;
}

Polynomial apply_op(const PolyDiffOp &op, std::span<const Polynomial> args)
{
    if (args.size() != op.arity())
        throw ArgumentError("apply: operator of arity " + std::to_string(op.arity()) + " given " +
                            std::to_string(args.size()) + " arguments");
    for (const auto &a : args)
        if (a.dim() != op.dim())
            throw DimensionError("apply: argument dimension mismatch");
    Polynomial out(op.dim());
    for (const auto &[slots, c] : op.terms()) {
        Polynomial t = c;
        for (std::size_t s = 0; s < slots.size() && !t.is_zero(); ++s)
            t = t * partial(args[s], slots[s]);
        out += t;
    }
    return out;
}

namespace {

// Calls visit(pieces, multinomial) for every way of writing `a` as an ordered
// sum of `parts` multi-indices.
void for_each_split(const ExponentVector &a, std::size_t parts,
                    const std::function<void(const std::vector<ExponentVector> &, const Rational &)> &visit)
{
    const std::size_t dim = a.size();
    std::vector<ExponentVector> pieces(parts, ExponentVector(dim, 0));
    std::function<void(std::size_t, std::size_t, std::uint32_t, Rational)> rec =
        [&](std::size_t coord, std::size_t part, std::uint32_t remaining, Rational weight) {
            if (coord == dim) {
                visit(pieces, weight);
                return;
            }
            if (part + 1 == parts) {
                pieces[part][coord] = remaining;
                rec(coord + 1, 0, coord + 1 < dim ? a[coord + 1] : 0, weight);
                pieces[part][coord] = 0;
                return;
            }
            for (std::uint32_t t = 0; t <= remaining; ++t) {
                pieces[part][coord] = t;
                rec(coord, part + 1, remaining - t, weight * binomial(remaining, t));
            }
            pieces[part][coord] = 0;
        };
    if (parts == 0)
        return;
    rec(0, 0, dim > 0 ? a[0] : 0, Rational(1));
}

ExponentVector add_exponents(const ExponentVector &a, const ExponentVector &b)
{
    ExponentVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

} // namespace

PolyDiffOp hochschild_d(const PolyDiffOp &op)
{
    const std::size_t k = op.arity();
    const std::size_t dim = op.dim();
    const ExponentVector zero = zero_exponent(dim);
    PolyDiffOp out(dim, k + 1);
    for (const auto &[slots, c] : op.terms()) {
        // f_1 phi(f_2, ..., f_{k+1})
        SlotIndices first{zero};
        first.insert(first.end(), slots.begin(), slots.end());
        out.add_term(first, c);

        // (-1)^j phi(.., f_j f_{j+1}, ..), expanded with the binomial Leibniz rule
        for (std::size_t j = 0; j < k; ++j) {
            const Polynomial signed_c = (j % 2 == 0) ? -c : c;
            for (const auto &beta : exponents_up_to(dim, total_degree(slots[j]))) {
                bool below = true;
                Rational weight = 1;
                ExponentVector rest(dim);
                for (std::size_t t = 0; t < dim; ++t) {
                    if (beta[t] > slots[j][t]) {
                        below = false;
                        break;
                    }
                    weight *= binomial(slots[j][t], beta[t]);
                    rest[t] = slots[j][t] - beta[t];
                }
                if (!below)
                    continue;
                SlotIndices mid(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(j));
                mid.push_back(beta);
                mid.push_back(rest);
                mid.insert(mid.end(), slots.begin() + static_cast<std::ptrdiff_t>(j) + 1, slots.end());
                out.add_term(mid, signed_c * weight);
            }
        }

        // (-1)^{k+1} phi(f_1..f_k) f_{k+1}
        SlotIndices last = slots;
        last.push_back(zero);
        out.add_term(last, (k % 2 == 0) ? -c : c);
    }
    return out;
}

PolyDiffOp cup(const PolyDiffOp &phi, const PolyDiffOp &psi)
{
    if (phi.dim() != psi.dim())
        throw DimensionError("cup: dimension mismatch");
    const bool negative = (phi.arity() * psi.arity()) % 2 == 1;
    PolyDiffOp out(phi.dim(), phi.arity() + psi.arity());
    for (const auto &[sa, ca] : phi.terms()) {
        for (const auto &[sb, cb] : psi.terms()) {
            SlotIndices slots = sa;
            slots.insert(slots.end(), sb.begin(), sb.end());
            Polynomial c = ca * cb;
            out.add_term(slots, negative ? -c : c);
        }
    }
    return out;
}

PolyDiffOp insert_at(const PolyDiffOp &phi, std::size_t slot, const PolyDiffOp &psi)
{
    if (phi.dim() != psi.dim())
        throw DimensionError("insert_at: dimension mismatch");
    if (slot >= phi.arity())
        throw ArgumentError("insert_at: slot " + std::to_string(slot) + " out of range for arity " +
                            std::to_string(phi.arity()));
    const std::size_t j = psi.arity();
    PolyDiffOp out(phi.dim(), phi.arity() + j - 1);
    for (const auto &[sa, ca] : phi.terms()) {
        const ExponentVector &alpha = sa[slot];
        for (const auto &[sb, cb] : psi.terms()) {
            // d^alpha (cb * prod_s d^{sb_s} g_s): piece 0 hits the coefficient
            for_each_split(alpha, j + 1, [&](const std::vector<ExponentVector> &pieces, const Rational &w) {
                Polynomial dc = partial(cb, pieces[0]);
                if (dc.is_zero())
                    return;
                SlotIndices slots(sa.begin(), sa.begin() + static_cast<std::ptrdiff_t>(slot));
                for (std::size_t s = 0; s < j; ++s)
                    slots.push_back(add_exponents(sb[s], pieces[s + 1]));
                slots.insert(slots.end(), sa.begin() + static_cast<std::ptrdiff_t>(slot) + 1, sa.end());
                out.add_term(slots, (ca * dc) * w);
            });
        }
    }
    return out;
}

PolyDiffOp gerst_circ(const PolyDiffOp &phi, const PolyDiffOp &psi)
{
    if (phi.arity() == 0)
        throw ArgumentError("gerst_circ: the outer cochain has arity 0");
    if (phi.dim() != psi.dim())
        throw DimensionError("gerst_circ: dimension mismatch");
    const std::size_t j = psi.arity();
    PolyDiffOp out(phi.dim(), phi.arity() + j - 1);
    for (std::size_t l = 0; l < phi.arity(); ++l) {
        PolyDiffOp part = insert_at(phi, l, psi);
        // (-1)^{l(j-1)}; j = 0 gives (-1)^l
        const bool negative = (l % 2 == 1) && (j % 2 == 0);
        if (negative)
            out -= part;
        else
            out += part;
    }
    return out;
}

PolyDiffOp gerst_bracket(const PolyDiffOp &phi, const PolyDiffOp &psi)
{
    if (phi.dim() != psi.dim())
        throw DimensionError("gerst_bracket: dimension mismatch");
    const std::size_t i = phi.arity(), j = psi.arity();
    if (i + j == 0)
        throw ArgumentError("gerst_bracket: both cochains have arity 0");
    PolyDiffOp out(phi.dim(), i + j - 1);
    if (i > 0)
        out += gerst_circ(phi, psi);
    if (j > 0) {
        const long e = (static_cast<long>(i) - 1) * (static_cast<long>(j) - 1);
        PolyDiffOp back = gerst_circ(psi, phi);
        if (e % 2 == 0)
            out -= back;
        else
            out += back;
    }
    return out;
}

int hochschild_bracket_sign(std::size_t arity) { return arity % 2 == 1 ? 1 : -1; }

PolyDiffOp hkr_to_cochain(const Polyvector &p)
{
    const std::size_t k = p.degree();
    const std::size_t dim = p.dim();
    PolyDiffOp out(dim, k);
    const Rational norm = Rational(1) / factorial(static_cast<unsigned>(k));
    std::vector<std::size_t> sigma(k);
    for (const auto &[idx, c] : p.components()) {
        std::iota(sigma.begin(), sigma.end(), std::size_t{0});
        do {
            IndexTuple perm(sigma.begin(), sigma.end());
            const int sign = detail::sort_with_sign(perm);
            // X_a = d_{idx[a]} acts on argument sigma(a)
            SlotIndices slots(k, zero_exponent(dim));
            for (std::size_t a = 0; a < k; ++a)
                slots[sigma[a]] = unit_exponent(dim, idx[a]);
            out.add_term(slots, c * (norm * sign));
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return out;
}

std::vector<Polynomial> generator_monomials(const IntegrableSystem &system, unsigned max_degree)
{
    std::vector<Polynomial> out;
    for (const auto &e : exponents_up_to(system.size(), max_degree)) {
        Polynomial m = Polynomial::constant(system.dim(), 1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                m = m * pow(system.generators[i], e[i]);
        out.push_back(std::move(m));
    }
    return out;
}

bool RestrictedTable::all_zero() const { return first_nonzero() == values.size(); }

std::size_t RestrictedTable::first_nonzero() const
{
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!values[i].is_zero())
            return i;
    return values.size();
}

RestrictedTable restricted_values(const PolyDiffOp &op, const IntegrableSystem &system, unsigned slot_degree)
{
    if (op.dim() != system.dim())
        throw DimensionError("restricted_values: dimension mismatch");
    const auto exps = exponents_up_to(system.size(), slot_degree);
    const auto monomials = generator_monomials(system, slot_degree);
    const std::size_t k = op.arity();
    RestrictedTable table;
    table.slot_degree = slot_degree;
    std::size_t total = 1;
    for (std::size_t s = 0; s < k; ++s)
        total *= monomials.size();
    std::vector<Polynomial> args(k, Polynomial(system.dim()));
    table.arguments.reserve(total);
    table.values.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<ExponentVector> arg_exps(k);
        std::size_t rem = flat;
        for (std::size_t s = k; s-- > 0;) {
            const std::size_t c = rem % monomials.size();
            rem /= monomials.size();
            args[s] = monomials[c];
            arg_exps[s] = exps[c];
        }
        table.arguments.push_back(std::move(arg_exps));
        table.values.push_back(apply_op(op, args));
    }
    return table;
}

bool vanishes_on_subalgebra(const PolyDiffOp &op, const IntegrableSystem &system)
{
    if (op.is_zero())
        return true;
    return restricted_values(op, system, op.order() + 1).all_zero();
}

} // namespace dqi

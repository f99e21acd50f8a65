#include "dqi/star.hpp"

#include <utility>

#include "dqi/error.hpp"
#include "dqi/linear_system.hpp"

namespace dqi {

StarProduct::StarProduct(std::size_t dim, std::vector<PolyDiffOp> terms, std::size_t certified_order)
    : dim_(dim), multiplication_(PolyDiffOp::multiplication(dim)), terms_(std::move(terms)),
      certified_order_(std::min(certified_order, terms_.size()))
{
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].arity() != 2)
            throw ArgumentError("star product term B_" + std::to_string(k + 1) + " is not bidifferential");
        if (terms_[k].dim() != dim_)
            throw DimensionError("star product term B_" + std::to_string(k + 1) + " has wrong dimension");
    }
}

StarProduct StarProduct::trivial(std::size_t dim, std::size_t order)
{
    return StarProduct(dim, std::vector<PolyDiffOp>(order, PolyDiffOp(dim, 2)), order);
}

const PolyDiffOp &StarProduct::term(std::size_t k) const
{
    if (k == 0)
        return multiplication_;
    if (k > terms_.size())
        throw ArgumentError("star product term B_" + std::to_string(k) + " beyond order " +
                            std::to_string(terms_.size()));
    return terms_[k - 1];
}

StarProduct StarProduct::with_term(std::size_t k, PolyDiffOp b) const
{
    if (k == 0 || k > terms_.size())
        throw ArgumentError("with_term: order out of range");
    std::vector<PolyDiffOp> terms = terms_;
    terms[k - 1] = std::move(b);
    // residuals R_n with n >= k depend on B_k
    return StarProduct(dim_, std::move(terms), std::min(certified_order_, k - 1));
}

StarProduct StarProduct::with_certificate(std::size_t n) const
{
    return StarProduct(dim_, terms_, n);
}

StarProduct StarProduct::truncated(std::size_t n) const
{
    if (n > terms_.size())
        throw ArgumentError("truncated: order beyond the star product's order");
    return StarProduct(dim_, std::vector<PolyDiffOp>(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(n)),
                       certified_order_);
}

FormalDiffeo::FormalDiffeo(std::size_t dim, std::vector<PolyDiffOp> terms)
    : dim_(dim), identity_(PolyDiffOp::identity(dim)), terms_(std::move(terms))
{
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].arity() != 1)
            throw ArgumentError("formal diffeomorphism term D_" + std::to_string(k + 1) + " is not unary");
        if (terms_[k].dim() != dim_)
            throw DimensionError("formal diffeomorphism term D_" + std::to_string(k + 1) + " has wrong dimension");
    }
}

FormalDiffeo FormalDiffeo::identity(std::size_t dim, std::size_t order)
{
    return FormalDiffeo(dim, std::vector<PolyDiffOp>(order, PolyDiffOp(dim, 1)));
}

const PolyDiffOp &FormalDiffeo::term(std::size_t k) const
{
    if (k == 0)
        return identity_;
    if (k > terms_.size())
        throw ArgumentError("diffeomorphism term D_" + std::to_string(k) + " beyond order " +
                            std::to_string(terms_.size()));
    return terms_[k - 1];
}

bool FormalDiffeo::is_identity() const
{
    for (const auto &t : terms_)
        if (!t.is_zero())
            return false;
    return true;
}

FormalDiffeo FormalDiffeo::with_term(std::size_t k, PolyDiffOp d) const
{
    if (k == 0 || k > terms_.size())
        throw ArgumentError("with_term: order out of range");
    std::vector<PolyDiffOp> terms = terms_;
    terms[k - 1] = std::move(d);
    return FormalDiffeo(dim_, std::move(terms));
}

StarProduct moyal(const Polyvector &pi, std::size_t order)
{
    if (pi.degree() != 2)
        throw ArgumentError("moyal: expected a bivector");
    const std::size_t dim = pi.dim();
    for (const auto &[idx, c] : pi.components())
        if (!c.is_constant())
            throw PreconditionError("moyal: the Moyal formula needs a constant Poisson bivector; component (" +
                                    std::to_string(idx[0]) + "," + std::to_string(idx[1]) + ") is not constant");

    // P = sum_{i,j} pi^{ij} d_i (x) d_j over all ordered pairs
    PolyDiffOp p(dim, 2);
    for (const auto &[idx, c] : pi.components()) {
        const Rational v = c.constant_term();
        p.add_term({unit_exponent(dim, idx[0]), unit_exponent(dim, idx[1])}, Polynomial::constant(dim, v));
        p.add_term({unit_exponent(dim, idx[1]), unit_exponent(dim, idx[0])}, Polynomial::constant(dim, -v));
    }

    std::vector<PolyDiffOp> terms;
    PolyDiffOp power = PolyDiffOp::multiplication(dim);
    for (std::size_t k = 1; k <= order; ++k) {
        // slotwise product of constant-coefficient operators
        PolyDiffOp next(dim, 2);
        for (const auto &[sa, ca] : power.terms()) {
            for (const auto &[sb, cb] : p.terms()) {
                SlotIndices slots(2, ExponentVector(dim));
                for (std::size_t s = 0; s < 2; ++s)
                    for (std::size_t i = 0; i < dim; ++i)
                        slots[s][i] = sa[s][i] + sb[s][i];
                next.add_term(slots, ca * cb);
            }
        }
        power = std::move(next);
        Rational norm = factorial(static_cast<unsigned>(k));
        norm *= Rational(mpz_class(1) << static_cast<unsigned long>(k));
        terms.push_back(power);
        terms.back() *= Rational(1) / norm;
    }
    // associative to all orders
    return StarProduct(dim, std::move(terms), order);
}

TruncatedSeries<Polynomial> star_eval(const StarProduct &s, const Polynomial &a, const Polynomial &b)
{
    if (a.dim() != s.dim() || b.dim() != s.dim())
        throw DimensionError("star_eval: dimension mismatch");
    TruncatedSeries<Polynomial> out(s.order(), Polynomial(s.dim()));
    const Polynomial args[] = {a, b};
    for (std::size_t k = 0; k <= s.order(); ++k)
        out.set(k, apply_op(s.term(k), args));
    return out;
}

TruncatedSeries<Polynomial> star_commutator(const StarProduct &s, const Polynomial &a, const Polynomial &b)
{
    auto ab = star_eval(s, a, b);
    auto ba = star_eval(s, b, a);
    TruncatedSeries<Polynomial> out(s.order(), Polynomial(s.dim()));
    for (std::size_t k = 0; k <= s.order(); ++k)
        out.set(k, ab[k] - ba[k]);
    return out;
}

PolyDiffOp assoc_residual(const StarProduct &s, std::size_t n)
{
    if (n == 0 || n > s.order())
        throw ArgumentError("assoc_residual: order " + std::to_string(n) + " outside 1.." +
                            std::to_string(s.order()));
    PolyDiffOp r(s.dim(), 3);
    for (std::size_t k = 0; k <= n; ++k)
        r += gerst_circ(s.term(k), s.term(n - k));
    return r;
}

StarProduct certify(const StarProduct &s)
{
    std::size_t n = 0;
    while (n < s.order() && assoc_residual(s, n + 1).is_zero())
        ++n;
    return s.with_certificate(n);
}

TruncatedSeries<Polynomial> apply_diffeo(const FormalDiffeo &d, const Polynomial &a)
{
    if (a.dim() != d.dim())
        throw DimensionError("apply_diffeo: dimension mismatch");
    TruncatedSeries<Polynomial> out(d.order(), Polynomial(d.dim()));
    const Polynomial args[] = {a};
    for (std::size_t k = 0; k <= d.order(); ++k)
        out.set(k, apply_op(d.term(k), args));
    return out;
}

FormalDiffeo compose(const FormalDiffeo &d, const FormalDiffeo &e)
{
    if (d.dim() != e.dim())
        throw DimensionError("compose: dimension mismatch");
    if (d.order() != e.order())
        throw DimensionError("compose: order mismatch");
    std::vector<PolyDiffOp> terms;
    for (std::size_t n = 1; n <= d.order(); ++n) {
        PolyDiffOp t(d.dim(), 1);
        for (std::size_t k = 0; k <= n; ++k)
            t += insert_at(d.term(k), 0, e.term(n - k));
        terms.push_back(std::move(t));
    }
    return FormalDiffeo(d.dim(), std::move(terms));
}

FormalDiffeo invert_diffeo(const FormalDiffeo &d)
{
    // D o E = id: E_n = -sum_{k=1..n} D_k o E_{n-k}
    std::vector<PolyDiffOp> inv;
    const PolyDiffOp id = PolyDiffOp::identity(d.dim());
    for (std::size_t n = 1; n <= d.order(); ++n) {
        PolyDiffOp t(d.dim(), 1);
        for (std::size_t k = 1; k <= n; ++k)
            t -= insert_at(d.term(k), 0, n == k ? id : inv[n - k - 1]);
        inv.push_back(std::move(t));
    }
    return FormalDiffeo(d.dim(), std::move(inv));
}

StarProduct gauge_transform(const StarProduct &s, const FormalDiffeo &d)
{
    if (s.dim() != d.dim())
        throw DimensionError("gauge_transform: dimension mismatch");
    if (s.order() != d.order())
        throw DimensionError("gauge_transform: order mismatch (" + std::to_string(s.order()) + " vs " +
                             std::to_string(d.order()) + ")");
    const std::size_t order = s.order();
    const FormalDiffeo inv = invert_diffeo(d);

    // inner[t] = sum_{k+p+q=t} B_k(D_p ., D_q .)
    std::vector<PolyDiffOp> inner;
    for (std::size_t t = 0; t <= order; ++t) {
        PolyDiffOp acc(s.dim(), 2);
        for (std::size_t k = 0; k <= t; ++k) {
            for (std::size_t p = 0; p + k <= t; ++p) {
                const std::size_t q = t - k - p;
                PolyDiffOp op = s.term(k);
                if (q > 0)
                    op = insert_at(op, 1, d.term(q));
                if (p > 0)
                    op = insert_at(op, 0, d.term(p));
                acc += op;
            }
        }
        inner.push_back(std::move(acc));
    }

    std::vector<PolyDiffOp> terms;
    for (std::size_t n = 1; n <= order; ++n) {
        PolyDiffOp b = inner[n];
        for (std::size_t r = 1; r <= n; ++r)
            b += insert_at(inv.term(r), 0, inner[n - r]);
        terms.push_back(std::move(b));
    }
    return StarProduct(s.dim(), std::move(terms), s.certified_order());
}

namespace {

using ResidualRow = std::pair<SlotIndices, ExponentVector>;

} // namespace

ExtensionResult extend_one_order(const StarProduct &s, std::size_t n, const ExtensionBounds &bounds,
                                 bool want_freedom)
{
    if (n > s.order())
        throw ArgumentError("extend_one_order: order " + std::to_string(n) + " beyond the star product");
    if (s.certified_order() < n)
        throw PreconditionError("extend_one_order: star product is certified only to order " +
                                std::to_string(s.certified_order()) + ", need " + std::to_string(n));
    const std::size_t dim = s.dim();
    const StarProduct base = s.truncated(n);

    ExtensionResult result;
    result.order = n + 1;
    result.bounds = bounds;
    result.target = PolyDiffOp(dim, 3);
    for (std::size_t k = 1; k <= n; ++k)
        result.target += gerst_circ(base.term(k), base.term(n + 1 - k));

    const auto coeff_monomials = exponents_up_to(dim, bounds.coefficient_degree);
    const auto derivs = exponents_up_to(dim, bounds.operator_order, 1);
    std::vector<std::pair<SlotIndices, ExponentVector>> basis;
    for (const auto &a : derivs)
        for (const auto &b : derivs)
            for (const auto &e : coeff_monomials)
                basis.push_back({SlotIndices{a, b}, e});
    result.unknowns = basis.size();

    SparseSystemBuilder<ResidualRow> system(basis.size());
    for (std::size_t u = 0; u < basis.size(); ++u) {
        PolyDiffOp op(dim, 2);
        op.add_term(basis[u].first, Polynomial::monomial(basis[u].second));
        const PolyDiffOp image = hochschild_d(op);
        for (const auto &[slots, c] : image.terms())
            for (const auto &[e, v] : c.terms())
                system.add(u, {slots, e}, v);
    }
    for (const auto &[slots, c] : result.target.terms())
        for (const auto &[e, v] : c.terms())
            system.add_rhs({slots, e}, v);

    const LinearSolution sol = solve_linear(system, want_freedom);
    result.rank = sol.rank;
    result.augmented_rank = sol.augmented_rank;

    auto to_operator = [&](const std::vector<Rational> &x) {
        PolyDiffOp op(dim, 2);
        for (std::size_t u = 0; u < x.size(); ++u)
            if (x[u] != 0)
                op.add_term(basis[u].first, Polynomial::monomial(basis[u].second, x[u]));
        return op;
    };
    for (const auto &v : sol.nullspace)
        result.freedom.push_back(to_operator(v));
    if (!sol.feasible)
        return result;

    PolyDiffOp candidate = to_operator(sol.solution);
    std::vector<PolyDiffOp> terms = base.terms();
    terms.push_back(candidate);
    StarProduct extended(dim, std::move(terms), n);
    if (!assoc_residual(extended, n + 1).is_zero())
        throw CheckFailure("extend_one_order: solution failed the residual post-check");
    result.particular = std::move(candidate);
    result.status = ExtensionResult::Status::Found;
    return result;
}

} // namespace dqi

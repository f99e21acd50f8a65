#include "dqi/obstruction.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "dqi/error.hpp"
#include "dqi/linear_system.hpp"

namespace dqi {

namespace {

// Leibniz expansion; fine for the handful of generators an integrable system has.
Polynomial determinant(const std::vector<std::vector<Polynomial>> &m, std::size_t dim)
{
    const std::size_t n = m.size();
    Polynomial det(dim);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        IndexTuple p(perm.begin(), perm.end());
        const int sign = detail::sort_with_sign(p);
        Polynomial t = Polynomial::constant(dim, sign);
        for (std::size_t r = 0; r < n && !t.is_zero(); ++r)
            t = t * m[r][perm[r]];
        det += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> a)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t t = c; t < cols; ++t)
                a[r][t] -= f * a[rank][t];
        }
        ++rank;
    }
    return rank;
}

void choose_columns(std::size_t m, std::size_t n, std::size_t start, IndexTuple &cur,
                    const std::function<bool(const IndexTuple &)> &visit, bool &stop)
{
    if (stop)
        return;
    if (cur.size() == n) {
        stop = visit(cur);
        return;
    }
    for (std::size_t c = start; c < m && !stop; ++c) {
        cur.push_back(c);
        choose_columns(m, n, c + 1, cur, visit, stop);
        cur.pop_back();
    }
}

void require_certificate(const StarProduct &s, std::size_t n, const char *who)
{
    if (n == 0 || n > s.order())
        throw ArgumentError(std::string(who) + ": order " + std::to_string(n) + " outside 1.." +
                            std::to_string(s.order()));
    if (s.certified_order() < n)
        throw PreconditionError(std::string(who) + ": star product is certified associative only to order " +
                                std::to_string(s.certified_order()) + ", need " + std::to_string(n));
}

bool is_coordinate_system(const IntegrableSystem &system, std::vector<std::size_t> &coords)
{
    coords.clear();
    for (const auto &f : system.generators) {
        if (f.terms().size() != 1)
            return false;
        const auto &[e, c] = *f.terms().begin();
        if (c != 1 || total_degree(e) != 1)
            return false;
        const auto i = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin());
        if (std::find(coords.begin(), coords.end(), i) != coords.end())
            return false;
        coords.push_back(i);
    }
    return true;
}

bool all_casimirs(const IntegrableSystem &system)
{
    for (const auto &f : system.generators)
        if (!hamiltonian_vector_field(system.pi, f).is_zero())
            return false;
    return true;
}

} // namespace

ValidationReport validate_system(const IntegrableSystem &system, std::uint64_t seed)
{
    ValidationReport report;
    report.seed = seed;
    const std::size_t m = system.dim();
    const std::size_t n = system.size();
    for (const auto &f : system.generators)
        if (f.dim() != m)
            throw DimensionError("validate_system: generator dimension mismatch");

    auto jac = jacobi_check(system.pi);
    report.poisson = jac.is_poisson;
    report.jacobiator = std::move(jac.witness);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial b = poisson_bracket(system.pi, system.generators[i], system.generators[j]);
            if (!b.is_zero())
                report.nonzero_brackets.push_back({i, j, std::move(b)});
        }

    std::vector<std::vector<Polynomial>> jacobian(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < m; ++k)
            jacobian[j].push_back(partial(system.generators[j], k));

    if (n == 0) {
        report.independent = true;
    } else if (n <= m) {
        IndexTuple cur;
        bool stop = false;
        choose_columns(m, n, 0, cur,
                       [&](const IndexTuple &cols) {
                           std::vector<std::vector<Polynomial>> minor(n);
                           for (std::size_t r = 0; r < n; ++r)
                               for (std::size_t c : cols)
                                   minor[r].push_back(jacobian[r][c]);
                           Polynomial det = determinant(minor, m);
                           if (det.is_zero())
                               return false;
                           report.independent = true;
                           report.nonzero_minor_columns = cols;
                           report.nonzero_minor = std::move(det);
                           return true;
                       },
                       stop);
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
    report.random_points = 3;
    for (std::size_t t = 0; t < report.random_points; ++t) {
        std::vector<Rational> point;
        for (std::size_t k = 0; k < m; ++k)
            point.push_back(make_rational(num(rng), den(rng)));
        std::vector<std::vector<Rational>> values(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                values[j].push_back(jacobian[j][k].evaluate(point));
        report.random_point_rank = std::max(report.random_point_rank, rational_rank(std::move(values)));
    }
    return report;
}

RelativeClass commutator_class(const StarProduct &s, const IntegrableSystem &system, std::size_t n)
{
    if (s.dim() != system.dim())
        throw DimensionError("commutator_class: dimension mismatch");
    const PolyDiffOp &b = s.term(n);
    RelativeClass chi(system.dim(), system.size(), 2);
    for (std::size_t i = 0; i < system.size(); ++i)
        for (std::size_t j = i + 1; j < system.size(); ++j) {
            const Polynomial ij[] = {system.generators[i], system.generators[j]};
            const Polynomial ji[] = {system.generators[j], system.generators[i]};
            chi.add({i, j}, apply_op(b, ij) - apply_op(b, ji));
        }
    return chi;
}

RelativeClass obstruction_class(const StarProduct &s, const IntegrableSystem &system, std::size_t n)
{
    require_certificate(s, n, "obstruction_class");
    for (std::size_t k = 1; k < n; ++k)
        if (!vanishes_on_subalgebra(s.term(k), system))
            throw PreconditionError("obstruction_class: B_" + std::to_string(k) +
                                    " does not vanish on the subalgebra (order " + std::to_string(n) +
                                    " requested)");
    return commutator_class(s, system, n);
}

CascadeReport cocycle_cascade_check(const StarProduct &s, const IntegrableSystem &system, std::size_t n)
{
    const RelativeClass chi = obstruction_class(s, system, n);
    CascadeReport report;
    const PolyDiffOp db = hochschild_d(s.term(n));
    report.slot_degree = db.order() + 1;
    if (db.is_zero()) {
        report.hochschild_closed = true;
    } else {
        const RestrictedTable table = restricted_values(db, system, report.slot_degree);
        const std::size_t bad = table.first_nonzero();
        report.hochschild_closed = bad == table.values.size();
        if (!report.hochschild_closed) {
            report.violating_triple = table.arguments[bad];
            report.violating_value = table.values[bad];
        }
    }
    report.d_hor_value = d_hor(system, chi);
    report.relative_closed = report.d_hor_value.is_zero();
    return report;
}

ExactnessResult exactness_solve(const IntegrableSystem &system, const RelativeClass &c, unsigned degree_bound)
{
    if (c.degree() != 2 || c.system_size() != system.size())
        throw ArgumentError("exactness_solve: expected a degree-2 class over the system's generators");
    if (!d_hor(system, c).is_zero())
        throw PreconditionError("exactness_solve: class is not d_hor-closed");
    const std::size_t m = system.dim();
    const std::size_t n = system.size();

    ExactnessResult result;
    result.degree_bound = degree_bound;
    if (c.is_zero()) {
        result.status = ExactnessResult::Status::Solved;
        result.solution = RelativeClass(m, n, 1);
        return result;
    }
    if (all_casimirs(system)) {
        result.status = ExactnessResult::Status::ZeroImage;
        return result;
    }

    const auto monomials = exponents_up_to(m, degree_bound);
    using Row = std::pair<IndexTuple, ExponentVector>;
    SparseSystemBuilder<Row> builder(n * monomials.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < monomials.size(); ++t) {
            RelativeClass basis(m, n, 1);
            basis.add({i}, Polynomial::monomial(monomials[t]));
            const RelativeClass image = d_hor(system, basis);
            for (const auto &[idx, w] : image.components())
                for (const auto &[e, v] : w.terms())
                    builder.add(i * monomials.size() + t, {idx, e}, v);
        }
    for (const auto &[idx, w] : c.components())
        for (const auto &[e, v] : w.terms())
            builder.add_rhs({idx, e}, v);

    const LinearSolution sol = solve_linear(builder, false);
    result.unknowns = builder.unknowns();
    result.rank = sol.rank;
    result.augmented_rank = sol.augmented_rank;
    if (!sol.feasible) {
        result.status = ExactnessResult::Status::InfeasibleAtBound;
        return result;
    }
    RelativeClass y(m, n, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < monomials.size(); ++t) {
            const Rational &v = sol.solution[i * monomials.size() + t];
            if (v != 0)
                y.add({i}, Polynomial::monomial(monomials[t], v));
        }
    if (!(d_hor(system, y) == c))
        throw CheckFailure("exactness_solve: solution failed the d_hor(Y) = c post-check");
    result.status = ExactnessResult::Status::Solved;
    result.solution = std::move(y);
    return result;
}

std::optional<Polyvector> lift_to_vector_field(const IntegrableSystem &system, const RelativeClass &y,
                                               unsigned degree_bound)
{
    if (y.degree() != 1 || y.system_size() != system.size())
        throw ArgumentError("lift_to_vector_field: expected a degree-1 class over the system's generators");
    const std::size_t m = system.dim();
    const std::size_t n = system.size();

    std::vector<std::size_t> coords;
    if (is_coordinate_system(system, coords)) {
        Polyvector x(m, 1);
        for (std::size_t j = 0; j < n; ++j)
            x.add({coords[j]}, y.component({j}));
        return x;
    }

    // sum_k X^k d_k f_j = Y_j over X^k of degree <= bound
    const auto monomials = exponents_up_to(m, degree_bound);
    using Row = std::pair<std::size_t, ExponentVector>;
    SparseSystemBuilder<Row> builder(m * monomials.size());
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < monomials.size(); ++t) {
            const Polynomial mono = Polynomial::monomial(monomials[t]);
            for (std::size_t j = 0; j < n; ++j) {
                const Polynomial image = mono * partial(system.generators[j], k);
                for (const auto &[e, v] : image.terms())
                    builder.add(k * monomials.size() + t, {j, e}, v);
            }
        }
    for (std::size_t j = 0; j < n; ++j) {
        const Polynomial yj = y.component({j});
        for (const auto &[e, v] : yj.terms())
            builder.add_rhs({j, e}, v);
    }
    const LinearSolution sol = solve_linear(builder, false);
    if (!sol.feasible)
        return std::nullopt;
    Polyvector x(m, 1);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t t = 0; t < monomials.size(); ++t) {
            const Rational &v = sol.solution[k * monomials.size() + t];
            if (v != 0)
                x.add({k}, Polynomial::monomial(monomials[t], v));
        }
    return x;
}

namespace {

PolyDiffOp vector_field_operator(const Polyvector &x)
{
    PolyDiffOp op(x.dim(), 1);
    for (const auto &[idx, c] : x.components())
        op.add_term({unit_exponent(x.dim(), idx[0])}, c);
    return op;
}

} // namespace

GaugeStepResult gauge_step(const StarProduct &s, const IntegrableSystem &system, std::size_t n,
                           const RelativeClass &y, const SolverBounds &bounds)
{
    require_certificate(s, n, "gauge_step");
    const std::size_t m = system.dim();
    GaugeStepResult result;
    FormalDiffeo partial_gauge = FormalDiffeo::identity(m, s.order());

    if (n == 1) {
        if (!y.is_zero())
            throw ArgumentError("gauge_step: order 1 admits no vector-field term");
    } else {
        auto lift = lift_to_vector_field(system, y, bounds.degree);
        if (!lift)
            return result;
        result.lift = *lift;
        partial_gauge = partial_gauge.with_term(n - 1, -vector_field_operator(*lift));
    }
    const StarProduct mid = gauge_transform(s, partial_gauge);

    // d D_n = -B^mid_n on C, over D_n = sum c x^e d^a, 1 <= |a| <= order
    const PolyDiffOp target = -mid.term(n);
    const auto coeffs = exponents_up_to(m, bounds.degree);
    const auto derivs = exponents_up_to(m, bounds.operator_order, 1);
    std::vector<PolyDiffOp> basis;
    for (const auto &a : derivs)
        for (const auto &e : coeffs)
            basis.push_back(PolyDiffOp::derivative(a, Polynomial::monomial(e)));
    const unsigned slot_degree = std::max(target.order(), bounds.operator_order) + 1;
    result.table_slot_degree = slot_degree;
    result.unknowns = basis.size();

    const auto monomials = generator_monomials(system, slot_degree);
    std::vector<std::vector<Polynomial>> products(monomials.size());
    for (std::size_t a = 0; a < monomials.size(); ++a)
        for (std::size_t b = 0; b < monomials.size(); ++b)
            products[a].push_back(monomials[a] * monomials[b]);

    using Row = std::pair<std::size_t, ExponentVector>;
    SparseSystemBuilder<Row> builder(basis.size());
    for (std::size_t u = 0; u < basis.size(); ++u) {
        std::vector<Polynomial> image;
        for (const auto &mono : monomials) {
            const Polynomial args[] = {mono};
            image.push_back(apply_op(basis[u], args));
        }
        for (std::size_t a = 0; a < monomials.size(); ++a)
            for (std::size_t b = 0; b < monomials.size(); ++b) {
                const Polynomial args[] = {products[a][b]};
                // (dD)(u,v) = u D(v) - D(uv) + D(u) v
                Polynomial value = monomials[a] * image[b] - apply_op(basis[u], args) + image[a] * monomials[b];
                for (const auto &[e, v] : value.terms())
                    builder.add(u, {a * monomials.size() + b, e}, v);
            }
    }
    for (std::size_t a = 0; a < monomials.size(); ++a)
        for (std::size_t b = 0; b < monomials.size(); ++b) {
            const Polynomial args[] = {monomials[a], monomials[b]};
            const Polynomial value = apply_op(target, args);
            for (const auto &[e, v] : value.terms())
                builder.add_rhs({a * monomials.size() + b, e}, v);
        }

    const LinearSolution sol = solve_linear(builder, false);
    result.rank = sol.rank;
    result.augmented_rank = sol.augmented_rank;
    if (!sol.feasible) {
        result.status = GaugeStepResult::Status::CorrectionInfeasible;
        return result;
    }
    PolyDiffOp dn(m, 1);
    for (std::size_t u = 0; u < basis.size(); ++u)
        if (sol.solution[u] != 0)
            dn += sol.solution[u] * basis[u];

    result.increment = partial_gauge.with_term(n, partial_gauge.term(n) + dn);
    const StarProduct after = gauge_transform(s, result.increment);
    for (std::size_t k = 1; k <= n; ++k) {
        if (!vanishes_on_subalgebra(after.term(k), system)) {
            result.status = GaugeStepResult::Status::PostCheckFailed;
            return result;
        }
    }
    result.status = GaugeStepResult::Status::Ok;
    return result;
}

std::string to_string(EliminationStatus status)
{
    switch (status) {
    case EliminationStatus::Trivialized:
        return "TRIVIALIZED";
    case EliminationStatus::Obstructed:
        return "OBSTRUCTED";
    case EliminationStatus::Undecided:
        return "UNDECIDED";
    }
    return "UNDECIDED";
}

std::string to_string(ExactnessResult::Status status)
{
    switch (status) {
    case ExactnessResult::Status::Solved:
        return "solved";
    case ExactnessResult::Status::InfeasibleAtBound:
        return "infeasible-at-bound";
    case ExactnessResult::Status::ZeroImage:
        return "zero-image";
    }
    return "infeasible-at-bound";
}

std::string to_string(GaugeStepResult::Status status)
{
    switch (status) {
    case GaugeStepResult::Status::Ok:
        return "ok";
    case GaugeStepResult::Status::LiftInfeasible:
        return "lift-infeasible";
    case GaugeStepResult::Status::CorrectionInfeasible:
        return "correction-infeasible";
    case GaugeStepResult::Status::PostCheckFailed:
        return "post-check-failed";
    }
    return "post-check-failed";
}

ObstructionReport eliminate_to_order(const StarProduct &s, const IntegrableSystem &system, std::size_t order,
                                     const SolverBounds &bounds)
{
    if (order == 0 || order > s.order())
        throw ArgumentError("eliminate_to_order: order " + std::to_string(order) + " outside 1.." +
                            std::to_string(s.order()));
    if (s.certified_order() < order)
        throw PreconditionError("eliminate_to_order: star product is certified associative only to order " +
                                std::to_string(s.certified_order()) + ", need " + std::to_string(order));
    const ValidationReport validation = validate_system(system);
    if (!validation.valid())
        throw PreconditionError("eliminate_to_order: integrable system failed validation");

    const StarProduct start = s.truncated(order);
    const std::size_t m = system.dim();
    const std::size_t gens = system.size();

    ObstructionReport report;
    report.bounds = bounds;
    report.gauge = FormalDiffeo::identity(m, order);
    report.transformed = start;
    StarProduct &current = report.transformed;
    bool stopped = false;

    for (std::size_t n = 1; n <= order && !stopped; ++n) {
        OrderRecord rec;
        rec.order = n;
        rec.chi = RelativeClass(m, gens, 2);
        if (vanishes_on_subalgebra(current.term(n), system)) {
            rec.already_vanishing = true;
            report.orders.push_back(std::move(rec));
            report.order_reached = n;
            continue;
        }
        rec.chi = obstruction_class(current, system, n);
        rec.cascade = cocycle_cascade_check(current, system, n);
        if (!rec.cascade->closed())
            throw CheckFailure("eliminate_to_order: obstruction class at order " + std::to_string(n) +
                               " is not closed");

        RelativeClass y(m, gens, 1);
        if (!rec.chi.is_zero()) {
            if (n == 1) {
                // d D_1 is symmetric; the antisymmetric part of B_1 on C cannot change
                ExactnessResult ex;
                ex.status = ExactnessResult::Status::ZeroImage;
                rec.exactness = ex;
                rec.note = "order-1 antisymmetric part is gauge invariant";
                report.status = EliminationStatus::Obstructed;
                report.orders.push_back(std::move(rec));
                stopped = true;
                break;
            }
            rec.exactness = exactness_solve(system, rec.chi, bounds.degree);
            switch (rec.exactness->status) {
            case ExactnessResult::Status::ZeroImage:
                rec.note = "every generator is a Casimir: d_hor vanishes identically, class is not exact";
                report.status = EliminationStatus::Obstructed;
                stopped = true;
                break;
            case ExactnessResult::Status::InfeasibleAtBound:
                rec.note = "no primitive within the degree bound";
                report.status = EliminationStatus::Undecided;
                stopped = true;
                break;
            case ExactnessResult::Status::Solved:
                y = *rec.exactness->solution;
                break;
            }
            if (stopped) {
                report.orders.push_back(std::move(rec));
                break;
            }
        }

        rec.step = gauge_step(current, system, n, y, bounds);
        if (rec.step->status != GaugeStepResult::Status::Ok) {
            rec.note = "gauge step failed within bounds";
            report.status = EliminationStatus::Undecided;
            report.orders.push_back(std::move(rec));
            stopped = true;
            break;
        }
        current = gauge_transform(current, rec.step->increment);
        report.gauge = compose(report.gauge, rec.step->increment);
        report.orders.push_back(std::move(rec));
        report.order_reached = n;
    }

    if (!(gauge_transform(start, report.gauge) == current))
        throw CheckFailure("eliminate_to_order: accumulated gauge does not reproduce the transformed star");

    report.audit_passed = true;
    for (std::size_t k = 1; k <= order; ++k) {
        const PolyDiffOp &b = current.term(k);
        if (!restricted_values(b, system, b.order() + 1).all_zero()) {
            report.audit_passed = false;
            break;
        }
    }
    if (!stopped)
        report.status = report.audit_passed ? EliminationStatus::Trivialized : EliminationStatus::Undecided;
    return report;
}

} // namespace dqi

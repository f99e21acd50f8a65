#include <doctest.h>

#include <string>
#include <vector>

#include "dqi/error.hpp"
#include "dqi/linear_system.hpp"
#include "dqi/star.hpp"
#include "generators.hpp"

using namespace dqi;
using namespace dqi::testing;

namespace {

const std::vector<std::string> xp{"x", "p"};
const std::vector<std::string> x1{"x"};
const std::vector<std::string> r4{"x1", "x2", "p1", "p2"};

Polynomial P(const std::string &text, const std::vector<std::string> &names = xp)
{
    return parse_polynomial(text, names);
}

TruncatedSeries<Polynomial> series(std::size_t dim, std::vector<Polynomial> coeffs)
{
    TruncatedSeries<Polynomial> s(coeffs.size() - 1, Polynomial(dim));
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        s.set(k, coeffs[k]);
    return s;
}

// Whether target lies in the span of the given operators (exact solve).
bool in_span(const std::vector<PolyDiffOp> &ops, const PolyDiffOp &target)
{
    using Row = std::pair<SlotIndices, ExponentVector>;
    SparseSystemBuilder<Row> b(ops.size());
    for (std::size_t u = 0; u < ops.size(); ++u)
        for (const auto &[slots, c] : ops[u].terms())
            for (const auto &[e, v] : c.terms())
                b.add(u, {slots, e}, v);
    for (const auto &[slots, c] : target.terms())
        for (const auto &[e, v] : c.terms())
            b.add_rhs({slots, e}, v);
    return solve_linear(b, false).feasible;
}

} // namespace

TEST_CASE("moyal examples")
{
    const StarProduct s = moyal(canonical_pi(1), 2);
    CHECK(s.certified_order() == 2);
    CHECK(star_eval(s, P("x"), P("p")) == series(2, {P("x*p"), P("1/2"), P("0")}));
    CHECK(star_eval(s, P("p"), P("x")) == series(2, {P("x*p"), P("-1/2"), P("0")}));
    const Polynomial h = P("(x^2+p^2)/2");
    CHECK(star_eval(s, h, h) == series(2, {h * h, P("0"), P("1/4")}));
    const Polynomial f = P("x^3*p - 2*p^2");
    CHECK(star_eval(s, f, P("1")) == series(2, {f, P("0"), P("0")}));

    CHECK_THROWS_AS(moyal(Polyvector::basis(2, {0, 1}, P("x")), 2), PreconditionError);
}

TEST_CASE("moyal B_1 is half the hkr image of pi")
{
    const Polyvector pi = canonical_pi(2);
    CHECK(moyal(pi, 1).term(1) == hkr_to_cochain(pi));
}

TEST_CASE("star_eval examples")
{
    const StarProduct triv = StarProduct::trivial(2, 3);
    CHECK(star_eval(triv, P("x+p"), P("x")) == series(2, {P("x^2 + x*p"), P("0"), P("0"), P("0")}));
    CHECK(star_eval(moyal(canonical_pi(1), 1), P("x"), P("p")) == series(2, {P("x*p"), P("1/2")}));
    const StarProduct s4 = moyal(canonical_pi(2), 3);
    CHECK(star_eval(s4, P("p1^2", r4), P("p2^3", r4)) ==
          series(4, {P("p1^2*p2^3", r4), P("0", r4), P("0", r4), P("0", r4)}));
}

TEST_CASE("associativity residual examples")
{
    const StarProduct s = moyal(canonical_pi(1), 3);
    for (std::size_t n = 1; n <= 3; ++n) {
        CHECK(assoc_residual(s, n).is_zero());
        const Polynomial args[] = {P("x^2"), P("x*p"), P("p^2")};
        CHECK(apply_op(assoc_residual(s, n), args).is_zero());
    }

    const StarProduct bad(1, {PolyDiffOp::bidifferential(ex({1}), ex({1})), PolyDiffOp(1, 2)});
    CHECK(assoc_residual(bad, 1).is_zero());
    const Polynomial args[] = {P("x", x1), P("x^2", x1), P("x^3", x1)};
    CHECK(apply_op(assoc_residual(bad, 2), args) == P("-12*x^2", x1));
    CHECK(certify(bad).certified_order() == 1);

    const StarProduct triv = StarProduct::trivial(2, 2);
    CHECK(assoc_residual(triv, 2).is_zero());
    CHECK_THROWS_AS(assoc_residual(triv, 3), ArgumentError);
}

TEST_CASE("star commutator examples")
{
    const StarProduct s = moyal(canonical_pi(1), 3);
    CHECK(star_commutator(s, P("x"), P("p")) == series(2, {P("0"), P("1"), P("0"), P("0")}));
    const Polynomial h = P("(x^2+p^2)/2");
    const auto hh = star_commutator(s, h, h);
    for (const auto &c : hh.coefficients())
        CHECK(c.is_zero());
    const StarProduct s4 = moyal(canonical_pi(2), 3);
    const auto pp = star_commutator(s4, P("p1^2", r4), P("p2^3", r4));
    for (const auto &c : pp.coefficients())
        CHECK(c.is_zero());
}

TEST_CASE("formal diffeomorphism inversion examples")
{
    const PolyDiffOp d1 = PolyDiffOp::derivative(ex({1, 0}), P("p"));
    const PolyDiffOp d2 = PolyDiffOp::derivative(ex({0, 2}));
    const FormalDiffeo geometric(2, {d1, PolyDiffOp(2, 1), PolyDiffOp(2, 1)});
    const FormalDiffeo inv = invert_diffeo(geometric);
    const PolyDiffOp d1sq = gerst_circ(d1, d1);
    CHECK(inv.term(1) == -d1);
    CHECK(inv.term(2) == d1sq);
    CHECK(inv.term(3) == -gerst_circ(d1, d1sq));

    const FormalDiffeo two(2, {d1, d2});
    CHECK(invert_diffeo(two).term(2) == d1sq - d2);
    CHECK(compose(two, invert_diffeo(two)).is_identity());
    CHECK(compose(invert_diffeo(two), two).is_identity());
    CHECK(invert_diffeo(FormalDiffeo::identity(2, 3)).is_identity());
}

TEST_CASE("gauge transform examples")
{
    const StarProduct triv = StarProduct::trivial(1, 2);
    const FormalDiffeo half(1, {make_rational(1, 2) * PolyDiffOp::derivative(ex({2})), PolyDiffOp(1, 1)});
    const StarProduct g1 = gauge_transform(triv, half);
    CHECK(g1.term(1) == -PolyDiffOp::bidifferential(ex({1}), ex({1})));
    CHECK(star_eval(g1, P("x", x1), P("x", x1))[1] == P("-1", x1));

    const FormalDiffeo shift(1, {PolyDiffOp::derivative(ex({1})), PolyDiffOp(1, 1)});
    const StarProduct g2 = gauge_transform(triv, shift);
    CHECK(g2.term(1).is_zero());
    CHECK(g2.term(2) == PolyDiffOp::bidifferential(ex({1}), ex({1})));

    const StarProduct s = moyal(canonical_pi(1), 3);
    CHECK(gauge_transform(s, FormalDiffeo::identity(2, 3)) == s);
}

TEST_CASE("extension examples")
{
    const ExtensionBounds bounds{1, 2};
    const ExtensionResult triv = extend_one_order(StarProduct::trivial(2, 1), 1, bounds, false);
    REQUIRE(triv.status == ExtensionResult::Status::Found);
    CHECK(triv.particular->is_zero());

    const StarProduct full = moyal(canonical_pi(1), 2);
    const ExtensionResult ext = extend_one_order(full.truncated(1), 1, bounds);
    REQUIRE(ext.status == ExtensionResult::Status::Found);
    CHECK(hochschild_d(*ext.particular - full.term(2)).is_zero());
    CHECK(hochschild_d(full.term(2)) == ext.target);

    // R^3 with pi = d_x ^ d_y: antisymmetrized commuting derivations extend the freedom
    const StarProduct m3 = moyal(first_pair_pi(3), 2);
    const ExtensionResult e3 = extend_one_order(m3.truncated(1), 1, ExtensionBounds{0, 2});
    REQUIRE(e3.status == ExtensionResult::Status::Found);
    const PolyDiffOp delta = PolyDiffOp::bidifferential(ex({0, 1, 0}), ex({0, 0, 1})) -
                             PolyDiffOp::bidifferential(ex({0, 0, 1}), ex({0, 1, 0}));
    CHECK(hochschild_d(delta).is_zero());
    CHECK(in_span(e3.freedom, delta));
    for (const auto &f : e3.freedom)
        CHECK(hochschild_d(f).is_zero());
    CHECK(in_span(e3.freedom, m3.term(2) - *e3.particular));

    const StarProduct uncertified(2, {moyal(canonical_pi(1), 1).term(1)});
    CHECK_THROWS_AS(extend_one_order(uncertified, 1, bounds), PreconditionError);
}

TEST_CASE("extension reports undecided when the ansatz is too small")
{
    // Moyal B_2 has order 2; an order-1 ansatz cannot reach it.
    const ExtensionResult r = extend_one_order(moyal(canonical_pi(1), 1), 1, ExtensionBounds{1, 1}, false);
    CHECK(r.status == ExtensionResult::Status::Undecided);
    CHECK(r.augmented_rank == r.rank + 1);
    CHECK_FALSE(r.particular.has_value());
}

TEST_CASE("property: moyal is associative and its commutator starts with the bracket")
{
    Gen gen(41);
    for (std::size_t pairs = 1; pairs <= 2; ++pairs) {
        const Polyvector pi = canonical_pi(pairs);
        const StarProduct s = moyal(pi, 3);
        for (std::size_t n = 1; n <= 3; ++n)
            CHECK(assoc_residual(s, n).is_zero());
        for (int t = 0; t < 20; ++t) {
            const Polynomial a = gen.polynomial(2 * pairs, 3), b = gen.polynomial(2 * pairs, 3);
            const auto c = star_commutator(s, a, b);
            CHECK(c[0].is_zero());
            CHECK(c[1] == poisson_bracket(pi, a, b));
            CHECK(c[2].is_zero());
        }
    }
}

TEST_CASE("property: gauge round trip and preserved associativity")
{
    Gen gen(42);
    const StarProduct s = moyal(canonical_pi(1), 3);
    for (int t = 0; t < 10; ++t) {
        std::vector<PolyDiffOp> terms;
        for (int k = 0; k < 3; ++k)
            terms.push_back(gen.operator_(2, 1, 2, 1, 2));
        const FormalDiffeo d(2, terms);
        const StarProduct g = gauge_transform(s, d);
        CHECK(gauge_transform(g, invert_diffeo(d)) == s);
        for (std::size_t n = 1; n <= 3; ++n)
            CHECK(assoc_residual(g, n).is_zero());
        CHECK(g.certified_order() == 3);

        // series-level oracle: D(a *' b) = D(a) * D(b)
        const Polynomial a = gen.polynomial(2, 2), b = gen.polynomial(2, 2);
        const auto lhs = [&] {
            const auto ab = star_eval(g, a, b);
            TruncatedSeries<Polynomial> out(3, Polynomial(2));
            for (std::size_t k = 0; k <= 3; ++k) {
                const auto dk = apply_diffeo(d, ab[k]);
                for (std::size_t l = 0; k + l <= 3; ++l)
                    out.add(k + l, dk[l]);
            }
            return out;
        }();
        const auto da = apply_diffeo(d, a), db = apply_diffeo(d, b);
        TruncatedSeries<Polynomial> rhs(3, Polynomial(2));
        for (std::size_t i = 0; i <= 3; ++i)
            for (std::size_t j = 0; i + j <= 3; ++j) {
                const auto prod = star_eval(s, da[i], db[j]);
                for (std::size_t k = 0; i + j + k <= 3; ++k)
                    rhs.add(i + j + k, prod[k]);
            }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: extension solutions pass the residual check")
{
    Gen gen(43);
    int found = 0;
    for (int t = 0; t < 5; ++t) {
        const Polyvector pi = canonical_pi(1);
        std::vector<PolyDiffOp> terms;
        for (int k = 0; k < 2; ++k)
            terms.push_back(gen.operator_(2, 1, 2, 1, 2));
        const StarProduct g = gauge_transform(moyal(pi, 2), FormalDiffeo(2, terms)).truncated(1);
        const ExtensionResult r = extend_one_order(g, 1, ExtensionBounds{2, 3}, false);
        if (r.status != ExtensionResult::Status::Found)
            continue;
        ++found;
        std::vector<PolyDiffOp> extended = g.terms();
        extended.push_back(*r.particular);
        CHECK(assoc_residual(StarProduct(2, extended), 2).is_zero());
    }
    CHECK(found > 0);
}

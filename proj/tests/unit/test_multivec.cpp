#include <doctest.h>

#include <string>
#include <vector>

#include "dqi/error.hpp"
#include "dqi/integrable_system.hpp"
#include "dqi/polydiff.hpp"
#include "dqi/polyvector.hpp"
#include "dqi/relative_class.hpp"
#include "generators.hpp"

using namespace dqi;
using namespace dqi::testing;

namespace {

const std::vector<std::string> xp{"x", "p"};
const std::vector<std::string> xyz{"x", "y", "z"};

Polynomial P(const std::string &text, const std::vector<std::string> &names = xp)
{
    return parse_polynomial(text, names);
}

int sign_of(std::size_t exponent) { return exponent % 2 ? -1 : 1; }

Polyvector so3()
{
    Polyvector pi(3, 2);
    pi.add({0, 1}, P("z", xyz));
    pi.add({1, 2}, P("x", xyz));
    pi.add({2, 0}, P("y", xyz));
    return pi;
}

} // namespace

TEST_CASE("wedge examples")
{
    const Polyvector dx = Polyvector::basis(2, {0}), dp = Polyvector::basis(2, {1});
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(dx, dp) == Polyvector::basis(2, {0, 1}));
    CHECK(wedge(dp, dx) == Polyvector::basis(2, {0, 1}, P("-1")));
    CHECK(wedge(P("x") * dx, dp) == P("x") * Polyvector::basis(2, {0, 1}));
    CHECK_THROWS_AS(wedge(dx, Polyvector::basis(3, {0})), DimensionError);
}

TEST_CASE("schouten bracket examples")
{
    const Polyvector dx = Polyvector::basis(2, {0});
    const Polyvector dxdp = Polyvector::basis(2, {0, 1});
    CHECK(schouten_bracket(dx, Polyvector::function(P("x^2"))) == Polyvector::function(P("2*x")));
    CHECK(schouten_bracket(dxdp, Polyvector::function(P("x"))) == Polyvector::basis(2, {1}));
    CHECK(schouten_bracket(dxdp, P("x") * dx) == dxdp);
    // Lie bracket of vector fields
    CHECK(schouten_bracket(dx, P("x") * dx) == dx);
}

TEST_CASE("jacobi check examples")
{
    CHECK(jacobi_check(canonical_pi(1)).is_poisson);
    CHECK(jacobi_check(canonical_pi(2)).is_poisson);
    CHECK(jacobi_check(so3()).is_poisson);

    Polyvector bad(3, 2);
    bad.add({0, 1}, P("z", xyz));
    bad.add({1, 2}, P("y", xyz));
    const JacobiCheck result = jacobi_check(bad);
    CHECK_FALSE(result.is_poisson);
    REQUIRE(result.witness.components().size() == 1);
    const Polynomial coef = result.witness.component({0, 1, 2});
    // proportional to z
    REQUIRE(coef.terms().size() == 1);
    CHECK(coef.terms().begin()->first == ex({0, 0, 1}));

    CHECK_THROWS_AS(jacobi_check(Polyvector(3, 1)), ArgumentError);
}

TEST_CASE("hkr examples")
{
    const Polyvector x_field = P("x") * Polyvector::basis(2, {1});
    const PolyDiffOp chi1 = hkr_to_cochain(x_field);
    const Polynomial arg[] = {P("p^2")};
    CHECK(apply_op(chi1, arg) == P("2*x*p"));

    const PolyDiffOp chi2 = hkr_to_cochain(Polyvector::basis(2, {0, 1}));
    const Polynomial a1[] = {P("x"), P("p")};
    CHECK(apply_op(chi2, a1) == P("1/2"));
    const Polynomial a2[] = {P("x^2"), P("p")};
    CHECK(apply_op(chi2, a2) == P("x"));
}

TEST_CASE("d_pi examples")
{
    const Polyvector pi = canonical_pi(1);
    CHECK(d_pi(pi, Polyvector::function(P("x"))) == Polyvector::basis(2, {1}));
    CHECK(d_pi(pi, d_pi(pi, Polyvector::function(P("x^3")))).is_zero());
    CHECK(d_pi(pi, P("x") * Polyvector::basis(2, {0})) == Polyvector::basis(2, {0, 1}));

    Polyvector bad(3, 2);
    bad.add({0, 1}, P("z", xyz));
    bad.add({1, 2}, P("y", xyz));
    CHECK_THROWS_AS(d_pi(bad, Polyvector::function(P("x", xyz))), PreconditionError);
}

TEST_CASE("hamiltonian vector field is {f, .}")
{
    Gen gen(21);
    const Polyvector pi = so3();
    for (int t = 0; t < 20; ++t) {
        const Polynomial f = gen.polynomial(3, 3), g = gen.polynomial(3, 3);
        CHECK(apply_vector_field(hamiltonian_vector_field(pi, f), g) == poisson_bracket(pi, f, g));
    }
}

TEST_CASE("d_hor examples")
{
    const std::vector<std::string> names{"x1", "x2", "p1", "p2"};
    const IntegrableSystem momenta = make_system(canonical_pi(2), {P("p1", names), P("p2", names)});
    RelativeClass w(4, 2, 0);
    w.add({}, P("x1", names));
    RelativeClass expected(4, 2, 1);
    expected.add({0}, P("-1", names));
    CHECK(d_hor(momenta, w) == expected);

    RelativeClass c(4, 2, 2);
    c.add({0, 1}, P("2", names));
    CHECK(d_hor(momenta, c).is_zero());

    const std::vector<std::string> xyzw{"x", "y", "z", "w"};
    const IntegrableSystem casimirs =
        make_system(first_pair_pi(4), {P("z", xyzw), P("w", xyzw)});
    Gen gen(5);
    for (int t = 0; t < 10; ++t)
        for (std::size_t k = 0; k <= 2; ++k)
            CHECK(d_hor(casimirs, gen.relative_class(4, 2, k, 3)).is_zero());

    CHECK_THROWS(d_hor(momenta, RelativeClass(4, 3, 1)));
}

TEST_CASE("relative class storage is antisymmetric")
{
    RelativeClass c(2, 3, 2);
    c.add({1, 0}, P("x"));
    CHECK(c.component({0, 1}) == P("-x"));
    c.add({0, 0}, P("x"));
    CHECK(c.components().size() == 1);
}

TEST_CASE("property: schouten graded antisymmetry and Jacobi")
{
    Gen gen(6);
    for (int t = 0; t < 100; ++t) {
        const std::size_t dim = static_cast<std::size_t>(gen.integer(2, 3));
        const std::size_t p = static_cast<std::size_t>(gen.integer(0, 2));
        const std::size_t q = static_cast<std::size_t>(gen.integer(0, 2));
        const std::size_t r = static_cast<std::size_t>(gen.integer(0, 2));
        // a bracket of two functions has degree -1; leave those out
        if (p + q == 0 || q + r == 0 || p + r == 0)
            continue;
        const Polyvector a = gen.polyvector(dim, p, 2), b = gen.polyvector(dim, q, 2), c = gen.polyvector(dim, r, 2);
        const int e_pq = sign_of((p + 1) * (q + 1));
        CHECK((schouten_bracket(a, b) + Rational(e_pq) * schouten_bracket(b, a)).is_zero());
        // [a,[b,c]] = [[a,b],c] + (-1)^{(p-1)(q-1)} [b,[a,c]]
        const Polyvector lhs = schouten_bracket(a, schouten_bracket(b, c));
        const Polyvector rhs = schouten_bracket(schouten_bracket(a, b), c) +
                               Rational(e_pq) * schouten_bracket(b, schouten_bracket(a, c));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: schouten is a graded derivation of the wedge")
{
    Gen gen(7);
    for (int t = 0; t < 40; ++t) {
        const std::size_t p = static_cast<std::size_t>(gen.integer(0, 2));
        const std::size_t q = static_cast<std::size_t>(gen.integer(0, 1));
        const std::size_t r = static_cast<std::size_t>(gen.integer(0, 1));
        if (p + q == 0 || p + r == 0)
            continue;
        const Polyvector a = gen.polyvector(3, p, 2), b = gen.polyvector(3, q, 2), c = gen.polyvector(3, r, 2);
        // [a, b^c] = (-1)^{(p-1)r} [a,b]^c + b^[a,c]
        const Polyvector lhs = schouten_bracket(a, wedge(b, c));
        const Polyvector rhs = Rational(sign_of((p + 1) * r)) * wedge(schouten_bracket(a, b), c) +
                               wedge(b, schouten_bracket(a, c));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: d_pi squares to zero")
{
    Gen gen(8);
    const Polyvector pis[] = {canonical_pi(1), canonical_pi(2), so3()};
    for (const auto &pi : pis)
        for (int t = 0; t < 15; ++t) {
            const std::size_t k = static_cast<std::size_t>(gen.integer(0, 2));
            const Polyvector v = gen.polyvector(pi.dim(), k, 2);
            CHECK(d_pi(pi, d_pi(pi, v)).is_zero());
        }
}

TEST_CASE("property: hkr output is antisymmetric and vector fields give cocycles")
{
    Gen gen(9);
    for (int t = 0; t < 30; ++t) {
        const Polyvector bi = gen.polyvector(3, 2, 2);
        const PolyDiffOp chi = hkr_to_cochain(bi);
        const Polynomial f = gen.polynomial(3, 3), g = gen.polynomial(3, 3);
        const Polynomial fg[] = {f, g}, gf[] = {g, f};
        CHECK((apply_op(chi, fg) + apply_op(chi, gf)).is_zero());

        const Polyvector x = gen.polyvector(3, 1, 2);
        CHECK(hochschild_d(hkr_to_cochain(x)).is_zero());
    }
}

TEST_CASE("property: d_hor squares to zero")
{
    const std::vector<std::string> names{"x1", "x2", "p1", "p2"};
    const std::vector<IntegrableSystem> systems{
        make_system(canonical_pi(2), {P("p1", names), P("p2", names)}),
        make_system(canonical_pi(2), {P("p1^2 + p2^2", names), P("x1*p2 - x2*p1", names)}),
        make_system(first_pair_pi(3), {P("y", xyz), P("z", xyz)}),
    };
    Gen gen(10);
    for (const auto &sys : systems)
        for (int t = 0; t < 30; ++t) {
            const std::size_t k = static_cast<std::size_t>(gen.integer(0, 1));
            const RelativeClass c = gen.relative_class(sys.dim(), sys.size(), k, 3);
            CHECK(d_hor(sys, d_hor(sys, c)).is_zero());
        }
}

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dqi/polydiff.hpp"
#include "dqi/polynomial.hpp"
#include "dqi/polyvector.hpp"
#include "dqi/series.hpp"

namespace dqi {

// a * b = ab + hbar B_1(a,b) + ... + hbar^N B_N(a,b), truncated at N.
//
// Associativity is not assumed. `certified_order` is the largest n such that
// the residuals R_1..R_n are known to vanish; computations at order n require
// a certificate of at least n.
class StarProduct {
public:
    StarProduct(std::size_t dim, std::vector<PolyDiffOp> terms, std::size_t certified_order = 0);

    // All B_k zero, associative to every order.
    static StarProduct trivial(std::size_t dim, std::size_t order);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t order() const noexcept { return terms_.size(); }
    // B_k for 1 <= k <= N; B_0 is the commutative product.
    const PolyDiffOp &term(std::size_t k) const;
    const std::vector<PolyDiffOp> &terms() const noexcept { return terms_; }
    std::size_t certified_order() const noexcept { return certified_order_; }

    StarProduct with_term(std::size_t k, PolyDiffOp b) const;
    StarProduct with_certificate(std::size_t n) const;
    // Same terms up to order n.
    StarProduct truncated(std::size_t n) const;

    friend bool operator==(const StarProduct &a, const StarProduct &b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dim_;
    PolyDiffOp multiplication_;
    std::vector<PolyDiffOp> terms_;
    std::size_t certified_order_;
};

// D(a) = a + hbar D_1(a) + ... + hbar^N D_N(a).
class FormalDiffeo {
public:
    FormalDiffeo(std::size_t dim, std::vector<PolyDiffOp> terms);

    static FormalDiffeo identity(std::size_t dim, std::size_t order);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t order() const noexcept { return terms_.size(); }
    // D_k for 1 <= k <= N; D_0 is the identity.
    const PolyDiffOp &term(std::size_t k) const;
    const std::vector<PolyDiffOp> &terms() const noexcept { return terms_; }
    bool is_identity() const;

    FormalDiffeo with_term(std::size_t k, PolyDiffOp d) const;

    friend bool operator==(const FormalDiffeo &a, const FormalDiffeo &b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dim_;
    PolyDiffOp identity_;
    std::vector<PolyDiffOp> terms_;
};

// Moyal product of a constant Poisson bivector with a real formal parameter:
//   B_k = 1/(2^k k!) sum pi^{i1 j1}..pi^{ik jk} d_{i1..ik} (x) d_{j1..jk}.
// Throws PreconditionError when some component of pi is not constant.
StarProduct moyal(const Polyvector &pi, std::size_t order);

TruncatedSeries<Polynomial> star_eval(const StarProduct &s, const Polynomial &a, const Polynomial &b);

// a * b - b * a.
TruncatedSeries<Polynomial> star_commutator(const StarProduct &s, const Polynomial &a, const Polynomial &b);

// R_n = sum_{k+l=n} (B_k o B_l), i.e. B_k(B_l(a,b),c) - B_k(a,B_l(b,c)).
// The product is associative at order n iff R_n = 0.
PolyDiffOp assoc_residual(const StarProduct &s, std::size_t n);

// Largest n <= order with R_1..R_n all zero; returns the star carrying it.
StarProduct certify(const StarProduct &s);

TruncatedSeries<Polynomial> apply_diffeo(const FormalDiffeo &d, const Polynomial &a);

// (D o E)_n = sum_{k+l=n} D_k o E_l.
FormalDiffeo compose(const FormalDiffeo &d, const FormalDiffeo &e);

FormalDiffeo invert_diffeo(const FormalDiffeo &d);

// a *' b = D^{-1}(D(a) * D(b)), as canonical bidifferential operators.
// The certificate of s carries over.
StarProduct gauge_transform(const StarProduct &s, const FormalDiffeo &d);

struct ExtensionBounds {
    unsigned coefficient_degree = 1;
    unsigned operator_order = 2;
};

struct ExtensionResult {
    enum class Status { Found, Undecided };
    Status status = Status::Undecided;
    std::size_t order = 0; // the order n+1 being solved for
    PolyDiffOp target{0, 3}; // sum_{k+l=n+1, k,l>=1} B_k o B_l, must equal d B_{n+1}
    std::optional<PolyDiffOp> particular;
    // Hochschild 2-cocycles in the ansatz; any combination may be added.
    std::vector<PolyDiffOp> freedom;
    std::size_t unknowns = 0;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
    ExtensionBounds bounds;
};

// Solves d B_{n+1} = sum_{k+l=n+1, k,l>=1} B_k o B_l for B_{n+1} over the ansatz
// sum c x^e d^a (x) d^b with |e| <= coefficient_degree and
// 1 <= |a|,|b| <= operator_order. Uses B_1..B_n of s; requires a certificate
// of at least n. Every returned particular solution has passed the residual
// check. Infeasibility only means "undecided within the ansatz".
ExtensionResult extend_one_order(const StarProduct &s, std::size_t n, const ExtensionBounds &bounds,
                                 bool want_freedom = true);

} // namespace dqi

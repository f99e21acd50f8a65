#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqi/integrable_system.hpp"
#include "dqi/polydiff.hpp"
#include "dqi/relative_class.hpp"
#include "dqi/star.hpp"

namespace dqi {

struct BracketViolation {
    std::size_t i, j; // generator indices, i < j
    Polynomial bracket;
};

struct ValidationReport {
    bool poisson = false;
    Polyvector jacobiator{0, 3};
    std::vector<BracketViolation> nonzero_brackets;
    // Some n x n minor of the Jacobian of (f_1..f_n) is a nonzero polynomial.
    bool independent = false;
    std::optional<IndexTuple> nonzero_minor_columns;
    std::optional<Polynomial> nonzero_minor;
    // Jacobian rank at seeded random rational points (maximum over points).
    std::size_t random_point_rank = 0;
    std::size_t random_points = 0;
    std::uint64_t seed = 0;

    bool valid() const { return poisson && nonzero_brackets.empty() && independent; }
};

// Checks Jacobi for pi, pairwise commutation of the generators, and
// functional independence (symbolic Jacobian minors, cross-checked at random
// points drawn from the seed).
ValidationReport validate_system(const IntegrableSystem &system, std::uint64_t seed = 0);

// sum_{i<j} (B_n(f_i,f_j) - B_n(f_j,f_i)) e_i ^ e_j, without preconditions.
RelativeClass commutator_class(const StarProduct &s, const IntegrableSystem &system, std::size_t n);

// The obstruction class chi_n. Requires a certificate of at least n and
// B_k|_C = 0 for k < n; throws PreconditionError naming the failing order.
RelativeClass obstruction_class(const StarProduct &s, const IntegrableSystem &system, std::size_t n);

struct CascadeReport {
    // (d B_n)|_C vanishes on the monomial table
    bool hochschild_closed = false;
    unsigned slot_degree = 0;
    std::optional<std::vector<ExponentVector>> violating_triple;
    std::optional<Polynomial> violating_value;
    // d_hor(chi_n) = 0
    bool relative_closed = false;
    RelativeClass d_hor_value{0, 0, 3};

    bool closed() const { return hochschild_closed && relative_closed; }
};

CascadeReport cocycle_cascade_check(const StarProduct &s, const IntegrableSystem &system, std::size_t n);

struct ExactnessResult {
    enum class Status {
        Solved,
        // no solution with component degree <= bound; says nothing about higher degrees
        InfeasibleAtBound,
        // every generator is a Casimir, so d_hor is identically zero in all degrees
        ZeroImage,
    };
    Status status = Status::InfeasibleAtBound;
    std::optional<RelativeClass> solution;
    unsigned degree_bound = 0;
    std::size_t unknowns = 0;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
};

// Solves d_hor(Y) = c for a degree-1 class Y with component degree <= bound.
// Throws PreconditionError if c is not d_hor-closed.
ExactnessResult exactness_solve(const IntegrableSystem &system, const RelativeClass &c, unsigned degree_bound);

struct SolverBounds {
    unsigned degree = 2;       // coefficient degree of Y, the lift and D_n
    unsigned operator_order = 2; // derivative order of D_n
};

// Vector field X with X(f_j) = Y_j, or nullopt if none exists within the
// coefficient degree bound. Uses the coordinate lift when every generator is
// a distinct coordinate function.
std::optional<Polyvector> lift_to_vector_field(const IntegrableSystem &system, const RelativeClass &y,
                                               unsigned degree_bound);

struct GaugeStepResult {
    enum class Status { Ok, LiftInfeasible, CorrectionInfeasible, PostCheckFailed };
    Status status = Status::LiftInfeasible;
    std::optional<Polyvector> lift; // lift of Y; D_{n-1} = -lift
    FormalDiffeo increment{0, {}};
    std::size_t table_slot_degree = 0;
    std::size_t unknowns = 0;
    std::size_t rank = 0;
    std::size_t augmented_rank = 0;
};

// Builds id + hbar^{n-1} D_{n-1} + hbar^n D_n making B'_n vanish on C, where
// D_{n-1} = -lift(Y) (so that chi_n(B') = chi_n(B) - d_hor(Y)) and D_n solves
// d D_n = -B^mid_n on the restricted monomial table. For n = 1 only D_1 is
// solved for and Y must be zero.
GaugeStepResult gauge_step(const StarProduct &s, const IntegrableSystem &system, std::size_t n,
                           const RelativeClass &y, const SolverBounds &bounds);

enum class EliminationStatus { Trivialized, Obstructed, Undecided };

std::string to_string(EliminationStatus status);
std::string to_string(ExactnessResult::Status status);
std::string to_string(GaugeStepResult::Status status);

struct OrderRecord {
    std::size_t order = 0;
    bool already_vanishing = false;
    RelativeClass chi{0, 0, 2};
    std::optional<CascadeReport> cascade;
    std::optional<ExactnessResult> exactness;
    std::optional<GaugeStepResult> step;
    std::string note;
};

struct ObstructionReport {
    EliminationStatus status = EliminationStatus::Undecided;
    std::size_t order_reached = 0;
    std::vector<OrderRecord> orders;
    FormalDiffeo gauge{0, {}};
    StarProduct transformed{0, {}};
    SolverBounds bounds;
    // Independent final check: every B'_k, k <= N, vanishes on the table of
    // slot degree order + 1.
    bool audit_passed = false;
};

// Order-by-order elimination along the sufficient path (lower gauge terms
// zero at each step).
ObstructionReport eliminate_to_order(const StarProduct &s, const IntegrableSystem &system, std::size_t order,
                                     const SolverBounds &bounds);

} // namespace dqi

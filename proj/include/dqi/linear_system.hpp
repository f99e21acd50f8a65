#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dqi/rational.hpp"

namespace dqi {

// Sparse vector indexed by column.
using SparseVector = std::map<std::size_t, Rational>;

// Linear system A x = b over the rationals, assembled column by column:
// each unknown contributes a sparse column keyed by an arbitrary row key.
// Row keys are interned to indices in first-seen order.
template <typename RowKey>
class SparseSystemBuilder {
public:
    explicit SparseSystemBuilder(std::size_t unknowns) : columns_(unknowns) {}

    void add(std::size_t unknown, const RowKey &row, const Rational &value)
    {
        if (value == 0)
            return;
        columns_.at(unknown)[intern(row)] += value;
    }

    void add_rhs(const RowKey &row, const Rational &value)
    {
        if (value == 0)
            return;
        rhs_[intern(row)] += value;
    }

    std::size_t unknowns() const noexcept { return columns_.size(); }
    std::size_t rows() const noexcept { return keys_.size(); }
    const std::vector<SparseVector> &columns() const noexcept { return columns_; }
    const SparseVector &rhs() const noexcept { return rhs_; }

private:
    std::size_t intern(const RowKey &row)
    {
        auto [it, inserted] = keys_.try_emplace(row, keys_.size());
        return it->second;
    }

    std::map<RowKey, std::size_t> keys_;
    std::vector<SparseVector> columns_;
    SparseVector rhs_;
};

struct LinearSolution {
    bool feasible = false;
    std::size_t rank = 0;           // rank of A
    std::size_t augmented_rank = 0; // rank of [A | b]; exceeds rank iff infeasible
    std::vector<Rational> solution; // free unknowns set to zero
    std::vector<std::vector<Rational>> nullspace;
};

// Exact Gaussian elimination. Columns of A are given sparsely (row -> value).
// When want_nullspace is false the nullspace basis is left empty.
LinearSolution solve_linear(const std::vector<SparseVector> &columns, const SparseVector &rhs,
                            std::size_t rows, bool want_nullspace = true);

template <typename RowKey>
LinearSolution solve_linear(const SparseSystemBuilder<RowKey> &builder, bool want_nullspace = true)
{
    return solve_linear(builder.columns(), builder.rhs(), builder.rows(), want_nullspace);
}

} // namespace dqi

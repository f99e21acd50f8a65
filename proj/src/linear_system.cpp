#include "dqi/linear_system.hpp"

#include <algorithm>

namespace dqi {

namespace {

using Row = std::vector<std::pair<std::size_t, Rational>>;

// target -= factor * pivot, both sorted by column.
Row eliminate(const Row &target, const Row &pivot, const Rational &factor)
{
    Row out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
            out.push_back(target[i++]);
        } else if (i == target.size() || pivot[j].first < target[i].first) {
            out.emplace_back(pivot[j].first, -factor * pivot[j].second);
            ++j;
        } else {
            Rational v = target[i].second - factor * pivot[j].second;
            if (v != 0)
                out.emplace_back(target[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

LinearSolution solve_linear(const std::vector<SparseVector> &columns, const SparseVector &rhs, std::size_t rows,
                            bool want_nullspace)
{
    const std::size_t n = columns.size();
    std::vector<Row> row_data(rows);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto &[r, v] : columns[c])
            if (v != 0)
                row_data.at(r).emplace_back(c, v);
    for (const auto &[r, v] : rhs)
        if (v != 0)
            row_data.at(r).emplace_back(n, v);

    // Buckets of rows keyed by leading column.
    std::map<std::size_t, std::vector<Row>> buckets;
    for (auto &row : row_data) {
        if (row.empty())
            continue;
        std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        const std::size_t lead = row.front().first;
        buckets[lead].push_back(std::move(row));
    }

    std::map<std::size_t, Row> pivots;
    bool inconsistent = false;
    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        const std::size_t col = node.key();
        std::vector<Row> &group = node.mapped();
        if (col == n) {
            inconsistent = true;
            continue;
        }
        auto best = std::min_element(group.begin(), group.end(),
                                     [](const Row &a, const Row &b) { return a.size() < b.size(); });
        Row pivot = std::move(*best);
        for (auto it = group.begin(); it != group.end(); ++it) {
            if (it == best)
                continue;
            const Rational factor = it->front().second / pivot.front().second;
            Row reduced = eliminate(*it, pivot, factor);
            if (!reduced.empty())
                buckets[reduced.front().first].push_back(std::move(reduced));
        }
        pivots.emplace(col, std::move(pivot));
    }

    LinearSolution out;
    out.rank = pivots.size();
    out.augmented_rank = out.rank + (inconsistent ? 1 : 0);
    out.feasible = !inconsistent;

    // Back substitution in decreasing pivot order; `values` holds unknowns, with
    // the rhs entering through column n.
    auto back_substitute = [&](std::vector<Rational> values, const Rational &rhs_weight) {
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            const auto &[col, row] = *it;
            Rational acc = 0;
            for (std::size_t t = 1; t < row.size(); ++t) {
                const auto &[c, v] = row[t];
                if (c == n)
                    acc += v * rhs_weight;
                else
                    acc -= v * values[c];
            }
            values[col] = acc / row.front().second;
        }
        return values;
    };

    if (out.feasible)
        out.solution = back_substitute(std::vector<Rational>(n, 0), 1);

    if (want_nullspace) {
        for (std::size_t f = 0; f < n; ++f) {
            if (pivots.count(f))
                continue;
            std::vector<Rational> seed(n, 0);
            seed[f] = 1;
            out.nullspace.push_back(back_substitute(std::move(seed), 0));
        }
    }
    return out;
}

} // namespace dqi

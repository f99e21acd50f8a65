#pragma once

#include <cstddef>
#include <vector>

#include "dqi/polynomial.hpp"
#include "dqi/polyvector.hpp"

namespace dqi {

// Poisson manifold R^m with bivector pi and the generators f_1..f_n of the
// Poisson-commutative subalgebra C. Construction does not validate; see
// validate_system.
struct IntegrableSystem {
    Polyvector pi;
    std::vector<Polynomial> generators;

    std::size_t dim() const noexcept { return pi.dim(); }
    std::size_t size() const noexcept { return generators.size(); }
};

} // namespace dqi

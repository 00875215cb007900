#pragma once

#include <vector>

#include "fqlab/bigint.hpp"

namespace fqlab::detail {

struct ModulusScan {
    std::vector<double> moduli;  // one per root, with multiplicity
    double max_relative_deviation = 0.0;
};

// Roots of a monic integer polynomial (coefficients constant term first),
// compared against sqrt(target_square). Repeated factors are split off
// exactly before the numeric stage, so clusters never appear.
ModulusScan scan_root_moduli(const std::vector<BigInt>& monic, const BigInt& target_square);

}  // namespace fqlab::detail

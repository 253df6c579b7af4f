// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qmeas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Comparison thresholds shared across the library.
///
/// Scalar and entrywise equality use eq_abs + eq_rel * scale, where scale is
/// the larger max-entry norm of the operands.  psd_floor is the smallest
/// eigenvalue still accepted as "non-negative" by positivity checks.
struct Tolerance {
    double eq_abs = 1e-12;
    double eq_rel = 1e-9;
    double psd_floor = -1e-9;
};

}  // namespace qmeas

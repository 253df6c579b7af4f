// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "qmeas/povm.hpp"
#include "qmeas/state.hpp"

namespace qmeas {

/// All randomized sweeps in the library draw from this 64-bit generator so
/// that a seed pins every result.
using Rng = std::mt19937_64;

/// Stable per-tag sub-seed (FNV-1a mix of the master seed and the tag).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

/// Entries are independent standard complex gaussians.
Matrix random_matrix(Rng& rng, Index rows, Index cols);
Matrix random_hermitian(Rng& rng, Index dim);
/// x^dag x for a random gaussian x; positive by construction.
Matrix random_psd(Rng& rng, Index dim);
Vector random_ket(Rng& rng, Index dim);
/// Orthonormalized gaussian matrix with the QR phase fix.
Matrix random_unitary(Rng& rng, Index dim);

DensityOperator random_density(Rng& rng, FactorLayout layout);
UnitaryOperator random_unitary_on(Rng& rng, FactorLayout layout);

/// Random measure: gaussian positive atoms whitened by the inverse square
/// root of their sum, so they add up to the identity.
OperatorValuedMeasure random_povm(Rng& rng, Index dim, int outcomes,
                                  const std::string& space_label = "R");
/// Random projective measure: basis projectors of a random unitary, grouped
/// into the requested number of atoms (every atom non-empty).
OperatorValuedMeasure random_pvm(Rng& rng, Index dim, int outcomes,
                                 const std::string& space_label = "P");

}  // namespace qmeas

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qmeas/bb84.hpp"
#include "qmeas/probe_chain.hpp"

namespace qmeas {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Standard basis ket |j> in the given dimension.
Vector ket(Index j, Index dim);
Vector plus_ket();
Vector minus_ket();
Matrix projector(const Vector& v);

/// (|00> + |11>)/sqrt(2) as a density operator on a 2x2 layout.
DensityOperator bell_phi_plus(const std::string& first_label = "A",
                              const std::string& second_label = "B");

/// Controlled-not with the first factor as control.
Matrix cnot();

/// Single CNOT probe read out in the computational basis, particle |+><+|.
ChainScenario cnot_chain_fixture();

/// The reference entangled scenario: shared Bell pair, Alice measuring the
/// four-outcome Z/X mixture with singleton key events, a trivial attack on an
/// eve probe of the given dimension, computational readouts for Eve and Bob.
EntangledScenario bb84_bell_fixture(Index eve_dim = 2);

/// Same scenario with the attack and probe replaced (for randomized sweeps).
EntangledScenario bb84_bell_fixture_with_attack(DensityOperator eve_probe,
                                                UnitaryOperator attack);

}  // namespace qmeas

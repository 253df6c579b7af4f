// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "qmeas/state.hpp"

namespace qmeas {

/// Entangled-state key distribution under an individual attack: Alice holds
/// one half of rho_ba and measures it, Bob receives the other half after the
/// eavesdropper's probe has interacted with it.  The composite space is
/// eve (x) bob (x) alice, labels "E", "B", "A".
struct EntangledScenario {
    EntangledScenario(DensityOperator eve_probe, DensityOperator alice_state,
                      UnitaryOperator attack, OperatorValuedMeasure eve_measure,
                      OperatorValuedMeasure bob_measure, OperatorValuedMeasure alice_measure,
                      std::array<Event, 4> alice_key_events, const Tolerance& tol = {});

    DensityOperator eve_probe;    ///< rho_e on "E"
    DensityOperator alice_state;  ///< rho_ba on ["B", "A"]
    UnitaryOperator attack;       ///< u_eb on ["E", "B"]
    OperatorValuedMeasure eve_measure;
    OperatorValuedMeasure bob_measure;
    OperatorValuedMeasure alice_measure;
    std::array<Event, 4> alice_key_events;  ///< pairwise disjoint key events

    Index eve_dim() const { return eve_probe.dim(); }
    Index bob_dim() const { return bob_measure.dim(); }
    Index alice_dim() const { return alice_measure.dim(); }
    FactorLayout triple_layout() const;
};

/// Transmitted-state key distribution: Alice sends one of four states with
/// prior weights; no Alice factor remains in the Hilbert space.
struct TransmittedScenario {
    std::array<double, 4> priors{};
    std::vector<DensityOperator> bob_states;  ///< four states on "B"
    DensityOperator eve_probe;
    UnitaryOperator attack;
    OperatorValuedMeasure eve_measure;
    OperatorValuedMeasure bob_measure;
};

/// Pr(X_E, Y_B, Z_A) on the triple space.
double entangled_joint(const EntangledScenario& s, const Event& x_e, const Event& y_b,
                       const Event& z_a, const Tolerance& tol = {});

/// Pr(Z_A) computed from Alice's half alone; independent of the probe, the
/// attack and the Eve/Bob measures.
double alice_marginal(const EntangledScenario& s, const Event& z_a, const Tolerance& tol = {});

/// Bob's conditional state tr_a[M_A(Z_A) rho_ba] normalized by Pr(Z_A).
DensityOperator conditional_bob_state(const EntangledScenario& s, const Event& z_a,
                                      const Tolerance& tol = {});

/// Pr(X_E, Y_B | Z_A) evaluated on eve (x) bob with Bob's conditional state.
double entangled_conditional(const EntangledScenario& s, const Event& x_e, const Event& y_b,
                             const Event& z_a, const Tolerance& tol = {});

/// The transmitted-state model equivalent to an entangled-state one: priors
/// are Alice's key-event marginals, Bob's states her conditional states.
TransmittedScenario derive_transmitted(const EntangledScenario& s, const Tolerance& tol = {});

/// Pr(X_E, Y_B, i) = prior_i * tr_eb[(M_E(X) (x) M_B(Y)) U (rho_e (x) rho_b(i)) U^dag].
double transmitted_joint(const TransmittedScenario& t, const Event& x_e, const Event& y_b,
                         std::size_t i, const Tolerance& tol = {});

struct EquivalenceRow {
    int eve_atom;
    int bob_atom;
    int key_index;
    double entangled;
    double transmitted;
};

struct EquivalenceTable {
    std::vector<EquivalenceRow> rows;
    std::array<double, 4> priors{};
    double prior_sum = 0.0;  ///< < 1 when the key events do not exhaust Alice's outcomes
    double max_residual = 0.0;
};

EquivalenceTable equivalence_table(const EntangledScenario& s, const Tolerance& tol = {});

/// max over (eve atom, bob atom, key index) of the difference between the
/// entangled-state and derived transmitted-state joint probabilities.
double equivalence_report(const EntangledScenario& s, const Tolerance& tol = {});

}  // namespace qmeas

// SPDX-License-Identifier: Apache-2.0
#include "qmeas/bb84.hpp"

#include <cmath>

namespace qmeas {

EntangledScenario::EntangledScenario(DensityOperator eve_probe_, DensityOperator alice_state_,
                                     UnitaryOperator attack_, OperatorValuedMeasure eve_measure_,
                                     OperatorValuedMeasure bob_measure_,
                                     OperatorValuedMeasure alice_measure_,
                                     std::array<Event, 4> alice_key_events_, const Tolerance&)
    : eve_probe(std::move(eve_probe_)),
      alice_state(std::move(alice_state_)),
      attack(std::move(attack_)),
      eve_measure(std::move(eve_measure_)),
      bob_measure(std::move(bob_measure_)),
      alice_measure(std::move(alice_measure_)),
      alice_key_events(std::move(alice_key_events_)) {
    if (alice_state.layout().size() != 2)
        throw DimensionMismatch("alice_state must live on a two-factor (bob, alice) layout");
    const Index d_b = alice_state.layout()[0].dim;
    const Index d_a = alice_state.layout()[1].dim;
    if (bob_measure.dim() != d_b)
        throw DimensionMismatch("bob measure dim does not match the shared state");
    if (alice_measure.dim() != d_a)
        throw DimensionMismatch("alice measure dim does not match the shared state");
    if (attack.dim() != eve_probe.dim() * d_b)
        throw DimensionMismatch("attack dim does not match eve (x) bob");
    if (eve_measure.dim() != eve_probe.dim())
        throw DimensionMismatch("eve measure dim does not match the probe");
    for (const auto& z : alice_key_events)
        if (z.space() != alice_measure.space())
            throw SpaceMismatch("key event not on alice's outcome space");
    for (std::size_t i = 0; i < alice_key_events.size(); ++i)
        for (std::size_t j = i + 1; j < alice_key_events.size(); ++j)
            if (!intersect(alice_key_events[i], alice_key_events[j]).is_empty())
                throw ValidationFailure("alice key events overlap");
}

FactorLayout EntangledScenario::triple_layout() const {
    return FactorLayout{{"E", eve_dim()}, {"B", alice_state.layout()[0].dim},
                        {"A", alice_state.layout()[1].dim}};
}

namespace {

double checked_probability(double p, const Tolerance& tol, const char* what) {
    if (p < -tol.eq_abs || p > 1.0 + tol.eq_abs)
        throw ProbabilityOutOfRange(std::string(what) + " produced " + std::to_string(p));
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double entangled_joint(const EntangledScenario& s, const Event& x_e, const Event& y_b,
                       const Event& z_a, const Tolerance& tol) {
    if (x_e.space() != s.eve_measure.space() || y_b.space() != s.bob_measure.space() ||
        z_a.space() != s.alice_measure.space())
        throw SpaceMismatch("entangled_joint: event on the wrong outcome space");

    const FactorLayout layout = s.triple_layout();
    const Matrix u = embed(s.attack.matrix(), {"E", "B"}, layout);
    const Matrix initial = kron(s.eve_probe.matrix(), s.alice_state.matrix());
    const Matrix effect = kron(kron(event_operator(s.eve_measure, x_e),
                                    event_operator(s.bob_measure, y_b)),
                               event_operator(s.alice_measure, z_a));
    const double p = trace(effect * u * initial * u.adjoint()).real();
    return checked_probability(p, tol, "entangled_joint");
}

double alice_marginal(const EntangledScenario& s, const Event& z_a, const Tolerance& tol) {
    if (z_a.space() != s.alice_measure.space())
        throw SpaceMismatch("alice_marginal: event on the wrong outcome space");
    const Matrix mz =
        embed(event_operator(s.alice_measure, z_a), {"A"}, s.alice_state.layout());
    auto [on_bob, _] = partial_trace(mz * s.alice_state.matrix(), s.alice_state.layout(), {"A"});
    return checked_probability(trace(on_bob).real(), tol, "alice_marginal");
}

DensityOperator conditional_bob_state(const EntangledScenario& s, const Event& z_a,
                                      const Tolerance& tol) {
    if (z_a.space() != s.alice_measure.space())
        throw SpaceMismatch("conditional_bob_state: event on the wrong outcome space");
    const Matrix mz =
        embed(event_operator(s.alice_measure, z_a), {"A"}, s.alice_state.layout());
    auto [numerator, kept] =
        partial_trace(s.alice_state.matrix() * mz, s.alice_state.layout(), {"A"});
    const double denom = trace(numerator).real();
    if (denom <= tol.eq_abs)
        throw ZeroProbabilityCondition("conditional_bob_state: Pr(Z_A) = " +
                                       std::to_string(denom));
    return DensityOperator(symmetrized(numerator / denom), kept, tol);
}

double entangled_conditional(const EntangledScenario& s, const Event& x_e, const Event& y_b,
                             const Event& z_a, const Tolerance& tol) {
    if (x_e.space() != s.eve_measure.space() || y_b.space() != s.bob_measure.space())
        throw SpaceMismatch("entangled_conditional: event on the wrong outcome space");
    const DensityOperator bob = conditional_bob_state(s, z_a, tol);

    const FactorLayout eb{{"E", s.eve_dim()}, {"B", s.bob_dim()}};
    const Matrix joint = s.attack.matrix() * kron(s.eve_probe.matrix(), bob.matrix()) *
                         s.attack.matrix().adjoint();
    const Matrix effect = kron(event_operator(s.eve_measure, x_e),
                               event_operator(s.bob_measure, y_b));
    return checked_probability(trace(effect * joint).real(), tol, "entangled_conditional");
}

TransmittedScenario derive_transmitted(const EntangledScenario& s, const Tolerance& tol) {
    TransmittedScenario t{{},
                          {},
                          s.eve_probe,
                          s.attack,
                          s.eve_measure,
                          s.bob_measure};
    for (std::size_t i = 0; i < 4; ++i) {
        const double zeta = alice_marginal(s, s.alice_key_events[i], tol);
        if (zeta <= tol.eq_abs)
            throw ZeroProbabilityCondition("derive_transmitted: key event " + std::to_string(i) +
                                           " has probability " + std::to_string(zeta));
        t.priors[i] = zeta;
        t.bob_states.push_back(conditional_bob_state(s, s.alice_key_events[i], tol));
    }
    return t;
}

double transmitted_joint(const TransmittedScenario& t, const Event& x_e, const Event& y_b,
                         std::size_t i, const Tolerance& tol) {
    if (i >= 4) throw IndexOutOfRange("transmitted_joint: key index " + std::to_string(i));
    if (x_e.space() != t.eve_measure.space() || y_b.space() != t.bob_measure.space())
        throw SpaceMismatch("transmitted_joint: event on the wrong outcome space");
    if (t.priors[i] == 0.0) return 0.0;

    const Matrix joint = t.attack.matrix() *
                         kron(t.eve_probe.matrix(), t.bob_states[i].matrix()) *
                         t.attack.matrix().adjoint();
    const Matrix effect =
        kron(event_operator(t.eve_measure, x_e), event_operator(t.bob_measure, y_b));
    const double conditional =
        checked_probability(trace(effect * joint).real(), tol, "transmitted_joint");
    return t.priors[i] * conditional;
}

EquivalenceTable equivalence_table(const EntangledScenario& s, const Tolerance& tol) {
    const TransmittedScenario t = derive_transmitted(s, tol);

    EquivalenceTable table;
    table.priors = t.priors;
    table.prior_sum = t.priors[0] + t.priors[1] + t.priors[2] + t.priors[3];
    for (int e = 0; e < s.eve_measure.outcomes(); ++e) {
        const Event xe = Event::singleton(s.eve_measure.space(), e);
        for (int b = 0; b < s.bob_measure.outcomes(); ++b) {
            const Event yb = Event::singleton(s.bob_measure.space(), b);
            for (std::size_t i = 0; i < 4; ++i) {
                const double tangled = entangled_joint(s, xe, yb, s.alice_key_events[i], tol);
                const double sent = transmitted_joint(t, xe, yb, i, tol);
                table.rows.push_back({e, b, static_cast<int>(i), tangled, sent});
                table.max_residual = std::max(table.max_residual, std::abs(tangled - sent));
            }
        }
    }
    return table;
}

double equivalence_report(const EntangledScenario& s, const Tolerance& tol) {
    return equivalence_table(s, tol).max_residual;
}

}  // namespace qmeas

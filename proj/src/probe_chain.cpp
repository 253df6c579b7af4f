// SPDX-License-Identifier: Apache-2.0
#include "qmeas/probe_chain.hpp"

#include <cmath>
#include <string>

namespace qmeas {

ChainScenario::ChainScenario(DensityOperator particle, std::vector<ProbeStep> steps,
                             const Tolerance&)
    : particle_(std::move(particle)), steps_(std::move(steps)) {
    const Index d0 = particle_.dim();
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        const auto& s = steps_[j];
        const Index dj = s.probe_state.dim();
        if (s.interaction.dim() != d0 * dj)
            throw DimensionMismatch("probe step " + std::to_string(j) + ": interaction dim " +
                                    std::to_string(s.interaction.dim()) + ", expected " +
                                    std::to_string(d0 * dj));
        if (s.measure.dim() != dj)
            throw DimensionMismatch("probe step " + std::to_string(j) +
                                    ": measure dim does not match probe dim");
    }
}

ScaledConditional initial_scaled(const DensityOperator& particle) {
    return {particle.matrix(), 1.0};
}

ScaledConditional chain_step(const ScaledConditional& sigma, const ProbeStep& step,
                             const Event& x, const Tolerance& tol) {
    const Index d0 = sigma.matrix.rows();
    const Index dj = step.probe_state.dim();
    if (sigma.matrix.rows() != sigma.matrix.cols())
        throw NonSquare("chain_step: scaled conditional must be square");
    if (step.interaction.dim() != d0 * dj)
        throw DimensionMismatch("chain_step: interaction dim mismatch");
    if (x.space() != step.measure.space())
        throw SpaceMismatch("chain_step: event space does not match the probe measure");

    const FactorLayout pair{{"sys", d0}, {"probe", dj}};
    const Matrix joint = step.interaction.matrix() *
                         kron(sigma.matrix, step.probe_state.matrix()) *
                         step.interaction.matrix().adjoint();
    const Matrix measured = embed(event_operator(step.measure, x), {"probe"}, pair) * joint;
    Matrix next = symmetrized(partial_trace(measured, pair, {"probe"}).first);

    const double weight = trace(next).real();
    if (weight < -tol.eq_abs)
        throw NotPositive("chain_step: negative weight " + std::to_string(weight));
    return {std::move(next), std::max(weight, 0.0)};
}

DensityOperator normalize_conditional(const ScaledConditional& sigma, const FactorLayout& layout,
                                      const Tolerance& tol) {
    if (sigma.weight <= tol.eq_abs)
        throw ZeroProbabilityCondition("normalize_conditional: weight " +
                                       std::to_string(sigma.weight));
    return DensityOperator(sigma.matrix / sigma.weight, layout, tol);
}

double chain_joint(const ChainScenario& scn, const std::vector<Event>& events,
                   const Tolerance& tol) {
    if (events.size() != scn.length())
        throw LengthMismatch("chain_joint: " + std::to_string(events.size()) + " events for " +
                             std::to_string(scn.length()) + " steps");
    ScaledConditional sigma = initial_scaled(scn.particle());
    for (std::size_t j = 0; j < scn.length(); ++j)
        sigma = chain_step(sigma, scn.steps()[j], events[j], tol);
    return std::clamp(sigma.weight, 0.0, 1.0);
}

double chain_conditional(const ChainScenario& scn,
                         const std::vector<std::pair<std::size_t, Event>>& given,
                         const std::pair<std::size_t, Event>& query, const Tolerance& tol) {
    const std::size_t q = query.first;
    if (q >= scn.length()) throw IndexOutOfRange("chain_conditional: query step out of range");

    // Full events where the conditioning leaves a step unconstrained.
    std::vector<const Event*> chosen(scn.length(), nullptr);
    for (const auto& [idx, ev] : given) {
        if (idx >= scn.length())
            throw IndexOutOfRange("chain_conditional: given step out of range");
        if (idx >= q)
            throw OrderViolation("chain_conditional: given step " + std::to_string(idx) +
                                 " does not precede query step " + std::to_string(q));
        chosen[idx] = &ev;
    }

    ScaledConditional sigma = initial_scaled(scn.particle());
    for (std::size_t j = 0; j < q; ++j) {
        const Event ev = chosen[j] ? *chosen[j] : Event::full(scn.steps()[j].measure.space());
        sigma = chain_step(sigma, scn.steps()[j], ev, tol);
    }
    if (sigma.weight <= tol.eq_abs)
        throw ZeroProbabilityCondition("chain_conditional: conditioning weight " +
                                       std::to_string(sigma.weight));

    const ScaledConditional normalized{sigma.matrix / sigma.weight, 1.0};
    const ScaledConditional after = chain_step(normalized, scn.steps()[q], query.second, tol);
    return std::clamp(after.weight, 0.0, 1.0);
}

double chain_joint_bruteforce(const ChainScenario& scn, const std::vector<Event>& events,
                              const Tolerance& tol) {
    if (events.size() != scn.length())
        throw LengthMismatch("chain_joint_bruteforce: event count mismatch");

    std::vector<Factor> factors{{"p0", scn.particle_dim()}};
    for (std::size_t j = 0; j < scn.length(); ++j)
        factors.push_back({"p" + std::to_string(j + 1), scn.steps()[j].probe_state.dim()});
    const FactorLayout full(factors);

    Matrix state = scn.particle().matrix();
    for (const auto& step : scn.steps()) state = kron(state, step.probe_state.matrix());

    for (std::size_t j = 0; j < scn.length(); ++j) {
        const Matrix u = embed(scn.steps()[j].interaction.matrix(),
                               {"p0", "p" + std::to_string(j + 1)}, full);
        state = u * state * u.adjoint();
    }

    Matrix effect = identity(scn.particle_dim());
    for (std::size_t j = 0; j < scn.length(); ++j)
        effect = kron(effect, event_operator(scn.steps()[j].measure, events[j]));

    const double p = trace(effect * state).real();
    if (p < -tol.eq_abs || p > 1.0 + tol.eq_abs)
        throw ProbabilityOutOfRange("chain_joint_bruteforce produced " + std::to_string(p));
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace qmeas

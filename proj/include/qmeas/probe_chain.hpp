// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "qmeas/state.hpp"

namespace qmeas {

/// One probe: its pre-interaction state, the particle-probe interaction, and
/// the measure applied to the probe afterwards.
struct ProbeStep {
    DensityOperator probe_state;  ///< on the probe factor alone
    UnitaryOperator interaction;  ///< on particle (x) probe
    OperatorValuedMeasure measure;
};

/// A particle interacting with a sequence of probes, each measured once.
class ChainScenario {
  public:
    ChainScenario(DensityOperator particle, std::vector<ProbeStep> steps,
                  const Tolerance& tol = {});

    const DensityOperator& particle() const { return particle_; }
    const std::vector<ProbeStep>& steps() const { return steps_; }
    std::size_t length() const { return steps_.size(); }
    Index particle_dim() const { return particle_.dim(); }

  private:
    DensityOperator particle_;
    std::vector<ProbeStep> steps_;
};

/// Unnormalized conditional state of the particle: positive hermitian with
/// trace equal to the probability weight accumulated so far.
struct ScaledConditional {
    Matrix matrix;
    double weight = 0.0;
};

ScaledConditional initial_scaled(const DensityOperator& particle);

/// Folds one probe into the running scaled conditional:
/// tr_probe[(1 (x) M(X)) U (sigma (x) rho_probe) U^dag].
ScaledConditional chain_step(const ScaledConditional& sigma, const ProbeStep& step,
                             const Event& x, const Tolerance& tol = {});

/// sigma / tr(sigma) as a density operator on the particle space.
DensityOperator normalize_conditional(const ScaledConditional& sigma, const FactorLayout& layout,
                                      const Tolerance& tol = {});

/// Joint probability of one event per step, by folding chain_step.
double chain_joint(const ChainScenario& scn, const std::vector<Event>& events,
                   const Tolerance& tol = {});

/// Pr(query | given): folds the given events (full events where unspecified)
/// through the steps before the query, normalizes, then applies the query
/// step.  Every given index must precede the query index.
double chain_conditional(const ChainScenario& scn,
                         const std::vector<std::pair<std::size_t, Event>>& given,
                         const std::pair<std::size_t, Event>& query, const Tolerance& tol = {});

/// Independent oracle: assembles the full particle (x) probes space, applies
/// every embedded interaction in order, and takes a single global trace
/// against the tensor product of the event operators.
double chain_joint_bruteforce(const ChainScenario& scn, const std::vector<Event>& events,
                              const Tolerance& tol = {});

}  // namespace qmeas

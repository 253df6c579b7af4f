// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qmeas/linalg.hpp"
#include "qmeas/povm.hpp"

namespace qmeas {

/// Positive, unit-trace hermitian operator bound to a factor layout.
class DensityOperator {
  public:
    DensityOperator(Matrix matrix, FactorLayout layout, const Tolerance& tol = {});

    const Matrix& matrix() const { return matrix_; }
    const FactorLayout& layout() const { return layout_; }
    Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
    FactorLayout layout_;
};

class UnitaryOperator {
  public:
    UnitaryOperator(Matrix matrix, FactorLayout layout, const Tolerance& tol = {});
    static UnitaryOperator identity_on(const FactorLayout& layout);

    const Matrix& matrix() const { return matrix_; }
    const FactorLayout& layout() const { return layout_; }
    Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
    FactorLayout layout_;
};

/// Classical mixture of preparations: priors sum to one over a shared layout.
class StateEnsemble {
  public:
    StateEnsemble(std::vector<double> priors, std::vector<DensityOperator> states,
                  const Tolerance& tol = {});

    std::size_t size() const { return priors_.size(); }
    double prior(std::size_t i) const;
    const DensityOperator& state(std::size_t i) const;

  private:
    std::vector<double> priors_;
    std::vector<DensityOperator> states_;
};

/// Probabilities indexed by the atoms of an outcome space.
class ProbabilityTable {
  public:
    ProbabilityTable(OutcomeSpace space, std::vector<double> values, const Tolerance& tol = {});

    const OutcomeSpace& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    double at(int atom) const;

  private:
    OutcomeSpace space_;
    std::vector<double> values_;
};

DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u);

/// Pr(X) = Tr[U rho U^dag M(X)], clamped to [0,1] after a tolerance check.
/// Values outside [-eq_abs, 1+eq_abs] throw ProbabilityOutOfRange.
double trace_rule(const DensityOperator& rho, const UnitaryOperator& u,
                  const OperatorValuedMeasure& m, const Event& x, const Tolerance& tol = {});
/// Same with the evolution omitted (identity).
double trace_rule(const DensityOperator& rho, const OperatorValuedMeasure& m, const Event& x,
                  const Tolerance& tol = {});

ProbabilityTable probability_table(const DensityOperator& rho, const UnitaryOperator& u,
                                   const OperatorValuedMeasure& m, const Tolerance& tol = {});
ProbabilityTable probability_table(const DensityOperator& rho, const OperatorValuedMeasure& m,
                                   const Tolerance& tol = {});

/// Joint measure over (state event, measurement event):
/// Pr(rho_i, X) = prior_i * Tr[U rho_i U^dag M(X)].
double decision_joint(const StateEnsemble& ensemble, const UnitaryOperator& u,
                      const OperatorValuedMeasure& m, std::size_t i, const Event& x,
                      const Tolerance& tol = {});

/// Pr(X | rho_i): the trace rule on entry i; requires prior_i > 0.
double conditional_on_state(const StateEnsemble& ensemble, const UnitaryOperator& u,
                            const OperatorValuedMeasure& m, std::size_t i, const Event& x,
                            const Tolerance& tol = {});

}  // namespace qmeas

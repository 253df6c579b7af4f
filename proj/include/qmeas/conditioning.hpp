// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qmeas/state.hpp"

namespace qmeas {

/// A conditional density operator together with the event it was conditioned
/// on and the normalizing probability (the denominator of the construction).
struct ConditionedState {
    DensityOperator state;
    Event conditioning_event;
    double normalizer;
};

/// Pr(X|Y) = Tr[rho E(X) E(Y)] / Tr[rho E(Y)] for a projective measure.
double conditional_probability_pvm(const DensityOperator& rho, const OperatorValuedMeasure& e,
                                   const Event& x, const Event& y, const Tolerance& tol = {});

/// rho|_Y = E(Y) rho E(Y) / Tr[rho E(Y)].  The result pairs with every event
/// operator to reproduce the conditional probabilities given Y.  No partial
/// trace is involved: this is not a reduced state.
ConditionedState condition_pvm(const DensityOperator& rho, const OperatorValuedMeasure& e,
                               const Event& y, const Tolerance& tol = {});

/// Full-space conditioning on a rectangle: sandwiches rho_ab between
/// 1 (x) M_b(Y) on the factor named by b_label and normalizes by the
/// sandwich's trace.  The output keeps the complete layout.
ConditionedState condition_rect_full(const DensityOperator& rho_ab,
                                     const OperatorValuedMeasure& mb, const std::string& b_label,
                                     const Event& y, const Tolerance& tol = {});

/// Reduced conditioning on a rectangle: tr_b{rho_ab [1 (x) M_b(Y)]} divided
/// by its trace.  This one-sided form is the normative definition and is
/// valid for arbitrary (also non-projective) measures; the result lives on
/// the layout with b_label removed.
ConditionedState condition_rect_reduced(const DensityOperator& rho_ab,
                                        const OperatorValuedMeasure& mb,
                                        const std::string& b_label, const Event& y,
                                        const Tolerance& tol = {});

}  // namespace qmeas

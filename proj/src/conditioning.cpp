// SPDX-License-Identifier: Apache-2.0
#include "qmeas/conditioning.hpp"

#include <cmath>

namespace qmeas {

namespace {

double require_positive_normalizer(double value, const Tolerance& tol, const char* what) {
    if (value <= tol.eq_abs)
        throw ZeroProbabilityCondition(std::string(what) + ": conditioning probability " +
                                       std::to_string(value) + " is not positive");
    return value;
}

}  // namespace

double conditional_probability_pvm(const DensityOperator& rho, const OperatorValuedMeasure& e,
                                   const Event& x, const Event& y, const Tolerance& tol) {
    if (!e.projective())
        throw NotProjective("conditional_probability_pvm requires a projective measure");
    if (rho.dim() != e.dim())
        throw DimensionMismatch("conditional_probability_pvm: dims differ");
    if (x.space() != e.space() || y.space() != e.space())
        throw SpaceMismatch("conditional_probability_pvm: events on a different space");

    const Matrix ex = event_operator(e, x);
    const Matrix ey = event_operator(e, y);
    const double denom =
        require_positive_normalizer(trace(rho.matrix() * ey).real(), tol, "conditional");
    const double num = trace(rho.matrix() * ex * ey).real();
    return std::clamp(num / denom, 0.0, 1.0);
}

ConditionedState condition_pvm(const DensityOperator& rho, const OperatorValuedMeasure& e,
                               const Event& y, const Tolerance& tol) {
    if (!e.projective()) throw NotProjective("condition_pvm requires a projective measure");
    if (rho.dim() != e.dim()) throw DimensionMismatch("condition_pvm: dims differ");
    if (y.space() != e.space()) throw SpaceMismatch("condition_pvm: event on a different space");

    const Matrix ey = event_operator(e, y);
    const double denom =
        require_positive_normalizer(trace(rho.matrix() * ey).real(), tol, "condition_pvm");
    const Matrix conditioned = symmetrized(ey * rho.matrix() * ey / denom);
    return {DensityOperator(conditioned, rho.layout(), tol), y, denom};
}

ConditionedState condition_rect_full(const DensityOperator& rho_ab,
                                     const OperatorValuedMeasure& mb, const std::string& b_label,
                                     const Event& y, const Tolerance& tol) {
    if (mb.dim() != rho_ab.layout().dim_of(b_label))
        throw DimensionMismatch("condition_rect_full: measure dim does not match factor '" +
                                b_label + "'");
    if (y.space() != mb.space())
        throw SpaceMismatch("condition_rect_full: event on a different space");

    const Matrix my = embed(event_operator(mb, y), {b_label}, rho_ab.layout());
    const Matrix sandwich = my * rho_ab.matrix() * my;
    // Normalizing by the sandwich's own trace keeps the output a density
    // operator for arbitrary measures; for projective ones it coincides with
    // Tr{rho [1 (x) E(Y)]}.
    const double denom =
        require_positive_normalizer(trace(sandwich).real(), tol, "condition_rect_full");
    return {DensityOperator(symmetrized(sandwich / denom), rho_ab.layout(), tol), y, denom};
}

ConditionedState condition_rect_reduced(const DensityOperator& rho_ab,
                                        const OperatorValuedMeasure& mb,
                                        const std::string& b_label, const Event& y,
                                        const Tolerance& tol) {
    if (mb.dim() != rho_ab.layout().dim_of(b_label))
        throw DimensionMismatch("condition_rect_reduced: measure dim does not match factor '" +
                                b_label + "'");
    if (y.space() != mb.space())
        throw SpaceMismatch("condition_rect_reduced: event on a different space");
    if (rho_ab.layout().size() < 2)
        throw DimensionMismatch("condition_rect_reduced: layout has no factor left to keep");

    const Matrix my = embed(event_operator(mb, y), {b_label}, rho_ab.layout());
    auto [reduced, kept_layout] =
        partial_trace(rho_ab.matrix() * my, rho_ab.layout(), {b_label});
    const double denom =
        require_positive_normalizer(trace(reduced).real(), tol, "condition_rect_reduced");
    return {DensityOperator(symmetrized(reduced / denom), kept_layout, tol), y, denom};
}

}  // namespace qmeas

// SPDX-License-Identifier: Apache-2.0
#include "qmeas/state.hpp"

#include <cmath>
#include <numeric>

namespace qmeas {

DensityOperator::DensityOperator(Matrix matrix, FactorLayout layout, const Tolerance& tol)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (matrix_.rows() != matrix_.cols())
        throw NonSquare("density operator must be square");
    if (matrix_.rows() != layout_.total_dim())
        throw DimensionMismatch("density operator dim " + std::to_string(matrix_.rows()) +
                                " does not match layout dim " +
                                std::to_string(layout_.total_dim()));
    if (!matrix_.allFinite()) throw ValidationFailure("density operator has non-finite entries");
    if (!is_hermitian(matrix_, tol)) throw NotHermitian("density operator is not hermitian");
    const Eigen::VectorXd evals = hermitian_eigenvalues(matrix_);
    if (evals(0) < tol.psd_floor * std::max(1.0, max_abs(matrix_)))
        throw NotPositive("density operator has eigenvalue " + std::to_string(evals(0)));
    const Complex tr = trace(matrix_);
    if (std::abs(tr - 1.0) > tol.eq_abs + tol.eq_rel)
        throw NotNormalized("density operator trace is " + std::to_string(tr.real()));
}

UnitaryOperator::UnitaryOperator(Matrix matrix, FactorLayout layout, const Tolerance& tol)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
    if (matrix_.rows() != matrix_.cols()) throw NonSquare("unitary operator must be square");
    if (matrix_.rows() != layout_.total_dim())
        throw DimensionMismatch("unitary dim does not match layout dim");
    if (!matrix_.allFinite()) throw ValidationFailure("unitary has non-finite entries");
    const Matrix gram = matrix_.adjoint() * matrix_;
    if (max_abs(gram - identity(matrix_.rows())) >
        tol.eq_abs + tol.eq_rel * std::max(1.0, max_abs(gram)))
        throw NotUnitary("operator is not unitary");
}

UnitaryOperator UnitaryOperator::identity_on(const FactorLayout& layout) {
    return UnitaryOperator(identity(layout.total_dim()), layout);
}

StateEnsemble::StateEnsemble(std::vector<double> priors, std::vector<DensityOperator> states,
                             const Tolerance& tol)
    : priors_(std::move(priors)), states_(std::move(states)) {
    if (priors_.size() != states_.size() || priors_.empty())
        throw LengthMismatch("ensemble needs matching, non-empty priors and states");
    for (double p : priors_)
        if (p < 0.0) throw NotPositive("ensemble prior " + std::to_string(p) + " is negative");
    const double sum = std::accumulate(priors_.begin(), priors_.end(), 0.0);
    if (std::abs(sum - 1.0) > tol.eq_abs + tol.eq_rel)
        throw NotNormalized("ensemble priors sum to " + std::to_string(sum));
    for (const auto& s : states_)
        if (!(s.layout() == states_[0].layout()))
            throw DimensionMismatch("ensemble states live on different layouts");
}

double StateEnsemble::prior(std::size_t i) const {
    if (i >= priors_.size()) throw IndexOutOfRange("ensemble index " + std::to_string(i));
    return priors_[i];
}

const DensityOperator& StateEnsemble::state(std::size_t i) const {
    if (i >= states_.size()) throw IndexOutOfRange("ensemble index " + std::to_string(i));
    return states_[i];
}

ProbabilityTable::ProbabilityTable(OutcomeSpace space, std::vector<double> values,
                                   const Tolerance& tol)
    : space_(std::move(space)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != space_.atoms)
        throw LengthMismatch("probability table length does not match outcome space");
    double sum = 0.0;
    for (double v : values_) {
        if (v < -tol.eq_abs)
            throw ProbabilityOutOfRange("table value " + std::to_string(v) + " is negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol.eq_abs * static_cast<double>(space_.atoms) + tol.eq_rel)
        throw NotNormalized("probability table sums to " + std::to_string(sum));
}

double ProbabilityTable::at(int atom) const {
    if (atom < 0 || atom >= space_.atoms)
        throw IndexOutOfRange("table atom " + std::to_string(atom));
    return values_[static_cast<std::size_t>(atom)];
}

DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u) {
    if (rho.dim() != u.dim())
        throw DimensionMismatch("evolve: state dim " + std::to_string(rho.dim()) +
                                ", unitary dim " + std::to_string(u.dim()));
    return DensityOperator(u.matrix() * rho.matrix() * u.matrix().adjoint(), rho.layout());
}

namespace {

double checked_probability(Complex raw, const Tolerance& tol, const char* what) {
    const double p = raw.real();
    if (p < -tol.eq_abs || p > 1.0 + tol.eq_abs)
        throw ProbabilityOutOfRange(std::string(what) + " produced " + std::to_string(p));
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double trace_rule(const DensityOperator& rho, const UnitaryOperator& u,
                  const OperatorValuedMeasure& m, const Event& x, const Tolerance& tol) {
    if (rho.dim() != u.dim() || rho.dim() != m.dim())
        throw DimensionMismatch("trace_rule: state, unitary and measure dims differ");
    if (x.space() != m.space())
        throw SpaceMismatch("trace_rule: event space '" + x.space().label +
                            "' vs measure space '" + m.space().label + "'");
    const Matrix evolved = u.matrix() * rho.matrix() * u.matrix().adjoint();
    return checked_probability(trace(evolved * event_operator(m, x)), tol, "trace rule");
}

double trace_rule(const DensityOperator& rho, const OperatorValuedMeasure& m, const Event& x,
                  const Tolerance& tol) {
    if (rho.dim() != m.dim())
        throw DimensionMismatch("trace_rule: state and measure dims differ");
    if (x.space() != m.space())
        throw SpaceMismatch("trace_rule: event space '" + x.space().label +
                            "' vs measure space '" + m.space().label + "'");
    return checked_probability(trace(rho.matrix() * event_operator(m, x)), tol, "trace rule");
}

ProbabilityTable probability_table(const DensityOperator& rho, const UnitaryOperator& u,
                                   const OperatorValuedMeasure& m, const Tolerance& tol) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(m.outcomes()));
    for (int j = 0; j < m.outcomes(); ++j)
        values.push_back(trace_rule(rho, u, m, Event::singleton(m.space(), j), tol));
    return ProbabilityTable(m.space(), std::move(values), tol);
}

ProbabilityTable probability_table(const DensityOperator& rho, const OperatorValuedMeasure& m,
                                   const Tolerance& tol) {
    return probability_table(rho, UnitaryOperator::identity_on(rho.layout()), m, tol);
}

double decision_joint(const StateEnsemble& ensemble, const UnitaryOperator& u,
                      const OperatorValuedMeasure& m, std::size_t i, const Event& x,
                      const Tolerance& tol) {
    const double prior = ensemble.prior(i);
    if (prior == 0.0) return 0.0;
    return prior * trace_rule(ensemble.state(i), u, m, x, tol);
}

double conditional_on_state(const StateEnsemble& ensemble, const UnitaryOperator& u,
                            const OperatorValuedMeasure& m, std::size_t i, const Event& x,
                            const Tolerance& tol) {
    if (ensemble.prior(i) <= tol.eq_abs)
        throw ZeroProbabilityCondition("conditioning on state with prior " +
                                       std::to_string(ensemble.prior(i)));
    return trace_rule(ensemble.state(i), u, m, x, tol);
}

}  // namespace qmeas

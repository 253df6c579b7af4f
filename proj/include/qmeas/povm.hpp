// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qmeas/linalg.hpp"
#include "qmeas/outcome_space.hpp"
#include "qmeas/types.hpp"

namespace qmeas {

enum class MeasureKind { general, projective };

struct AxiomCheck {
    std::string name;
    double residual = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Outcome of checking the measure axioms on a set of atoms.  `valid` covers
/// hermiticity, positivity and completeness; `projective` additionally
/// requires idempotent, mutually orthogonal atoms.
struct ValidationReport {
    std::vector<AxiomCheck> checks;
    bool valid = false;
    bool projective = false;
};

ValidationReport validate_povm(const OutcomeSpace& space, const std::vector<Matrix>& atoms,
                               const Tolerance& tol = {});

/// Positive operator-valued measure on a finite outcome space: one positive
/// atom per outcome, atoms summing to the identity.  The projective flag is
/// established by the constructor's own checks, never taken from input data.
class OperatorValuedMeasure {
  public:
    OperatorValuedMeasure(OutcomeSpace space, std::vector<Matrix> atoms,
                          const Tolerance& tol = {});

    const OutcomeSpace& space() const { return space_; }
    Index dim() const { return dim_; }
    MeasureKind kind() const { return kind_; }
    bool projective() const { return kind_ == MeasureKind::projective; }
    int outcomes() const { return space_.atoms; }
    const std::vector<Matrix>& atoms() const { return atoms_; }
    const Matrix& atom(int j) const;

  private:
    OutcomeSpace space_;
    std::vector<Matrix> atoms_;
    Index dim_ = 0;
    MeasureKind kind_ = MeasureKind::general;
};

ValidationReport validate(const OperatorValuedMeasure& m, const Tolerance& tol = {});

/// Sum of atoms over the event's members; the empty event gives the zero
/// matrix, the full event the identity.
Matrix event_operator(const OperatorValuedMeasure& m, const Event& x);

/// Tensor product measure on the canonical product space; atom (i, j) is
/// kron(a_i, b_j).  Projective exactly when both inputs are.
OperatorValuedMeasure tensor_povm(const OperatorValuedMeasure& a,
                                  const OperatorValuedMeasure& b);

/// Spectral norm of M(X n Y) - M(X) M(Y); zero for projective measures, the
/// size of the failure of the intersection-product law otherwise.
double product_obstacle_residual(const OperatorValuedMeasure& m, const Event& x, const Event& y);

// --- named measures used as shared fixtures ---

/// Projectors onto the standard basis.
OperatorValuedMeasure computational_pvm(Index dim, const std::string& space_label = "Z");
/// Projectors onto the discrete-Fourier basis.
OperatorValuedMeasure fourier_pvm(Index dim, const std::string& space_label = "F");
/// Three symmetric qubit states at mutual overlap 1/2, weight 2/3 each.
OperatorValuedMeasure trine_povm(const std::string& space_label = "trine");
/// Trine conjugated by a real rotation of the given angle.
OperatorValuedMeasure rotated_trine_povm(double angle_rad,
                                         const std::string& space_label = "trine");
/// Four-outcome qubit measure mixing the Z and X basis projectors at weight
/// 1/2 each: {|0>, |1>, |+>, |->} scaled by 1/2.
OperatorValuedMeasure bb84_povm(const std::string& space_label = "bb84");

}  // namespace qmeas

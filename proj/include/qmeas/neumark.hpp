// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qmeas/state.hpp"

namespace qmeas {

/// Realization of a measure M on dim d as the compression of a projective
/// measure E+ on an extended space of dim D: M(X) = (Q E+(X) Q) restricted to
/// the base space, which is embedded as the span of the first d coordinates,
/// so Q = diag(I_d, 0).
struct NeumarkDilation {
    Index base_dim = 0;
    Index extended_dim = 0;
    OperatorValuedMeasure extended_pvm;
    Matrix q_projection;
    bool canonical_embedding = true;
};

struct FamilyMember {
    OperatorValuedMeasure extended_pvm;  ///< E+_beta, projective on the shared extended space
    Matrix rotation;                     ///< U+_beta with E+_beta(X) = U+_beta^dag E+(X) U+_beta
};

/// A whole family of measures compressed through one projection Q on one
/// extended space; member 0 is the reference frame for the rotations.
struct FamilyDilation {
    Index base_dim = 0;
    Index extended_dim = 0;
    Matrix shared_q;
    std::vector<FamilyMember> members;
};

/// A (x) 0: the operator acting as `a` on the first block of coordinates and
/// as zero on the rest.
Matrix oplus_zero(const Matrix& a, Index extended_dim);

/// Top-left block: the restriction of Q C Q to the embedded base space.
Matrix restrict_to_base(const Matrix& c_plus, Index base_dim);

/// Builds the canonical dilation with D = n * d: stack the atom square roots
/// into an isometry, complete it to a unitary, and conjugate the block
/// projectors back.  The extended measure is projective by construction.
NeumarkDilation dilate(const OperatorValuedMeasure& m, const Tolerance& tol = {});

/// rho (x) 0 on the extended space (single-factor layout labeled "ext").
DensityOperator lift_state(const DensityOperator& rho, const NeumarkDilation& dil);

/// max over atoms of |Tr[rho M(j)] - Tr+[lift(rho) E+(j)]|.
double verify_lifting(const DensityOperator& rho, const OperatorValuedMeasure& m,
                      const NeumarkDilation& dil, const Tolerance& tol = {});

/// Dilates measures sharing dim and atom count through a single Q; per-member
/// rotations relate each extended measure to member 0's.
FamilyDilation dilate_family(const std::vector<OperatorValuedMeasure>& members,
                             const Tolerance& tol = {});

struct ObstacleReport {
    Matrix lhs;       ///< restriction of Q E+(X) E+(Y) Q, i.e. M(X n Y)
    Matrix rhs;       ///< M(X) M(Y)
    double residual;  ///< spectral norm of lhs - rhs
};

/// Quantifies the failure of compressing operator products: the intersection
/// event compresses to M(X n Y), which differs from M(X) M(Y) unless M is
/// projective.
ObstacleReport obstacle_report(const OperatorValuedMeasure& m, const NeumarkDilation& dil,
                               const Event& x, const Event& y);

}  // namespace qmeas

// SPDX-License-Identifier: Apache-2.0
#include "qmeas/neumark.hpp"

#include <cmath>

namespace qmeas {

Matrix oplus_zero(const Matrix& a, Index extended_dim) {
    if (a.rows() != a.cols()) throw NonSquare("oplus_zero: block must be square");
    if (a.rows() > extended_dim)
        throw DimensionMismatch("oplus_zero: block larger than extended space");
    Matrix out = Matrix::Zero(extended_dim, extended_dim);
    out.topLeftCorner(a.rows(), a.cols()) = a;
    return out;
}

Matrix restrict_to_base(const Matrix& c_plus, Index base_dim) {
    if (c_plus.rows() < base_dim || c_plus.cols() < base_dim)
        throw DimensionMismatch("restrict_to_base: matrix smaller than base space");
    return c_plus.topLeftCorner(base_dim, base_dim);
}

namespace {

// Isometry stacking the atom square roots: block row j is sqrt(M_j), so
// V^dag V = sum_j M_j = I.
Matrix stacked_root_isometry(const OperatorValuedMeasure& m, const Tolerance& tol) {
    const Index d = m.dim();
    const int n = m.outcomes();
    Matrix v(static_cast<Index>(n) * d, d);
    for (int j = 0; j < n; ++j)
        v.block(static_cast<Index>(j) * d, 0, d, d) = hermitian_sqrt(m.atom(j), tol);
    return v;
}

// E+(j) = W^dag (|j><j| (x) I_d) W for the completed unitary W.
std::vector<Matrix> conjugated_block_projectors(const Matrix& w, Index d, int n) {
    std::vector<Matrix> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    const Index big = w.rows();
    for (int j = 0; j < n; ++j) {
        Matrix block = Matrix::Zero(big, big);
        block.block(static_cast<Index>(j) * d, static_cast<Index>(j) * d, d, d) = identity(d);
        atoms.push_back(w.adjoint() * block * w);
    }
    return atoms;
}

}  // namespace

NeumarkDilation dilate(const OperatorValuedMeasure& m, const Tolerance& tol) {
    const Index d = m.dim();
    const int n = m.outcomes();
    const Index big = static_cast<Index>(n) * d;

    Matrix w;
    try {
        w = complete_to_unitary(stacked_root_isometry(m, tol), tol);
    } catch (const Error& e) {
        throw InvalidPovm(std::string("dilate: ") + e.what());
    }

    OperatorValuedMeasure extended(m.space(), conjugated_block_projectors(w, d, n), tol);
    if (!extended.projective())
        throw InvalidPovm("dilate: extended measure failed the projectivity check");

    return NeumarkDilation{d, big, std::move(extended), oplus_zero(identity(d), big), true};
}

DensityOperator lift_state(const DensityOperator& rho, const NeumarkDilation& dil) {
    if (rho.dim() != dil.base_dim)
        throw DimensionMismatch("lift_state: state dim " + std::to_string(rho.dim()) +
                                ", base dim " + std::to_string(dil.base_dim));
    return DensityOperator(oplus_zero(rho.matrix(), dil.extended_dim),
                           FactorLayout{{"ext", dil.extended_dim}});
}

double verify_lifting(const DensityOperator& rho, const OperatorValuedMeasure& m,
                      const NeumarkDilation& dil, const Tolerance&) {
    if (m.dim() != dil.base_dim || rho.dim() != dil.base_dim)
        throw DimensionMismatch("verify_lifting: dims do not match the dilation");
    if (m.outcomes() != dil.extended_pvm.outcomes())
        throw DimensionMismatch("verify_lifting: outcome counts differ");
    const DensityOperator lifted = lift_state(rho, dil);
    double worst = 0.0;
    for (int j = 0; j < m.outcomes(); ++j) {
        const double base = trace(rho.matrix() * m.atom(j)).real();
        const double upstairs = trace(lifted.matrix() * dil.extended_pvm.atom(j)).real();
        worst = std::max(worst, std::abs(base - upstairs));
    }
    return worst;
}

FamilyDilation dilate_family(const std::vector<OperatorValuedMeasure>& members,
                             const Tolerance& tol) {
    if (members.empty()) throw HeterogeneousFamily("dilate_family: empty family");
    const Index d = members[0].dim();
    const int n = members[0].outcomes();
    for (const auto& m : members)
        if (m.dim() != d || m.outcomes() != n)
            throw HeterogeneousFamily("dilate_family: members differ in dim or atom count");

    const Index big = static_cast<Index>(n) * d;

    std::vector<Matrix> completions;
    completions.reserve(members.size());
    for (const auto& m : members) {
        try {
            completions.push_back(complete_to_unitary(stacked_root_isometry(m, tol), tol));
        } catch (const Error& e) {
            throw InvalidPovm(std::string("dilate_family: ") + e.what());
        }
    }

    FamilyDilation family;
    family.base_dim = d;
    family.extended_dim = big;
    family.shared_q = oplus_zero(identity(d), big);
    const Matrix& w0 = completions[0];
    for (std::size_t beta = 0; beta < members.size(); ++beta) {
        const Matrix& wb = completions[beta];
        // Carries the reference frame to member beta's:
        //   E+_beta(j) = rotation^dag E+_0(j) rotation with rotation = W_0^dag W_beta.
        Matrix rotation = w0.adjoint() * wb;
        OperatorValuedMeasure extended(members[beta].space(),
                                       conjugated_block_projectors(wb, d, n), tol);
        family.members.push_back({std::move(extended), std::move(rotation)});
    }
    return family;
}

ObstacleReport obstacle_report(const OperatorValuedMeasure& m, const NeumarkDilation& dil,
                               const Event& x, const Event& y) {
    if (m.dim() != dil.base_dim)
        throw DimensionMismatch("obstacle_report: measure does not match the dilation");
    const Matrix ex = event_operator(dil.extended_pvm, x);
    const Matrix ey = event_operator(dil.extended_pvm, y);
    Matrix lhs = restrict_to_base(dil.q_projection * ex * ey * dil.q_projection, dil.base_dim);
    Matrix rhs = event_operator(m, x) * event_operator(m, y);
    const double residual = spectral_norm(lhs - rhs);
    return {std::move(lhs), std::move(rhs), residual};
}

}  // namespace qmeas

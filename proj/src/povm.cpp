// SPDX-License-Identifier: Apache-2.0
#include "qmeas/povm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qmeas {

ValidationReport validate_povm(const OutcomeSpace& space, const std::vector<Matrix>& atoms,
                               const Tolerance& tol) {
    ValidationReport report;
    auto add = [&](const std::string& name, double residual, double bound) {
        report.checks.push_back({name, residual, bound, residual <= bound});
        return residual <= bound;
    };

    if (atoms.empty() || static_cast<int>(atoms.size()) != space.atoms) {
        report.checks.push_back({"atom count matches outcome space", 1.0, 0.0, false});
        report.valid = false;
        return report;
    }
    const Index dim = atoms[0].rows();
    bool shapes_ok = dim >= 1;
    for (const auto& a : atoms)
        shapes_ok = shapes_ok && a.rows() == dim && a.cols() == dim && a.allFinite();
    if (!add("atoms square, finite, equal dim", shapes_ok ? 0.0 : 1.0, 0.0)) {
        report.valid = false;
        return report;
    }

    const double scale = [&] {
        double s = 1.0;
        for (const auto& a : atoms) s = std::max(s, max_abs(a));
        return s;
    }();
    const double entry_bound = tol.eq_abs + tol.eq_rel * scale;

    double herm = 0.0;
    for (const auto& a : atoms) herm = std::max(herm, max_abs(a - a.adjoint()));
    bool ok = add("atoms hermitian", herm, entry_bound);

    double min_eval = 0.0;
    for (const auto& a : atoms) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(a);
        if (ev.size() > 0) min_eval = std::min(min_eval, ev(0));
    }
    ok = add("atoms positive", std::max(0.0, -min_eval), -tol.psd_floor * scale) && ok;

    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& a : atoms) sum += a;
    ok = add("atoms sum to identity", max_abs(sum - identity(dim)), entry_bound) && ok;

    report.valid = ok;

    // Projectivity: idempotent atoms that annihilate each other.  Spectral
    // residuals so a failure reads as an operator size.
    double idem = 0.0, orth = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        idem = std::max(idem, spectral_norm(atoms[i] * atoms[i] - atoms[i]));
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            orth = std::max(orth, spectral_norm(atoms[i] * atoms[j]));
    }
    const bool proj_idem = idem <= entry_bound * dim;
    const bool proj_orth = orth <= entry_bound * dim;
    report.checks.push_back({"atoms idempotent (projective)", idem, entry_bound * dim, proj_idem});
    report.checks.push_back(
        {"atoms mutually orthogonal (projective)", orth, entry_bound * dim, proj_orth});
    report.projective = report.valid && proj_idem && proj_orth;
    return report;
}

OperatorValuedMeasure::OperatorValuedMeasure(OutcomeSpace space, std::vector<Matrix> atoms,
                                             const Tolerance& tol)
    : space_(std::move(space)), atoms_(std::move(atoms)) {
    const ValidationReport report = validate_povm(space_, atoms_, tol);
    if (!report.valid) {
        std::ostringstream msg;
        msg << "invalid measure on space '" << space_.label << "':";
        for (const auto& c : report.checks)
            if (!c.pass) msg << " [" << c.name << " residual " << c.residual << "]";
        throw InvalidPovm(msg.str());
    }
    dim_ = atoms_[0].rows();
    kind_ = report.projective ? MeasureKind::projective : MeasureKind::general;
}

const Matrix& OperatorValuedMeasure::atom(int j) const {
    if (j < 0 || j >= space_.atoms)
        throw IndexOutOfRange("measure atom " + std::to_string(j) + " out of range");
    return atoms_[static_cast<std::size_t>(j)];
}

ValidationReport validate(const OperatorValuedMeasure& m, const Tolerance& tol) {
    return validate_povm(m.space(), m.atoms(), tol);
}

Matrix event_operator(const OperatorValuedMeasure& m, const Event& x) {
    if (x.space() != m.space())
        throw SpaceMismatch("event_operator: event on '" + x.space().label +
                            "', measure on '" + m.space().label + "'");
    Matrix out = Matrix::Zero(m.dim(), m.dim());
    for (int j : x.members()) out += m.atom(j);
    return out;
}

OperatorValuedMeasure tensor_povm(const OperatorValuedMeasure& a,
                                  const OperatorValuedMeasure& b) {
    std::vector<Matrix> atoms;
    atoms.reserve(static_cast<std::size_t>(a.outcomes()) * static_cast<std::size_t>(b.outcomes()));
    for (int i = 0; i < a.outcomes(); ++i)
        for (int j = 0; j < b.outcomes(); ++j) atoms.push_back(kron(a.atom(i), b.atom(j)));
    return OperatorValuedMeasure(product_space(a.space(), b.space()), std::move(atoms));
}

double product_obstacle_residual(const OperatorValuedMeasure& m, const Event& x,
                                 const Event& y) {
    const Matrix lhs = event_operator(m, intersect(x, y));
    const Matrix rhs = event_operator(m, x) * event_operator(m, y);
    return spectral_norm(lhs - rhs);
}

namespace {

Matrix basis_projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace

OperatorValuedMeasure computational_pvm(Index dim, const std::string& space_label) {
    std::vector<Matrix> atoms;
    for (Index j = 0; j < dim; ++j) {
        Vector e = Vector::Zero(dim);
        e(j) = 1.0;
        atoms.push_back(basis_projector(e));
    }
    return OperatorValuedMeasure(OutcomeSpace(space_label, static_cast<int>(dim)),
                                 std::move(atoms));
}

OperatorValuedMeasure fourier_pvm(Index dim, const std::string& space_label) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Matrix> atoms;
    for (Index j = 0; j < dim; ++j) {
        Vector f(dim);
        for (Index k = 0; k < dim; ++k) {
            const double phase =
                2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(dim);
            f(k) = norm * Complex(std::cos(phase), std::sin(phase));
        }
        atoms.push_back(basis_projector(f));
    }
    return OperatorValuedMeasure(OutcomeSpace(space_label, static_cast<int>(dim)),
                                 std::move(atoms));
}

OperatorValuedMeasure rotated_trine_povm(double angle_rad, const std::string& space_label) {
    std::vector<Matrix> atoms;
    for (int k = 0; k < 3; ++k) {
        const double theta = angle_rad + k * std::numbers::pi / 3.0;
        Vector psi(2);
        psi << std::cos(theta), std::sin(theta);
        atoms.push_back((2.0 / 3.0) * basis_projector(psi));
    }
    return OperatorValuedMeasure(OutcomeSpace(space_label, 3), std::move(atoms));
}

OperatorValuedMeasure trine_povm(const std::string& space_label) {
    return rotated_trine_povm(0.0, space_label);
}

OperatorValuedMeasure bb84_povm(const std::string& space_label) {
    const double r = 1.0 / std::sqrt(2.0);
    Vector zero(2), one(2), plus(2), minus(2);
    zero << 1, 0;
    one << 0, 1;
    plus << r, r;
    minus << r, -r;
    std::vector<Matrix> atoms = {0.5 * basis_projector(zero), 0.5 * basis_projector(one),
                                 0.5 * basis_projector(plus), 0.5 * basis_projector(minus)};
    return OperatorValuedMeasure(OutcomeSpace(space_label, 4), std::move(atoms));
}

}  // namespace qmeas

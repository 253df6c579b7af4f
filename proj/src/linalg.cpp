// SPDX-License-Identifier: Apache-2.0
#include "qmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qmeas {

FactorLayout::FactorLayout(std::initializer_list<Factor> factors) : factors_(factors) {
    check();
}

FactorLayout::FactorLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    check();
}

void FactorLayout::check() {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].dim < 1)
            throw DimensionMismatch("layout factor '" + factors_[i].label + "' has dim " +
                                    std::to_string(factors_[i].dim));
        for (std::size_t j = i + 1; j < factors_.size(); ++j)
            if (factors_[i].label == factors_[j].label)
                throw UnknownLabel("duplicate factor label '" + factors_[i].label + "'");
    }
}

Index FactorLayout::total_dim() const {
    Index d = 1;
    for (const auto& f : factors_) d *= f.dim;
    return d;
}

bool FactorLayout::has(const std::string& label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

std::size_t FactorLayout::position(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label == label) return i;
    throw UnknownLabel("no factor labeled '" + label + "'");
}

Index FactorLayout::dim_of(const std::string& label) const {
    return factors_[position(label)].dim;
}

bool operator==(const FactorLayout& a, const FactorLayout& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
        if (a.factors_[i].label != b.factors_[i].label || a.factors_[i].dim != b.factors_[i].dim)
            return false;
    return true;
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shapes differ");
    return max_abs(a - b);
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

bool approx_eq(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("approx_eq: shapes differ");
    const double scale = std::max(max_abs(a), max_abs(b));
    return max_abs(a - b) <= tol.eq_abs + tol.eq_rel * scale;
}

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol.eq_abs + tol.eq_rel * max_abs(m);
}

Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

namespace {

// Row-major strides of a layout: stride of factor i is the product of the
// dims of all later factors.
std::vector<Index> layout_strides(const FactorLayout& layout) {
    std::vector<Index> strides(layout.size(), 1);
    for (std::size_t i = layout.size(); i-- > 1;)
        strides[i - 1] = strides[i] * layout[i].dim;
    return strides;
}

}  // namespace

std::pair<Matrix, FactorLayout> partial_trace(const Matrix& m, const FactorLayout& layout,
                                              const std::set<std::string>& traced_labels) {
    const Index n = layout.total_dim();
    if (m.rows() != m.cols() || m.rows() != n)
        throw DimensionMismatch("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", layout dim is " + std::to_string(n));
    for (const auto& label : traced_labels)
        if (!layout.has(label)) throw UnknownLabel("partial_trace: no factor '" + label + "'");

    std::vector<std::size_t> kept, traced;
    std::vector<Factor> kept_factors;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (traced_labels.count(layout[i].label)) {
            traced.push_back(i);
        } else {
            kept.push_back(i);
            kept_factors.push_back(layout[i]);
        }
    }

    const auto strides = layout_strides(layout);
    Index kept_dim = 1, traced_dim = 1;
    for (auto i : kept) kept_dim *= layout[i].dim;
    for (auto i : traced) traced_dim *= layout[i].dim;

    // Offset of a multi-index within the full space, for an ordered factor
    // subset enumerated as a single flat counter.
    auto offsets = [&](const std::vector<std::size_t>& positions, Index count) {
        std::vector<Index> out(static_cast<std::size_t>(count), 0);
        for (Index flat = 0; flat < count; ++flat) {
            Index rest = flat, off = 0;
            for (std::size_t p = positions.size(); p-- > 0;) {
                const Index d = layout[positions[p]].dim;
                off += (rest % d) * strides[positions[p]];
                rest /= d;
            }
            out[static_cast<std::size_t>(flat)] = off;
        }
        return out;
    };
    const auto kept_off = offsets(kept, kept_dim);
    const auto traced_off = offsets(traced, traced_dim);

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Index r = 0; r < kept_dim; ++r)
        for (Index c = 0; c < kept_dim; ++c) {
            Complex sum = 0;
            for (Index t = 0; t < traced_dim; ++t)
                sum += m(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            out(r, c) = sum;
        }
    return {std::move(out), FactorLayout(std::move(kept_factors))};
}

Matrix embed(const Matrix& op, const std::vector<std::string>& op_labels,
             const FactorLayout& layout) {
    if (op.rows() != op.cols()) throw NonSquare("embed: operator must be square");
    Index op_dim = 1;
    std::vector<std::size_t> op_pos;
    for (const auto& label : op_labels) {
        op_pos.push_back(layout.position(label));  // throws UnknownLabel
        op_dim *= layout.dim_of(label);
    }
    for (std::size_t i = 0; i < op_pos.size(); ++i)
        for (std::size_t j = i + 1; j < op_pos.size(); ++j)
            if (op_pos[i] == op_pos[j])
                throw UnknownLabel("embed: repeated label '" + op_labels[i] + "'");
    if (op.rows() != op_dim)
        throw DimensionMismatch("embed: operator dim " + std::to_string(op.rows()) +
                                " does not match factors dim " + std::to_string(op_dim));

    const Index n = layout.total_dim();
    const auto strides = layout_strides(layout);

    // op-space strides in op_labels order (row-major over the listed factors)
    std::vector<Index> op_strides(op_pos.size(), 1);
    for (std::size_t i = op_pos.size(); i-- > 1;)
        op_strides[i - 1] = op_strides[i] * layout[op_pos[i]].dim;

    std::vector<bool> in_op(layout.size(), false);
    for (auto p : op_pos) in_op[p] = true;

    // Factor digits of every full index, plus its projection onto op space.
    std::vector<Index> op_index(static_cast<std::size_t>(n), 0);
    std::vector<Index> rest_key(static_cast<std::size_t>(n), 0);
    for (Index full = 0; full < n; ++full) {
        Index oi = 0, rk = 0;
        for (std::size_t f = 0; f < layout.size(); ++f) {
            const Index digit = (full / strides[f]) % layout[f].dim;
            if (in_op[f]) {
                const auto where =
                    std::find(op_pos.begin(), op_pos.end(), f) - op_pos.begin();
                oi += digit * op_strides[static_cast<std::size_t>(where)];
            } else {
                rk = rk * layout[f].dim + digit;
            }
        }
        op_index[static_cast<std::size_t>(full)] = oi;
        rest_key[static_cast<std::size_t>(full)] = rk;
    }

    Matrix out = Matrix::Zero(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            if (rest_key[static_cast<std::size_t>(r)] == rest_key[static_cast<std::size_t>(c)])
                out(r, c) = op(op_index[static_cast<std::size_t>(r)],
                               op_index[static_cast<std::size_t>(c)]);
    return out;
}

Matrix hermitian_sqrt(const Matrix& m, const Tolerance& tol) {
    if (m.rows() != m.cols()) throw NonSquare("hermitian_sqrt: matrix must be square");
    if (!is_hermitian(m, tol)) throw NotHermitian("hermitian_sqrt: input is not hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
    Eigen::VectorXd evals = es.eigenvalues();
    const double scale = std::max(1.0, max_abs(m));
    for (Index i = 0; i < evals.size(); ++i) {
        if (evals(i) < tol.psd_floor * scale)
            throw NotPositive("hermitian_sqrt: eigenvalue " + std::to_string(evals(i)) +
                              " below admissible floor");
        if (evals(i) < 0) evals(i) = 0;
    }
    const Eigen::VectorXd roots = evals.cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix complete_to_unitary(const Matrix& iso, const Tolerance& tol) {
    const Index rows = iso.rows(), cols = iso.cols();
    if (rows < cols) throw NotIsometry("complete_to_unitary: more columns than rows");
    const Matrix gram = iso.adjoint() * iso;
    if (max_abs(gram - identity(cols)) > tol.eq_abs + tol.eq_rel * std::max(1.0, max_abs(gram)))
        throw NotIsometry("complete_to_unitary: columns are not orthonormal");
    if (rows == cols) return iso;

    Eigen::HouseholderQR<Matrix> qr(iso);
    const Matrix q = qr.householderQ();
    Matrix u(rows, rows);
    u.leftCols(cols) = iso;
    // The trailing QR columns span the orthogonal complement of range(iso).
    u.rightCols(rows - cols) = q.rightCols(rows - cols);
    return u;
}

}  // namespace qmeas

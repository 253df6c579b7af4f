// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmeas/errors.hpp"
#include "qmeas/types.hpp"

namespace qmeas {

/// One labeled tensor factor of a composite Hilbert space.
struct Factor {
    std::string label;
    Index dim = 0;
};

/// Ordered list of labeled tensor factors.  The composite index is row-major:
/// the first factor is the most significant digit of a basis index.
class FactorLayout {
  public:
    FactorLayout() = default;
    FactorLayout(std::initializer_list<Factor> factors);
    explicit FactorLayout(std::vector<Factor> factors);

    Index total_dim() const;
    std::size_t size() const { return factors_.size(); }
    const Factor& operator[](std::size_t i) const { return factors_[i]; }
    const std::vector<Factor>& factors() const { return factors_; }

    bool has(const std::string& label) const;
    /// Position of a factor; throws UnknownLabel.
    std::size_t position(const std::string& label) const;
    Index dim_of(const std::string& label) const;

    auto begin() const { return factors_.begin(); }
    auto end() const { return factors_.end(); }

    friend bool operator==(const FactorLayout& a, const FactorLayout& b);

  private:
    void check();
    std::vector<Factor> factors_;
};

/// Kronecker product as a matrix of b-sized blocks: block (j,k) is a(j,k)*b.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index j = 0; j < a.rows(); ++j)
        for (Index k = 0; k < a.cols(); ++k)
            out.block(j * b.rows(), k * b.cols(), b.rows(), b.cols()) = Complex(a(j, k)) * b;
    return out;
}

/// Trace of a square matrix; throws NonSquare.
template <typename Derived>
Complex trace(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols())
        throw NonSquare("trace: matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    Complex t = 0;
    for (Index j = 0; j < m.rows(); ++j) t += Complex(m(j, j));
    return t;
}

Matrix identity(Index dim);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Entrywise comparison: max|a-b| <= eq_abs + eq_rel * max(|a|, |b|).
bool approx_eq(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// max|m - m^dag| <= eq_abs + eq_rel * |m|, one metric used everywhere.
bool is_hermitian(const Matrix& m, const Tolerance& tol = {});

/// (m + m^dag) / 2
Matrix symmetrized(const Matrix& m);

/// Eigenvalues of a (symmetrized) Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Partial trace over the factors named in traced_labels.  Returns the
/// contracted matrix together with the layout of the kept factors (original
/// order preserved).  Tracing every factor yields a 1x1 matrix holding the
/// full trace; tracing nothing returns the input unchanged.
std::pair<Matrix, FactorLayout> partial_trace(const Matrix& m, const FactorLayout& layout,
                                              const std::set<std::string>& traced_labels);

/// The operator on the full layout acting as `op` on the factors named by
/// op_labels (in that order) and as identity elsewhere.  Factor permutations
/// are resolved by an explicit index bijection, so op_labels need not be
/// adjacent or in layout order.
Matrix embed(const Matrix& op, const std::vector<std::string>& op_labels,
             const FactorLayout& layout);

/// Hermitian square root via eigendecomposition.  The input is symmetrized
/// first; eigenvalues in [psd_floor, 0) are clamped to zero, anything below
/// psd_floor throws NotPositive.
Matrix hermitian_sqrt(const Matrix& m, const Tolerance& tol = {});

/// Completes an isometry (rows >= cols, iso^dag iso = I) to a square unitary
/// whose leading columns are exactly `iso`.
Matrix complete_to_unitary(const Matrix& iso, const Tolerance& tol = {});

}  // namespace qmeas

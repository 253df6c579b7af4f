// SPDX-License-Identifier: Apache-2.0
#include "qmeas/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qmeas {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ULL ^ master;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
}

Matrix random_hermitian(Rng& rng, Index dim) {
    return symmetrized(random_matrix(rng, dim, dim));
}

Matrix random_psd(Rng& rng, Index dim) {
    const Matrix x = random_matrix(rng, dim, dim);
    return x.adjoint() * x;
}

Vector random_ket(Rng& rng, Index dim) {
    Vector v = random_matrix(rng, dim, 1);
    return v / v.norm();
}

Matrix random_unitary(Rng& rng, Index dim) {
    const Matrix g = random_matrix(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
    }
    return q;
}

DensityOperator random_density(Rng& rng, FactorLayout layout) {
    const Index dim = layout.total_dim();
    Matrix p = random_psd(rng, dim);
    p /= trace(p).real();
    return DensityOperator(symmetrized(p), std::move(layout));
}

UnitaryOperator random_unitary_on(Rng& rng, FactorLayout layout) {
    const Index dim = layout.total_dim();
    return UnitaryOperator(random_unitary(rng, dim), std::move(layout));
}

OperatorValuedMeasure random_povm(Rng& rng, Index dim, int outcomes,
                                  const std::string& space_label) {
    std::vector<Matrix> raw;
    Matrix sum = Matrix::Zero(dim, dim);
    for (int j = 0; j < outcomes; ++j) {
        raw.push_back(random_psd(rng, dim));
        sum += raw.back();
    }
    // Whiten: s^-1/2 G_j s^-1/2 sums to the identity.
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(sum));
    const Matrix inv_root = es.eigenvectors() *
                            es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix() *
                            es.eigenvectors().adjoint();
    std::vector<Matrix> atoms;
    atoms.reserve(raw.size());
    for (const auto& g : raw) atoms.push_back(symmetrized(inv_root * g * inv_root));
    return OperatorValuedMeasure(OutcomeSpace(space_label, outcomes), std::move(atoms));
}

OperatorValuedMeasure random_pvm(Rng& rng, Index dim, int outcomes,
                                 const std::string& space_label) {
    if (outcomes > dim)
        throw InvalidPovm("random_pvm: more atoms than dimensions");
    const Matrix u = random_unitary(rng, dim);

    // Assign each basis column to an atom; every atom gets at least one.
    std::vector<int> owner(static_cast<std::size_t>(dim));
    for (Index c = 0; c < dim; ++c)
        owner[static_cast<std::size_t>(c)] =
            c < outcomes ? static_cast<int>(c)
                         : static_cast<int>(std::uniform_int_distribution<int>(
                               0, outcomes - 1)(rng));

    std::vector<Matrix> atoms(static_cast<std::size_t>(outcomes),
                              Matrix::Zero(dim, dim));
    for (Index c = 0; c < dim; ++c)
        atoms[static_cast<std::size_t>(owner[static_cast<std::size_t>(c)])] +=
            u.col(c) * u.col(c).adjoint();
    return OperatorValuedMeasure(OutcomeSpace(space_label, outcomes), std::move(atoms));
}

}  // namespace qmeas

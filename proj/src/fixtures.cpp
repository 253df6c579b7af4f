// SPDX-License-Identifier: Apache-2.0
#include "qmeas/fixtures.hpp"

#include <cmath>

namespace qmeas {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Vector ket(Index j, Index dim) {
    if (j < 0 || j >= dim) throw IndexOutOfRange("ket index out of range");
    Vector v = Vector::Zero(dim);
    v(j) = 1.0;
    return v;
}

Vector plus_ket() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Vector minus_ket() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

DensityOperator bell_phi_plus(const std::string& first_label, const std::string& second_label) {
    Vector psi = (kron(ket(0, 2), ket(0, 2)) + kron(ket(1, 2), ket(1, 2))) / std::sqrt(2.0);
    return DensityOperator(projector(psi),
                           FactorLayout{{first_label, 2}, {second_label, 2}});
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

ChainScenario cnot_chain_fixture() {
    DensityOperator particle(projector(plus_ket()), FactorLayout{{"sys", 2}});
    ProbeStep step{DensityOperator(projector(ket(0, 2)), FactorLayout{{"probe", 2}}),
                   UnitaryOperator(cnot(), FactorLayout{{"sys", 2}, {"probe", 2}}),
                   computational_pvm(2, "M1")};
    return ChainScenario(std::move(particle), {std::move(step)});
}

EntangledScenario bb84_bell_fixture(Index eve_dim) {
    DensityOperator eve(identity(eve_dim) / static_cast<double>(eve_dim),
                        FactorLayout{{"E", eve_dim}});
    UnitaryOperator attack(identity(eve_dim * 2), FactorLayout{{"E", eve_dim}, {"B", 2}});
    return bb84_bell_fixture_with_attack(std::move(eve), std::move(attack));
}

EntangledScenario bb84_bell_fixture_with_attack(DensityOperator eve_probe,
                                                UnitaryOperator attack) {
    const Index eve_dim = eve_probe.dim();
    const OperatorValuedMeasure alice = bb84_povm("ZA");
    std::array<Event, 4> keys{
        Event::singleton(alice.space(), 0), Event::singleton(alice.space(), 1),
        Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
    return EntangledScenario(std::move(eve_probe), bell_phi_plus("B", "A"), std::move(attack),
                             computational_pvm(eve_dim, "XE"), computational_pvm(2, "YB"),
                             alice, std::move(keys));
}

}  // namespace qmeas

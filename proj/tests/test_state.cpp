// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmeas/fixtures.hpp"
#include "qmeas/random.hpp"
#include "qmeas/state.hpp"

using namespace qmeas;

namespace {
const FactorLayout kQubit{{"H", 2}};
}

TEST_CASE("density operator invariants are enforced") {
    CHECK_THROWS_AS(DensityOperator(pauli_x(), kQubit), NotPositive);  // eigenvalue -1
    CHECK_THROWS_AS(DensityOperator(identity(2), kQubit), NotNormalized);  // trace 2
    CHECK_THROWS_AS(DensityOperator(pauli_y() * pauli_x(), kQubit), NotHermitian);

    Matrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityOperator(negative, kQubit), NotPositive);

    CHECK_THROWS_AS(DensityOperator(identity(2) / 2.0, FactorLayout{{"H", 3}}),
                    DimensionMismatch);
}

TEST_CASE("unitary invariants are enforced") {
    CHECK_THROWS_AS(UnitaryOperator(pauli_x() * 2.0, kQubit), NotUnitary);
    const UnitaryOperator ok(pauli_x(), kQubit);
    CHECK(ok.dim() == 2);
}

TEST_CASE("evolution conjugates the state") {
    const DensityOperator zero(projector(ket(0, 2)), kQubit);
    const UnitaryOperator flip(pauli_x(), kQubit);
    CHECK(approx_eq(evolve(zero, flip).matrix(), projector(ket(1, 2))));

    const UnitaryOperator id = UnitaryOperator::identity_on(kQubit);
    CHECK(approx_eq(evolve(zero, id).matrix(), zero.matrix()));

    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        const DensityOperator rho = random_density(rng, kQubit);
        const UnitaryOperator u = random_unitary_on(rng, kQubit);
        CHECK(trace(evolve(rho, u).matrix()).real() == doctest::Approx(1.0));
    }
}

TEST_CASE("trace rule on the maximally mixed qubit") {
    const DensityOperator mixed(identity(2) / 2.0, kQubit);
    const OperatorValuedMeasure z = computational_pvm(2);
    CHECK(trace_rule(mixed, z, Event::singleton(z.space(), 0)) == doctest::Approx(0.5));
    CHECK(trace_rule(mixed, z, Event::full(z.space())) == doctest::Approx(1.0));
}

TEST_CASE("trace rule on the trine measure") {
    const DensityOperator zero(projector(ket(0, 2)), kQubit);
    const OperatorValuedMeasure trine = trine_povm();
    // atom 0 is aligned with |0>, weight 2/3
    CHECK(trace_rule(zero, trine, Event::singleton(trine.space(), 0)) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(trace_rule(zero, trine, Event::full(trine.space())) == doctest::Approx(1.0));
}

TEST_CASE("trace rule completeness for random inputs") {
    Rng rng(32);
    for (int t = 0; t < 20; ++t) {
        const FactorLayout layout{{"H", 3}};
        const DensityOperator rho = random_density(rng, layout);
        const UnitaryOperator u = random_unitary_on(rng, layout);
        const OperatorValuedMeasure m = random_povm(rng, 3, 4, "M");
        CHECK(trace_rule(rho, u, m, Event::full(m.space())) == doctest::Approx(1.0));
        const ProbabilityTable table = probability_table(rho, u, m);
        double sum = 0.0;
        for (double v : table.values()) sum += v;
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("total probability is unitary invariant") {
    Rng rng(33);
    const FactorLayout layout{{"H", 2}};
    const DensityOperator rho = random_density(rng, layout);
    const OperatorValuedMeasure m = random_povm(rng, 2, 3, "M");
    for (int t = 0; t < 10; ++t) {
        const UnitaryOperator u = random_unitary_on(rng, layout);
        double sum = 0.0;
        for (int j = 0; j < m.outcomes(); ++j)
            sum += trace_rule(rho, u, m, Event::singleton(m.space(), j));
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("trace rule argument checks") {
    const DensityOperator mixed(identity(2) / 2.0, kQubit);
    const OperatorValuedMeasure z3 = computational_pvm(3);
    CHECK_THROWS_AS(trace_rule(mixed, z3, Event::full(z3.space())), DimensionMismatch);

    const OperatorValuedMeasure z2 = computational_pvm(2);
    const OutcomeSpace other("other", 2);
    CHECK_THROWS_AS(trace_rule(mixed, z2, Event::full(other)), SpaceMismatch);
}

TEST_CASE("decision joint measure") {
    const OperatorValuedMeasure m = bb84_povm();
    const UnitaryOperator id = UnitaryOperator::identity_on(kQubit);

    std::vector<DensityOperator> states;
    states.emplace_back(projector(ket(0, 2)), kQubit);
    states.emplace_back(projector(ket(1, 2)), kQubit);
    states.emplace_back(projector(plus_ket()), kQubit);
    states.emplace_back(projector(minus_ket()), kQubit);
    const StateEnsemble ensemble({0.25, 0.25, 0.25, 0.25}, states);

    SUBCASE("zero prior gives zero regardless of the state") {
        const StateEnsemble lopsided({0.0, 1.0, 0.0, 0.0}, states);
        CHECK(decision_joint(lopsided, id, m, 0, Event::full(m.space())) == 0.0);
    }

    SUBCASE("full event reduces to the prior") {
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(decision_joint(ensemble, id, m, i, Event::full(m.space())) ==
                  doctest::Approx(0.25));
    }

    SUBCASE("summing over states and atoms gives one") {
        double sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (int j = 0; j < m.outcomes(); ++j)
                sum += decision_joint(ensemble, id, m, i, Event::singleton(m.space(), j));
        CHECK(sum == doctest::Approx(1.0));
    }

    SUBCASE("index bounds") {
        CHECK_THROWS_AS(decision_joint(ensemble, id, m, 7, Event::full(m.space())),
                        IndexOutOfRange);
    }
}

TEST_CASE("conditional on a state event") {
    const OperatorValuedMeasure m = bb84_povm();
    const UnitaryOperator id = UnitaryOperator::identity_on(kQubit);
    std::vector<DensityOperator> states;
    states.emplace_back(projector(ket(0, 2)), kQubit);
    states.emplace_back(projector(ket(1, 2)), kQubit);
    const StateEnsemble ensemble({0.0, 1.0}, states);

    CHECK(conditional_on_state(ensemble, id, m, 1, Event::full(m.space())) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(conditional_on_state(ensemble, id, m, 0, Event::full(m.space())),
                    ZeroProbabilityCondition);

    Rng rng(34);
    for (int t = 0; t < 10; ++t) {
        std::vector<DensityOperator> pair{random_density(rng, kQubit),
                                          random_density(rng, kQubit)};
        const StateEnsemble random_ensemble({0.3, 0.7}, pair);
        const Event x = Event::singleton(m.space(), static_cast<int>(rng() % 4));
        const double joint = decision_joint(random_ensemble, id, m, 1, x);
        const double conditional = conditional_on_state(random_ensemble, id, m, 1, x);
        CHECK(joint == doctest::Approx(0.7 * conditional));
    }
}

TEST_CASE("ensemble and table validation") {
    std::vector<DensityOperator> states;
    states.emplace_back(identity(2) / 2.0, kQubit);
    CHECK_THROWS_AS(StateEnsemble({0.5}, states), NotNormalized);
    CHECK_THROWS_AS(StateEnsemble({-1.0, 2.0}, {states[0], states[0]}), NotPositive);

    CHECK_THROWS_AS(ProbabilityTable(OutcomeSpace("s", 2), {0.5, 0.4}), NotNormalized);
    CHECK_THROWS_AS(ProbabilityTable(OutcomeSpace("s", 2), {1.5, -0.5}), ProbabilityOutOfRange);
    const ProbabilityTable ok(OutcomeSpace("s", 2), {0.25, 0.75});
    CHECK(ok.at(1) == doctest::Approx(0.75));
}

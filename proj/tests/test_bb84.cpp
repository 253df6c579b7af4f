// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmeas/bb84.hpp"
#include "qmeas/fixtures.hpp"
#include "qmeas/random.hpp"

using namespace qmeas;

namespace {

EntangledScenario random_attack_scenario(Rng& rng, Index eve_dim) {
    return bb84_bell_fixture_with_attack(
        random_density(rng, FactorLayout{{"E", eve_dim}}),
        random_unitary_on(rng, FactorLayout{{"E", eve_dim}, {"B", 2}}));
}

}  // namespace

TEST_CASE("scenario validation") {
    const EntangledScenario ok = bb84_bell_fixture();
    CHECK(ok.eve_dim() == 2);
    CHECK(ok.bob_dim() == 2);
    CHECK(ok.alice_dim() == 2);

    // overlapping key events are rejected
    const OperatorValuedMeasure alice = bb84_povm("ZA");
    std::array<Event, 4> overlapping{
        Event(alice.space(), {0, 1}), Event::singleton(alice.space(), 1),
        Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
    CHECK_THROWS_AS(
        EntangledScenario(ok.eve_probe, ok.alice_state, ok.attack, ok.eve_measure,
                          ok.bob_measure, alice, overlapping),
        ValidationFailure);
}

TEST_CASE("entangled joint probabilities") {
    const EntangledScenario s = bb84_bell_fixture();

    SUBCASE("full events give one") {
        CHECK(entangled_joint(s, Event::full(s.eve_measure.space()),
                              Event::full(s.bob_measure.space()),
                              Event::full(s.alice_measure.space())) == doctest::Approx(1.0));
    }

    SUBCASE("whole table sums to one") {
        double sum = 0.0;
        for (int e = 0; e < s.eve_measure.outcomes(); ++e)
            for (int b = 0; b < s.bob_measure.outcomes(); ++b)
                for (int a = 0; a < s.alice_measure.outcomes(); ++a)
                    sum += entangled_joint(s, Event::singleton(s.eve_measure.space(), e),
                                           Event::singleton(s.bob_measure.space(), b),
                                           Event::singleton(s.alice_measure.space(), a));
        CHECK(sum == doctest::Approx(1.0));
    }

    SUBCASE("shared pair correlates bob with alice's z outcomes") {
        // alice reading atom 0 (the z-basis |0> outcome) forces bob onto |0>
        const double joint00 =
            entangled_joint(s, Event::full(s.eve_measure.space()),
                            Event::singleton(s.bob_measure.space(), 0),
                            Event::singleton(s.alice_measure.space(), 0));
        const double joint10 =
            entangled_joint(s, Event::full(s.eve_measure.space()),
                            Event::singleton(s.bob_measure.space(), 1),
                            Event::singleton(s.alice_measure.space(), 0));
        CHECK(joint00 == doctest::Approx(0.25));
        CHECK(joint10 == doctest::Approx(0.0));
    }
}

TEST_CASE("a product shared state factorizes under a trivial attack") {
    Rng rng(81);
    const DensityOperator bob_part = random_density(rng, FactorLayout{{"B", 2}});
    const DensityOperator alice_part = random_density(rng, FactorLayout{{"A", 2}});
    const DensityOperator product(kron(bob_part.matrix(), alice_part.matrix()),
                                  FactorLayout{{"B", 2}, {"A", 2}});
    const OperatorValuedMeasure alice = bb84_povm("ZA");
    std::array<Event, 4> keys{
        Event::singleton(alice.space(), 0), Event::singleton(alice.space(), 1),
        Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
    const EntangledScenario s(
        DensityOperator(identity(2) / 2.0, FactorLayout{{"E", 2}}), product,
        UnitaryOperator::identity_on(FactorLayout{{"E", 2}, {"B", 2}}),
        computational_pvm(2, "XE"), computational_pvm(2, "YB"), alice, keys);

    for (int e = 0; e < 2; ++e)
        for (int b = 0; b < 2; ++b)
            for (int a = 0; a < 4; ++a) {
                const double joint =
                    entangled_joint(s, Event::singleton(s.eve_measure.space(), e),
                                    Event::singleton(s.bob_measure.space(), b),
                                    Event::singleton(s.alice_measure.space(), a));
                const double pe = 0.5;
                const double pb =
                    trace(bob_part.matrix() * s.bob_measure.atom(b)).real();
                const double pa =
                    trace(alice_part.matrix() * s.alice_measure.atom(a)).real();
                CHECK(joint == doctest::Approx(pe * pb * pa));
            }
}

TEST_CASE("alice's marginal") {
    const EntangledScenario s = bb84_bell_fixture();
    CHECK(alice_marginal(s, Event::full(s.alice_measure.space())) == doctest::Approx(1.0));

    // shared pair, weight-1/2 atoms: each key event carries probability 1/4
    for (int a = 0; a < 4; ++a)
        CHECK(alice_marginal(s, Event::singleton(s.alice_measure.space(), a)) ==
              doctest::Approx(0.25));

    SUBCASE("invariant under attacks") {
        Rng rng(82);
        for (int t = 0; t < 20; ++t) {
            const EntangledScenario attacked = random_attack_scenario(rng, t % 2 ? 2 : 4);
            for (int a = 0; a < 4; ++a) {
                const Event z = Event::singleton(attacked.alice_measure.space(), a);
                CHECK(std::abs(alice_marginal(attacked, z) - 0.25) < 1e-12);
                // and it coincides with the full-event joint
                CHECK(std::abs(entangled_joint(attacked,
                                               Event::full(attacked.eve_measure.space()),
                                               Event::full(attacked.bob_measure.space()), z) -
                               0.25) < 1e-12);
            }
        }
    }
}

TEST_CASE("computational alice measure on the shared pair") {
    const EntangledScenario base = bb84_bell_fixture();
    const OperatorValuedMeasure za = computational_pvm(2, "ZA2");
    const EntangledScenario s(base.eve_probe, base.alice_state, base.attack, base.eve_measure,
                              base.bob_measure, za,
                              {Event::singleton(za.space(), 0), Event::singleton(za.space(), 1),
                               Event::empty(za.space()), Event::empty(za.space())});
    CHECK(alice_marginal(s, Event::singleton(za.space(), 0)) == doctest::Approx(0.5));
    CHECK(approx_eq(conditional_bob_state(s, Event::singleton(za.space(), 0)).matrix(),
                    projector(ket(0, 2))));
}

TEST_CASE("bob's conditional states on the shared pair") {
    const EntangledScenario s = bb84_bell_fixture();

    // conditioning on alice's z-basis outcome leaves |0><0|
    const DensityOperator bob0 =
        conditional_bob_state(s, Event::singleton(s.alice_measure.space(), 0));
    CHECK(approx_eq(bob0.matrix(), projector(ket(0, 2))));

    // the |+> outcome conjugates to |+> (real states, so conjugation is neutral)
    const DensityOperator bob_plus =
        conditional_bob_state(s, Event::singleton(s.alice_measure.space(), 2));
    CHECK(approx_eq(bob_plus.matrix(), projector(plus_ket())));

    SUBCASE("product states decouple") {
        Rng rng(83);
        const DensityOperator bob_part = random_density(rng, FactorLayout{{"B", 2}});
        const DensityOperator alice_part = random_density(rng, FactorLayout{{"A", 2}});
        const DensityOperator product(kron(bob_part.matrix(), alice_part.matrix()),
                                      FactorLayout{{"B", 2}, {"A", 2}});
        const OperatorValuedMeasure alice = bb84_povm("ZA");
        std::array<Event, 4> keys{
            Event::singleton(alice.space(), 0), Event::singleton(alice.space(), 1),
            Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
        const EntangledScenario p(
            DensityOperator(identity(2) / 2.0, FactorLayout{{"E", 2}}), product,
            UnitaryOperator::identity_on(FactorLayout{{"E", 2}, {"B", 2}}),
            computational_pvm(2, "XE"), computational_pvm(2, "YB"), alice, keys);
        for (int a = 0; a < 4; ++a)
            CHECK(approx_eq(
                conditional_bob_state(p, Event::singleton(alice.space(), a)).matrix(),
                bob_part.matrix()));
    }

    SUBCASE("maximally mixed shared state conditions to maximally mixed") {
        const OperatorValuedMeasure alice = bb84_povm("ZA");
        std::array<Event, 4> keys{
            Event::singleton(alice.space(), 0), Event::singleton(alice.space(), 1),
            Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
        const EntangledScenario mixed(
            DensityOperator(identity(2) / 2.0, FactorLayout{{"E", 2}}),
            DensityOperator(identity(4) / 4.0, FactorLayout{{"B", 2}, {"A", 2}}),
            UnitaryOperator::identity_on(FactorLayout{{"E", 2}, {"B", 2}}),
            computational_pvm(2, "XE"), computational_pvm(2, "YB"), alice, keys);
        CHECK(approx_eq(
            conditional_bob_state(mixed, Event::singleton(alice.space(), 1)).matrix(),
            identity(2) / 2.0));
    }
}

TEST_CASE("deriving the transmitted model from the shared pair") {
    const EntangledScenario s = bb84_bell_fixture();
    const TransmittedScenario t = derive_transmitted(s);

    for (std::size_t i = 0; i < 4; ++i) CHECK(t.priors[i] == doctest::Approx(0.25));

    // the four sent states are the conjugated polarization states
    CHECK(approx_eq(t.bob_states[0].matrix(), projector(ket(0, 2))));
    CHECK(approx_eq(t.bob_states[1].matrix(), projector(ket(1, 2))));
    CHECK(approx_eq(t.bob_states[2].matrix(), projector(plus_ket())));
    CHECK(approx_eq(t.bob_states[3].matrix(), projector(minus_ket())));
}

TEST_CASE("transmitted joint probabilities") {
    const EntangledScenario s = bb84_bell_fixture();
    const TransmittedScenario t = derive_transmitted(s);

    SUBCASE("full events reduce to the prior") {
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(transmitted_joint(t, Event::full(t.eve_measure.space()),
                                    Event::full(t.bob_measure.space()), i) ==
                  doctest::Approx(t.priors[i]));
    }

    SUBCASE("zero prior short-circuits") {
        TransmittedScenario zeroed = t;
        zeroed.priors[2] = 0.0;
        CHECK(transmitted_joint(zeroed, Event::full(t.eve_measure.space()),
                                Event::full(t.bob_measure.space()), 2) == 0.0);
    }

    SUBCASE("table sums to the prior total") {
        double sum = 0.0;
        for (int e = 0; e < t.eve_measure.outcomes(); ++e)
            for (int b = 0; b < t.bob_measure.outcomes(); ++b)
                for (std::size_t i = 0; i < 4; ++i)
                    sum += transmitted_joint(t, Event::singleton(t.eve_measure.space(), e),
                                             Event::singleton(t.bob_measure.space(), b), i);
        CHECK(sum == doctest::Approx(t.priors[0] + t.priors[1] + t.priors[2] + t.priors[3]));
    }

    CHECK_THROWS_AS(transmitted_joint(t, Event::full(t.eve_measure.space()),
                                      Event::full(t.bob_measure.space()), 9),
                    IndexOutOfRange);
}

TEST_CASE("chain rule through bob's conditional state") {
    Rng rng(84);
    for (int t = 0; t < 5; ++t) {
        const EntangledScenario s = random_attack_scenario(rng, 2);
        for (std::size_t i = 0; i < 4; ++i) {
            const Event& z = s.alice_key_events[i];
            const double pz = alice_marginal(s, z);
            for (int e = 0; e < s.eve_measure.outcomes(); ++e)
                for (int b = 0; b < s.bob_measure.outcomes(); ++b) {
                    const Event xe = Event::singleton(s.eve_measure.space(), e);
                    const Event yb = Event::singleton(s.bob_measure.space(), b);
                    CHECK(std::abs(entangled_conditional(s, xe, yb, z) * pz -
                                   entangled_joint(s, xe, yb, z)) < 1e-12);
                }
        }
    }
}

TEST_CASE("the equivalence holds on the fixture and under random attacks") {
    CHECK(equivalence_report(bb84_bell_fixture()) < 1e-9);
    CHECK(equivalence_report(bb84_bell_fixture(4)) < 1e-9);

    Rng rng(85);
    for (int t = 0; t < 20; ++t)
        CHECK(equivalence_report(random_attack_scenario(rng, t % 2 ? 2 : 4)) < 1e-9);
}

TEST_CASE("equivalence table structure") {
    const EquivalenceTable table = equivalence_table(bb84_bell_fixture());
    CHECK(table.rows.size() == 2 * 2 * 4);
    CHECK(table.prior_sum == doctest::Approx(1.0));
    CHECK(table.max_residual < 1e-9);
}

TEST_CASE("a corrupted prior breaks the equivalence measurably") {
    const EntangledScenario s = bb84_bell_fixture();
    TransmittedScenario t = derive_transmitted(s);
    t.priors[0] += 0.01;

    double residual = 0.0;
    for (int e = 0; e < s.eve_measure.outcomes(); ++e)
        for (int b = 0; b < s.bob_measure.outcomes(); ++b) {
            const Event xe = Event::singleton(s.eve_measure.space(), e);
            const Event yb = Event::singleton(s.bob_measure.space(), b);
            residual = std::max(residual,
                                std::abs(entangled_joint(s, xe, yb, s.alice_key_events[0]) -
                                         transmitted_joint(t, xe, yb, 0)));
        }
    CHECK(residual >= 0.001);
}

TEST_CASE("key events need not exhaust alice's outcomes") {
    // five-outcome alice measure; the four key events leave one atom out, so
    // the priors sum below one while the equivalence still holds per event
    const double r = 1.0 / std::sqrt(2.0);
    Vector plus(2), minus(2);
    plus << r, r;
    minus << r, -r;
    std::vector<Matrix> atoms = {0.4 * projector(ket(0, 2)), 0.4 * projector(ket(1, 2)),
                                 0.4 * projector(plus), 0.4 * projector(minus),
                                 0.2 * identity(2)};
    const OperatorValuedMeasure alice(OutcomeSpace("ZA5", 5), std::move(atoms));
    std::array<Event, 4> keys{
        Event::singleton(alice.space(), 0), Event::singleton(alice.space(), 1),
        Event::singleton(alice.space(), 2), Event::singleton(alice.space(), 3)};
    Rng rng(86);
    const EntangledScenario s(
        random_density(rng, FactorLayout{{"E", 2}}), bell_phi_plus("B", "A"),
        random_unitary_on(rng, FactorLayout{{"E", 2}, {"B", 2}}), computational_pvm(2, "XE"),
        computational_pvm(2, "YB"), alice, keys);

    const EquivalenceTable table = equivalence_table(s);
    CHECK(table.prior_sum == doctest::Approx(0.8));
    for (std::size_t i = 0; i < 4; ++i) CHECK(table.priors[i] == doctest::Approx(0.2));
    CHECK(table.max_residual < 1e-9);
}

TEST_CASE("degenerate key events raise with the offending index") {
    const EntangledScenario s = bb84_bell_fixture();
    // alice's |0><0| shared half cannot produce the |1> outcome
    const DensityOperator polarized(
        kron(identity(2) / 2.0, projector(ket(0, 2))), FactorLayout{{"B", 2}, {"A", 2}});
    const EntangledScenario degenerate(s.eve_probe, polarized, s.attack, s.eve_measure,
                                       s.bob_measure, computational_pvm(2, "ZA"),
                                       {Event::singleton(OutcomeSpace("ZA", 2), 0),
                                        Event::singleton(OutcomeSpace("ZA", 2), 1),
                                        Event::empty(OutcomeSpace("ZA", 2)),
                                        Event::empty(OutcomeSpace("ZA", 2))});
    try {
        derive_transmitted(degenerate);
        CHECK(false);
    } catch (const ZeroProbabilityCondition& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmeas/fixtures.hpp"
#include "qmeas/probe_chain.hpp"
#include "qmeas/random.hpp"

using namespace qmeas;

namespace {

ProbeStep random_step(Rng& rng, const std::string& tag) {
    return ProbeStep{random_density(rng, FactorLayout{{"probe", 2}}),
                     random_unitary_on(rng, FactorLayout{{"sys", 2}, {"probe", 2}}),
                     random_povm(rng, 2, 2, tag)};
}

ChainScenario random_chain(Rng& rng, int probes) {
    std::vector<ProbeStep> steps;
    for (int j = 0; j < probes; ++j) steps.push_back(random_step(rng, "M" + std::to_string(j)));
    return ChainScenario(random_density(rng, FactorLayout{{"sys", 2}}), std::move(steps));
}

Event random_event(Rng& rng, const OutcomeSpace& space) {
    std::vector<int> members;
    for (int a = 0; a < space.atoms; ++a)
        if (rng() % 2) members.push_back(a);
    return Event(space, std::move(members));
}

}  // namespace

TEST_CASE("scenario validation") {
    Rng rng(71);
    const DensityOperator particle = random_density(rng, FactorLayout{{"sys", 2}});
    ProbeStep bad{random_density(rng, FactorLayout{{"probe", 3}}),
                  random_unitary_on(rng, FactorLayout{{"sys", 2}, {"probe", 2}}),
                  random_povm(rng, 2, 2, "M")};
    CHECK_THROWS_AS(ChainScenario(particle, {bad}), DimensionMismatch);

    ProbeStep bad_measure{random_density(rng, FactorLayout{{"probe", 2}}),
                          random_unitary_on(rng, FactorLayout{{"sys", 2}, {"probe", 2}}),
                          random_povm(rng, 3, 2, "M")};
    CHECK_THROWS_AS(ChainScenario(particle, {bad_measure}), DimensionMismatch);
}

TEST_CASE("a trivial step traces the probe out") {
    Rng rng(72);
    const DensityOperator particle = random_density(rng, FactorLayout{{"sys", 2}});
    const ProbeStep step{random_density(rng, FactorLayout{{"probe", 2}}),
                         UnitaryOperator::identity_on(FactorLayout{{"sys", 2}, {"probe", 2}}),
                         random_povm(rng, 2, 2, "M")};
    const ScaledConditional out =
        chain_step(initial_scaled(particle), step, Event::full(step.measure.space()));
    CHECK(approx_eq(out.matrix, particle.matrix()));
    CHECK(out.weight == doctest::Approx(1.0));
}

TEST_CASE("an empty event annihilates the conditional") {
    Rng rng(73);
    const DensityOperator particle = random_density(rng, FactorLayout{{"sys", 2}});
    const ProbeStep step = random_step(rng, "M");
    const ScaledConditional out =
        chain_step(initial_scaled(particle), step, Event::empty(step.measure.space()));
    CHECK(max_abs(out.matrix) < 1e-14);
    CHECK(out.weight == doctest::Approx(0.0));
}

TEST_CASE("controlled-not probe on the plus state") {
    const ChainScenario scn = cnot_chain_fixture();
    const Event zero = Event::singleton(scn.steps()[0].measure.space(), 0);
    const ScaledConditional sigma =
        chain_step(initial_scaled(scn.particle()), scn.steps()[0], zero);
    // interacting maps |+>|0> to the shared pair; reading 0 leaves (1/2)|0><0|
    CHECK(approx_eq(sigma.matrix, 0.5 * projector(ket(0, 2))));
    CHECK(sigma.weight == doctest::Approx(0.5));

    const DensityOperator normalized =
        normalize_conditional(sigma, FactorLayout{{"sys", 2}});
    CHECK(approx_eq(normalized.matrix(), projector(ket(0, 2))));
}

TEST_CASE("joint probability for full and empty events") {
    Rng rng(74);
    const ChainScenario scn = random_chain(rng, 3);
    std::vector<Event> all_full, with_empty;
    for (const auto& s : scn.steps()) {
        all_full.push_back(Event::full(s.measure.space()));
        with_empty.push_back(Event::full(s.measure.space()));
    }
    with_empty[1] = Event::empty(scn.steps()[1].measure.space());
    CHECK(chain_joint(scn, all_full) == doctest::Approx(1.0));
    CHECK(chain_joint(scn, with_empty) == doctest::Approx(0.0));

    CHECK_THROWS_AS(chain_joint(scn, {all_full[0]}), LengthMismatch);
}

TEST_CASE("joint equals the global-space oracle") {
    Rng rng(75);
    for (int probes = 1; probes <= 3; ++probes) {
        for (int t = 0; t < 25; ++t) {
            const ChainScenario scn = random_chain(rng, probes);
            std::vector<Event> events;
            for (const auto& s : scn.steps()) events.push_back(random_event(rng, s.measure.space()));
            CHECK(std::abs(chain_joint(scn, events) - chain_joint_bruteforce(scn, events)) <
                  1e-9);
        }
    }
}

TEST_CASE("single-probe joint coincides with the one-step formula") {
    Rng rng(76);
    const ChainScenario scn = random_chain(rng, 1);
    const Event x = random_event(rng, scn.steps()[0].measure.space());
    const ScaledConditional sigma =
        chain_step(initial_scaled(scn.particle()), scn.steps()[0], x);
    CHECK(chain_joint(scn, {x}) == doctest::Approx(sigma.weight));
    CHECK(chain_joint_bruteforce(scn, {x}) == doctest::Approx(sigma.weight));
}

TEST_CASE("conditional probabilities") {
    Rng rng(77);
    const ChainScenario scn = random_chain(rng, 3);

    SUBCASE("full query event is certain") {
        const Event given = random_event(rng, scn.steps()[0].measure.space());
        if (!given.is_empty())
            CHECK(chain_conditional(scn, {{0, given}},
                                    {2, Event::full(scn.steps()[2].measure.space())}) ==
                  doctest::Approx(1.0));
    }

    SUBCASE("conditioning on certainty reduces to the marginal") {
        const Event query = Event::singleton(scn.steps()[2].measure.space(), 0);
        const double conditional = chain_conditional(
            scn, {{0, Event::full(scn.steps()[0].measure.space())},
                  {1, Event::full(scn.steps()[1].measure.space())}},
            {2, query});
        const double marginal =
            chain_joint(scn, {Event::full(scn.steps()[0].measure.space()),
                              Event::full(scn.steps()[1].measure.space()), query});
        CHECK(conditional == doctest::Approx(marginal));
    }

    SUBCASE("ratio identity") {
        for (int t = 0; t < 20; ++t) {
            const ChainScenario chain = random_chain(rng, 3);
            std::vector<Event> events;
            for (const auto& s : chain.steps()) {
                Event e = random_event(rng, s.measure.space());
                events.push_back(e.is_empty() ? Event::full(s.measure.space()) : e);
            }
            const double joint12 = chain_joint(
                chain,
                {events[0], events[1], Event::full(chain.steps()[2].measure.space())});
            if (joint12 < 1e-4) continue;
            const double lhs =
                chain_conditional(chain, {{0, events[0]}, {1, events[1]}}, {2, events[2]}) *
                joint12;
            CHECK(std::abs(lhs - chain_joint(chain, events)) < 1e-9);
        }
    }

    SUBCASE("order violations are rejected") {
        const Event e0 = Event::full(scn.steps()[0].measure.space());
        CHECK_THROWS_AS(chain_conditional(scn, {{1, Event::full(scn.steps()[1].measure.space())}},
                                          {1, Event::full(scn.steps()[1].measure.space())}),
                        OrderViolation);
        CHECK_THROWS_AS(chain_conditional(scn, {{2, Event::full(scn.steps()[2].measure.space())}},
                                          {0, e0}),
                        OrderViolation);
    }
}

TEST_CASE("weights never increase along the fold") {
    Rng rng(78);
    for (int t = 0; t < 20; ++t) {
        const ChainScenario scn = random_chain(rng, 3);
        ScaledConditional sigma = initial_scaled(scn.particle());
        double previous = sigma.weight;
        for (std::size_t j = 0; j < scn.length(); ++j) {
            sigma = chain_step(sigma, scn.steps()[j],
                               random_event(rng, scn.steps()[j].measure.space()));
            CHECK(sigma.weight <= previous + 1e-12);
            previous = sigma.weight;
        }
    }
}

TEST_CASE("last-step additivity") {
    Rng rng(79);
    for (int t = 0; t < 10; ++t) {
        const ChainScenario scn = random_chain(rng, 2);
        const Event first = random_event(rng, scn.steps()[0].measure.space());
        const OutcomeSpace& last = scn.steps()[1].measure.space();
        double sum = 0.0;
        for (int j = 0; j < last.atoms; ++j)
            sum += chain_joint(scn, {first, Event::singleton(last, j)});
        CHECK(std::abs(sum - chain_joint(scn, {first, Event::full(last)})) < 1e-12);
    }
}

TEST_CASE("normalized conditionals are valid states") {
    Rng rng(80);
    for (int t = 0; t < 10; ++t) {
        const ChainScenario scn = random_chain(rng, 2);
        ScaledConditional sigma = initial_scaled(scn.particle());
        for (std::size_t j = 0; j < scn.length(); ++j) {
            Event e = random_event(rng, scn.steps()[j].measure.space());
            if (e.is_empty()) e = Event::full(scn.steps()[j].measure.space());
            sigma = chain_step(sigma, scn.steps()[j], e);
        }
        if (sigma.weight > 1e-6) {
            const DensityOperator rho = normalize_conditional(sigma, FactorLayout{{"sys", 2}});
            CHECK(trace(rho.matrix()).real() == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("zero-weight conditioning raises") {
    const ChainScenario scn = cnot_chain_fixture();
    ScaledConditional sigma = initial_scaled(scn.particle());
    sigma = chain_step(sigma, scn.steps()[0], Event::empty(scn.steps()[0].measure.space()));
    CHECK_THROWS_AS(normalize_conditional(sigma, FactorLayout{{"sys", 2}}),
                    ZeroProbabilityCondition);
}

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmeas/outcome_space.hpp"
#include "qmeas/random.hpp"

using namespace qmeas;

TEST_CASE("outcome space validation") {
    CHECK_THROWS_AS(OutcomeSpace("bad", 0), ValidationFailure);
    CHECK_THROWS_AS(OutcomeSpace("bad", 2, {"x"}), ValidationFailure);
    CHECK_THROWS_AS(OutcomeSpace("bad", 2, {"x", "x"}), ValidationFailure);
    const OutcomeSpace ok("ok", 2, {"heads", "tails"});
    CHECK(ok.atoms == 2);
}

TEST_CASE("event construction sorts and deduplicates") {
    const OutcomeSpace space("s", 4);
    const Event e(space, {3, 1, 1, 0});
    CHECK(e.members() == std::vector<int>{0, 1, 3});
    CHECK(e.contains(3));
    CHECK(!e.contains(2));
    CHECK_THROWS_AS(Event(space, {4}), IndexOutOfRange);
    CHECK_THROWS_AS(Event(space, {-1}), IndexOutOfRange);
}

TEST_CASE("intersection") {
    const OutcomeSpace space("s", 3);
    const Event x(space, {0, 1});
    const Event y(space, {1, 2});
    CHECK(intersect(x, y).members() == std::vector<int>{1});
    CHECK(intersect(x, Event::full(space)).members() == x.members());
    CHECK(intersect(x, Event::empty(space)).is_empty());

    const OutcomeSpace other("t", 3);
    CHECK_THROWS_AS(intersect(x, Event::full(other)), SpaceMismatch);
}

TEST_CASE("product events use row-major atom indexing") {
    const OutcomeSpace a("a", 2), b("b", 2);
    CHECK(product_space(a, b).atoms == 4);

    const Event x = Event::singleton(a, 0);
    const Event y = Event::singleton(b, 1);
    CHECK(product_event(x, y).members() == std::vector<int>{1});

    CHECK(product_event(Event::full(a), Event::full(b)).is_full());
}

TEST_CASE("rectangle identity on events") {
    const OutcomeSpace a("a", 2), b("b", 2);
    const Event x(a, {0, 1});
    const Event y(b, {0});
    const Event lhs = intersect(product_event(x, Event::full(b)), product_event(Event::full(a), y));
    CHECK(lhs.members() == product_event(x, y).members());
    CHECK(lhs.members() == std::vector<int>{0, 2});
}

TEST_CASE("rectangle identity on random events") {
    Rng rng(99);
    const OutcomeSpace a("a", 4), b("b", 3);
    for (int t = 0; t < 50; ++t) {
        std::vector<int> xs, ys;
        for (int i = 0; i < a.atoms; ++i)
            if (rng() % 2) xs.push_back(i);
        for (int i = 0; i < b.atoms; ++i)
            if (rng() % 2) ys.push_back(i);
        const Event x(a, xs), y(b, ys);
        const Event lhs =
            intersect(product_event(x, Event::full(b)), product_event(Event::full(a), y));
        CHECK(lhs.members() == product_event(x, y).members());
    }
}

TEST_CASE("event algebra on atoms is boolean") {
    const OutcomeSpace s("s", 5);
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        std::vector<int> xs, ys;
        for (int i = 0; i < s.atoms; ++i) {
            if (rng() % 2) xs.push_back(i);
            if (rng() % 2) ys.push_back(i);
        }
        const Event x(s, xs), y(s, ys);
        CHECK(intersect(x, x).members() == x.members());           // idempotent
        CHECK(intersect(x, y).members() == intersect(y, x).members());  // commutative
        // absorption against the full event
        CHECK(intersect(x, Event::full(s)).members() == x.members());
    }
}

#include <doctest.h>

#include <random>

#include "bellscope/lhv_oracle.hpp"

using namespace bellscope;

TEST_CASE("deterministic strategy values") {
    CHECK(strategy_bell_value({0, 0, 0, 0}, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(strategy_bell_value({0, 0, 0, 0}, 3) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(strategy_bell_value({0, 0, 0, 3}, 3), std::invalid_argument);
    CHECK_THROWS_AS(strategy_bell_value({0, 0, 0, 0}, 1), std::invalid_argument);
}

TEST_CASE("enumerated extrema match the closed-form bounds") {
    const auto e2 = enumerate_lhv_extrema(2);
    CHECK(e2.min == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(e2.max == doctest::Approx(2.0).epsilon(1e-14));

    const auto e3 = enumerate_lhv_extrema(3);
    CHECK(e3.min == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(e3.max == doctest::Approx(2.0).epsilon(1e-14));

    const auto e4 = enumerate_lhv_extrema(4);
    CHECK(e4.min == doctest::Approx(-10.0 / 3.0).epsilon(1e-13));
    CHECK(e4.max == doctest::Approx(2.0).epsilon(1e-14));

    for (int d = 2; d <= 8; ++d) {
        const auto extrema = enumerate_lhv_extrema(d);
        const auto bounds = lhv_bounds(d);
        CHECK(std::abs(extrema.min - bounds.lower) < 1e-12);
        CHECK(std::abs(extrema.max - bounds.upper) < 1e-12);
        CHECK(!extrema.argmin.empty());
        CHECK(!extrema.argmax.empty());
        // Extremal strategies must reproduce the extremal value directly.
        CHECK(std::abs(strategy_bell_value(extrema.argmin.front(), d) - extrema.min) < 1e-12);
        CHECK(std::abs(strategy_bell_value(extrema.argmax.front(), d) - extrema.max) < 1e-12);
    }
}

TEST_CASE("enumeration cap is enforced") {
    CHECK_THROWS_WITH_AS(enumerate_lhv_extrema(13), doctest::Contains("cap"),
                         std::invalid_argument);
    CHECK_NOTHROW(enumerate_lhv_extrema(13, 16));
}

TEST_CASE("random LHV mixtures stay within the enumerated extrema") {
    std::mt19937_64 rng(23);
    for (int d : {2, 3, 5}) {
        const auto extrema = enumerate_lhv_extrema(d);
        std::uniform_int_distribution<int> outcome(0, d - 1);
        std::uniform_real_distribution<double> weight(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            // Convex mixture of a handful of deterministic strategies.
            double total_weight = 0.0, mixture_value = 0.0;
            for (int k = 0; k < 5; ++k) {
                const double w = weight(rng);
                const DeterministicStrategy s{outcome(rng), outcome(rng), outcome(rng),
                                              outcome(rng)};
                mixture_value += w * strategy_bell_value(s, d);
                total_weight += w;
            }
            mixture_value /= total_weight;
            CHECK(mixture_value >= extrema.min - 1e-12);
            CHECK(mixture_value <= extrema.max + 1e-12);
        }
    }
}

TEST_CASE("values are invariant under compensating outcome relabelings") {
    std::mt19937_64 rng(29);
    for (int d : {3, 5}) {
        std::uniform_int_distribution<int> outcome(0, d - 1);
        for (int trial = 0; trial < 30; ++trial) {
            const DeterministicStrategy s{outcome(rng), outcome(rng), outcome(rng),
                                          outcome(rng)};
            const int c = outcome(rng);
            const DeterministicStrategy shifted{(s.a1 + c) % d, (s.a2 + c) % d,
                                                ((s.b1 - c) % d + d) % d,
                                                ((s.b2 - c) % d + d) % d};
            CHECK(std::abs(strategy_bell_value(s, d) - strategy_bell_value(shifted, d)) < 1e-12);
        }
    }
}

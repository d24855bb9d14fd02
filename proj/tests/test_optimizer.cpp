#include <doctest.h>

#include "bellscope/asymptotics.hpp"
#include "bellscope/optimizer.hpp"

using namespace bellscope;

namespace {

OptimizationProblem epr_problem(int d, Scheme scheme, int restarts) {
    OptimizationProblem p;
    p.d = d;
    p.state = StateSpec::EprLimit;
    p.scheme = scheme;
    p.restarts = restarts;
    p.seed = 42;
    return p;
}

}  // namespace

TEST_CASE("d=3 EPR-limit optimum matches the closed form") {
    const auto res = maximize_bell(epr_problem(3, Scheme::Full, 6));
    CHECK(res.best_bell == doctest::Approx(closed_form_epr(3)).epsilon(1e-4));
    CHECK(res.per_restart.size() == 6);

    const auto pf = maximize_bell(epr_problem(3, Scheme::PhaseFourier, 4));
    CHECK(pf.best_bell == doctest::Approx(closed_form_epr(3)).epsilon(1e-4));

    // Scheme dominance at small d, and agreement certifying the restricted family.
    CHECK(res.best_bell >= pf.best_bell - 1e-6);
    CHECK(std::abs(res.best_bell - pf.best_bell) < 1e-4);
}

TEST_CASE("results are reproducible for a fixed seed") {
    const auto a = maximize_bell(epr_problem(3, Scheme::Full, 4));
    const auto b = maximize_bell(epr_problem(3, Scheme::Full, 4));
    CHECK(a.best_bell == b.best_bell);
    for (int s = 0; s < 4; ++s) {
        CHECK(a.best_params[s].params == b.best_params[s].params);
    }
    for (size_t i = 0; i < a.per_restart.size(); ++i) {
        CHECK(a.per_restart[i].seed == b.per_restart[i].seed);
        CHECK(a.per_restart[i].value == b.per_restart[i].value);
    }
}

TEST_CASE("best value is nondecreasing in the number of restarts") {
    double prev = -1e9;
    for (int restarts : {1, 2, 4, 6}) {
        const auto res = maximize_bell(epr_problem(4, Scheme::Full, restarts));
        CHECK(res.best_bell >= prev - 1e-15);
        prev = res.best_bell;
        // best_bell must be the max over restart diagnostics
        double best_diag = -1e9;
        for (const auto& diag : res.per_restart) {
            best_diag = std::max(best_diag, diag.value);
        }
        CHECK(res.best_bell == doctest::Approx(best_diag).epsilon(1e-14));
    }
}

TEST_CASE("reported optimum survives independent re-evaluation") {
    const auto res = maximize_bell(epr_problem(4, Scheme::PhaseFourier, 3));
    const auto state = nopa_truncated_state(4, std::numeric_limits<double>::infinity());
    const double reeval = evaluate_settings(state, res.best_params);
    CHECK(std::abs(reeval - res.best_bell) < 1e-10);
}

TEST_CASE("fixed-r optimization violates the LHV bound at moderate squeezing") {
    OptimizationProblem p;
    p.d = 3;
    p.state = StateSpec::NopaFixedR;
    p.r = 1.0;
    p.scheme = Scheme::Full;
    p.restarts = 4;
    const auto res = maximize_bell(p);
    CHECK(res.best_r == doctest::Approx(1.0));
    CHECK(res.best_bell > 2.0 + 1e-3);
    CHECK(res.best_bell < 2.0 * res.best_params.size());
}

TEST_CASE("free-r optimization at d=3 finds the finite-squeezing optimum") {
    OptimizationProblem p;
    p.d = 3;
    p.state = StateSpec::NopaFreeR;
    p.scheme = Scheme::Full;
    p.restarts = 8;
    const auto res = maximize_bell(p);
    CHECK(res.best_bell == doctest::Approx(2.90638).epsilon(1e-3 / 2.9));
    REQUIRE(res.best_r.has_value());
    CHECK(*res.best_r == doctest::Approx(1.4068).epsilon(0.01 / 1.4));
    // Finite squeezing beats the EPR limit.
    CHECK(res.best_bell > closed_form_epr(3) + 1e-3);
}

TEST_CASE("r profile endpoints") {
    const auto profile = r_profile(3, {0.0, 0.8, 1.4}, Scheme::Full, 4, 42);
    REQUIRE(profile.size() == 3);
    // Product state cannot exceed the LHV bound.
    CHECK(profile[0].bell <= 2.0 + 1e-6);
    CHECK(profile[0].bell == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(profile[1].bell > 2.0);
    CHECK(profile[2].bell > profile[1].bell);
}

TEST_CASE("invalid problems are rejected") {
    OptimizationProblem p;
    p.d = 1;
    CHECK_THROWS_AS(maximize_bell(p), std::invalid_argument);
    p.d = 3;
    p.tolerance = 0.0;
    CHECK_THROWS_AS(maximize_bell(p), std::invalid_argument);
    p.tolerance = 1e-8;
    p.state = StateSpec::NopaFreeR;
    p.r_min = 2.0;
    p.r_max = 1.0;
    CHECK_THROWS_AS(maximize_bell(p), std::invalid_argument);
    CHECK_THROWS_AS(r_profile(3, {-1.0}, Scheme::Full, 2, 42), std::invalid_argument);
}

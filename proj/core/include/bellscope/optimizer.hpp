#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellscope/quantum_model.hpp"

namespace bellscope {

enum class StateSpec { EprLimit, NopaFixedR, NopaFreeR };

struct OptimizationProblem {
    int d = 3;
    StateSpec state = StateSpec::EprLimit;
    double r = 1.0;                     // NopaFixedR
    double r_min = 0.1, r_max = 4.0;    // NopaFreeR
    Scheme scheme = Scheme::Full;
    int restarts = 0;                   // 0 -> scheme default (20 full, 8 phase-fourier)
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
    long max_evals = 20000;             // per restart
};

struct RestartDiagnostic {
    std::uint64_t seed = 0;
    double value = 0.0;
    long iterations = 0;
};

struct OptimizationResult {
    double best_bell = 0.0;
    std::array<UnitaryParams, 4> best_params;
    std::optional<double> best_r;
    std::vector<RestartDiagnostic> per_restart;
    bool converged = false;
};

struct RProfilePoint {
    double r = 0.0;  // +infinity allowed
    double bell = 0.0;
};

// Bell total of the four settings on the given state, via the quantum model
// and the Bell functional; throws if any reconstructed matrix fails the
// unitarity check.
double evaluate_settings(const SchmidtDiagonalState& state,
                         const std::array<UnitaryParams, 4>& settings);

// Multi-restart derivative-free maximization of the Bell quantity over the
// four measurement settings (and over r for NopaFreeR, via an outer
// golden-section refinement with warm-started inner optimizations). Restart 0
// is always a warm start from cglmp_settings; for the full scheme restart 1
// is a mod-d relabeled variant of it; remaining restarts are random with
// sub-seeds derived deterministically from (seed, index).
OptimizationResult maximize_bell(const OptimizationProblem& problem);

// Settings-only maximization at each grid value (infinity flag allowed),
// warm-starting each grid point from its neighbor's optimum.
std::vector<RProfilePoint> r_profile(int d, const std::vector<double>& r_grid,
                                     Scheme scheme, int restarts, std::uint64_t seed,
                                     double tolerance = 1e-8, long max_evals = 20000);

int default_restarts(Scheme scheme);
std::uint64_t sub_seed(std::uint64_t seed, int restart_index);

}  // namespace bellscope

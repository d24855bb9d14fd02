#include "bellscope/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "bellscope/nelder_mead.hpp"

namespace bellscope {

namespace {

constexpr double kTieTol = 1e-15;
constexpr double kGoldenTol = 1e-3;

std::array<UnitaryParams, 4> split_params(const Eigen::VectorXd& x, Scheme scheme, int d) {
    const int pc = param_count(scheme, d);
    std::array<UnitaryParams, 4> out;
    for (int s = 0; s < 4; ++s) {
        out[s].scheme = scheme;
        out[s].params.assign(x.data() + s * pc, x.data() + (s + 1) * pc);
    }
    return out;
}

Eigen::VectorXd join_params(const std::array<UnitaryParams, 4>& settings) {
    const int pc = static_cast<int>(settings[0].params.size());
    Eigen::VectorXd x(4 * pc);
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < pc; ++i) {
            x[s * pc + i] = settings[s].params[i];
        }
    }
    return x;
}

// Objective shared by all restarts: Bell total for the concatenated
// parameters of the four settings on a fixed state.
class BellObjective {
public:
    BellObjective(SchmidtDiagonalState state, Scheme scheme)
        : state_(std::move(state)),
          scheme_(scheme),
          vectors_(build_outcome_vectors(state_.d)) {}

    double operator()(const Eigen::VectorXd& x) const {
        const int d = state_.d;
        const auto settings = split_params(x, scheme_, d);
        std::array<MeasurementUnitary, 4> U;
        for (int s = 0; s < 4; ++s) {
            U[s] = parametrize_unitary(settings[s], d);
        }
        const CorrelationVector Q11 =
            correlation_vector(joint_probabilities(state_, U[0], U[2]), vectors_);
        const CorrelationVector Q12 =
            correlation_vector(joint_probabilities(state_, U[0], U[3]), vectors_);
        const CorrelationVector Q21 =
            correlation_vector(joint_probabilities(state_, U[1], U[2]), vectors_);
        const CorrelationVector Q22 =
            correlation_vector(joint_probabilities(state_, U[1], U[3]), vectors_);
        return bell_quantity(Q11, Q12, Q21, Q22).total;
    }

private:
    SchmidtDiagonalState state_;
    Scheme scheme_;
    OutcomeVectorSet vectors_;
};

// Interleaved-ends relabeling of the Schmidt basis: 0, d-1, 1, d-2, ...
// Composing the optimal phase-Fourier settings with this relabeling aligns
// their Bell operator's leading eigenvector with a decreasing coefficient
// sequence, which is the branch the NOPA states live on.
std::vector<int> interleave_order(int d) {
    std::vector<int> order;
    order.reserve(d);
    int lo = 0, hi = d - 1;
    while (lo <= hi) {
        order.push_back(lo);
        if (hi != lo) order.push_back(hi);
        ++lo;
        --hi;
    }
    return order;
}

Eigen::VectorXd cglmp_start(int d, Scheme scheme, bool relabeled) {
    if (scheme == Scheme::PhaseFourier) {
        const auto offsets = cglmp_offsets();
        Eigen::VectorXd x(4 * d);
        for (int s = 0; s < 4; ++s) {
            for (int n = 0; n < d; ++n) {
                x[s * d + n] = offsets[s] * n / d;
            }
        }
        return x;
    }
    const auto settings = cglmp_settings(d);
    std::array<UnitaryParams, 4> decomposed;
    const auto order = interleave_order(d);
    for (int s = 0; s < 4; ++s) {
        Eigen::MatrixXcd U = settings[s].matrix;
        if (relabeled) {
            Eigen::MatrixXcd permuted(d, d);
            for (int j = 0; j < d; ++j) {
                permuted.col(j) = U.col(order[j]);
            }
            U = std::move(permuted);
        }
        decomposed[s] = decompose_unitary(U);
    }
    return join_params(decomposed);
}

Eigen::VectorXd random_start(int d, Scheme scheme, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int pc = param_count(scheme, d);
    const double span = scheme == Scheme::Full ? 2.0 * std::numbers::pi : 1.0;
    std::uniform_real_distribution<double> dist(0.0, span);
    Eigen::VectorXd x(4 * pc);
    for (int i = 0; i < 4 * pc; ++i) {
        x[i] = dist(rng);
    }
    return x;
}

struct StageResult {
    double best_value = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;
    std::vector<RestartDiagnostic> per_restart;
    bool converged = false;
};

NelderMeadOptions nm_options(const OptimizationProblem& p) {
    NelderMeadOptions opts;
    opts.max_evals = p.max_evals;
    opts.tolerance = p.tolerance;
    opts.initial_step = p.scheme == Scheme::Full ? 0.25 : 0.05;
    return opts;
}

// All restarts at a fixed state; deterministic regardless of schedule: results
// are indexed by restart and ties resolved toward the lowest index.
StageResult run_restarts(const BellObjective& objective, const OptimizationProblem& p,
                         int restarts) {
    const NelderMeadOptions opts = nm_options(p);
    auto run_one = [&](int i) {
        const std::uint64_t rs = sub_seed(p.seed, i);
        Eigen::VectorXd x0;
        if (i == 0) {
            x0 = cglmp_start(p.d, p.scheme, false);
        } else if (i == 1 && p.scheme == Scheme::Full) {
            x0 = cglmp_start(p.d, p.scheme, true);
        } else {
            x0 = random_start(p.d, p.scheme, rs);
        }
        NelderMeadResult nm =
            nelder_mead([&](const Eigen::VectorXd& x) { return -objective(x); }, x0, opts);
        return std::make_pair(rs, std::move(nm));
    };

    std::vector<std::pair<std::uint64_t, NelderMeadResult>> runs(restarts);
    std::vector<std::future<void>> futures;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<int> next{0};
    for (unsigned w = 0; w < std::min<unsigned>(workers, restarts); ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < restarts; i = next.fetch_add(1)) {
                runs[i] = run_one(i);
            }
        }));
    }
    for (auto& fut : futures) {
        fut.get();
    }

    StageResult stage;
    for (int i = 0; i < restarts; ++i) {
        const auto& [rs, nm] = runs[i];
        stage.per_restart.push_back({rs, -nm.value, nm.iterations});
        if (-nm.value > stage.best_value + kTieTol) {
            stage.best_value = -nm.value;
            stage.best_x = nm.x;
            stage.converged = nm.converged;
        }
    }
    return stage;
}

SchmidtDiagonalState state_at(const OptimizationProblem& p, double r) {
    return nopa_truncated_state(p.d, r);
}

}  // namespace

int default_restarts(Scheme scheme) { return scheme == Scheme::Full ? 20 : 8; }

std::uint64_t sub_seed(std::uint64_t seed, int restart_index) {
    // splitmix64 of (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (restart_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double evaluate_settings(const SchmidtDiagonalState& state,
                         const std::array<UnitaryParams, 4>& settings) {
    const int d = state.d;
    std::array<MeasurementUnitary, 4> U;
    for (int s = 0; s < 4; ++s) {
        U[s] = parametrize_unitary(settings[s], d);
        const double residual =
            (U[s].matrix.adjoint() * U[s].matrix - Eigen::MatrixXcd::Identity(d, d)).norm();
        if (residual > 1e-10) {
            throw std::runtime_error("evaluate_settings: unitarity check failed");
        }
    }
    const OutcomeVectorSet V = build_outcome_vectors(d);
    const CorrelationVector Q11 = correlation_vector(joint_probabilities(state, U[0], U[2]), V);
    const CorrelationVector Q12 = correlation_vector(joint_probabilities(state, U[0], U[3]), V);
    const CorrelationVector Q21 = correlation_vector(joint_probabilities(state, U[1], U[2]), V);
    const CorrelationVector Q22 = correlation_vector(joint_probabilities(state, U[1], U[3]), V);
    return bell_quantity(Q11, Q12, Q21, Q22).total;
}

OptimizationResult maximize_bell(const OptimizationProblem& problem) {
    if (problem.d < 2 || problem.tolerance <= 0.0) {
        throw std::invalid_argument("maximize_bell: invalid problem");
    }
    const int restarts =
        problem.restarts > 0 ? problem.restarts : default_restarts(problem.scheme);

    OptimizationResult result;

    if (problem.state != StateSpec::NopaFreeR) {
        const double r = problem.state == StateSpec::EprLimit
                             ? std::numeric_limits<double>::infinity()
                             : problem.r;
        const BellObjective objective(state_at(problem, r), problem.scheme);
        StageResult stage = run_restarts(objective, problem, restarts);
        result.best_bell = stage.best_value;
        result.best_params = split_params(stage.best_x, problem.scheme, problem.d);
        result.per_restart = std::move(stage.per_restart);
        result.converged = stage.converged;
        if (problem.state == StateSpec::NopaFixedR) {
            result.best_r = problem.r;
        }
    } else {
        if (!(problem.r_min >= 0.0 && problem.r_min < problem.r_max)) {
            throw std::invalid_argument("maximize_bell: invalid r range");
        }
        // Outer golden-section refinement on r; the first probe runs the full
        // restart schedule, later probes refine the warm-started incumbent.
        Eigen::VectorXd chain_x;
        bool have_chain = false;
        bool last_converged = false;
        NelderMeadOptions refine = nm_options(problem);

        auto probe = [&](double r) {
            const BellObjective objective(state_at(problem, r), problem.scheme);
            if (!have_chain) {
                StageResult stage = run_restarts(objective, problem, restarts);
                result.per_restart = stage.per_restart;
                chain_x = stage.best_x;
                have_chain = true;
                last_converged = stage.converged;
                return stage.best_value;
            }
            NelderMeadResult nm = nelder_mead(
                [&](const Eigen::VectorXd& x) { return -objective(x); }, chain_x, refine);
            chain_x = nm.x;
            last_converged = nm.converged;
            return -nm.value;
        };

        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = problem.r_min, b = problem.r_max;
        double x1 = b - invphi * (b - a);
        double x2 = a + invphi * (b - a);
        double f1 = probe(x1);
        double best_r = x1, best_val = f1;
        Eigen::VectorXd best_x = chain_x;
        double f2 = probe(x2);
        if (f2 > best_val) {
            best_val = f2;
            best_r = x2;
            best_x = chain_x;
        }
        while (b - a > kGoldenTol) {
            if (f1 >= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = probe(x1);
                if (f1 > best_val) {
                    best_val = f1;
                    best_r = x1;
                    best_x = chain_x;
                }
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = probe(x2);
                if (f2 > best_val) {
                    best_val = f2;
                    best_r = x2;
                    best_x = chain_x;
                }
            }
        }
        result.best_bell = best_val;
        result.best_params = split_params(best_x, problem.scheme, problem.d);
        result.best_r = best_r;
        result.converged = last_converged;
    }

    // Soundness: re-evaluate the reported optimum through the model path.
    const double r_check = result.best_r.value_or(std::numeric_limits<double>::infinity());
    const double reeval = evaluate_settings(state_at(problem, r_check), result.best_params);
    if (std::abs(reeval - result.best_bell) > 1e-10) {
        throw std::runtime_error("maximize_bell: re-evaluation mismatch");
    }
    return result;
}

std::vector<RProfilePoint> r_profile(int d, const std::vector<double>& r_grid,
                                     Scheme scheme, int restarts, std::uint64_t seed,
                                     double tolerance, long max_evals) {
    OptimizationProblem base;
    base.d = d;
    base.scheme = scheme;
    base.restarts = restarts;
    base.seed = seed;
    base.tolerance = tolerance;
    base.max_evals = max_evals;

    std::vector<RProfilePoint> out;
    Eigen::VectorXd chain_x;
    bool have_chain = false;
    const NelderMeadOptions opts = nm_options(base);
    for (double r : r_grid) {
        if (r < 0.0) {
            throw std::invalid_argument("r_profile: grid values must be >= 0");
        }
        const SchmidtDiagonalState state = nopa_truncated_state(d, r);
        const BellObjective objective(state, scheme);
        double value;
        if (!have_chain) {
            const int n = restarts > 0 ? restarts : default_restarts(scheme);
            StageResult stage = run_restarts(objective, base, n);
            chain_x = stage.best_x;
            have_chain = true;
            value = stage.best_value;
        } else {
            // Refine the neighbor's optimum, but keep the structured starts in
            // play so the chain cannot get stuck on a degenerate branch.
            std::vector<Eigen::VectorXd> starts{chain_x, cglmp_start(d, scheme, false)};
            if (scheme == Scheme::Full) {
                starts.push_back(cglmp_start(d, scheme, true));
            }
            value = -std::numeric_limits<double>::infinity();
            for (const auto& x0 : starts) {
                NelderMeadResult nm = nelder_mead(
                    [&](const Eigen::VectorXd& x) { return -objective(x); }, x0, opts);
                if (-nm.value > value) {
                    value = -nm.value;
                    chain_x = nm.x;
                }
            }
        }
        out.push_back({r, value});
    }
    return out;
}

}  // namespace bellscope

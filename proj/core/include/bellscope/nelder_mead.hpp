#pragma once

#include <functional>

#include <Eigen/Dense>

namespace bellscope {

struct NelderMeadOptions {
    long max_evals = 20000;
    double tolerance = 1e-8;
    double initial_step = 0.25;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    long evals = 0;
    long iterations = 0;
    bool converged = false;
};

// Downhill simplex minimization. Always returns the best point seen,
// including the start point; if the evaluation budget cannot even hold the
// initial simplex the start point is returned unchanged.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace bellscope

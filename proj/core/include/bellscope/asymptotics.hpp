#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bellscope {

// Coefficients of B(d) = a + b/d + c/d^2 + e * exp(-d).
struct FitModel {
    double a = 0.0, b = 0.0, c = 0.0, e = 0.0;
    double residual_norm = 0.0;
};

// Closed-form violation of the maximally entangled (r -> infinity) state:
// 4d sum_{k=0}^{floor(d/2)-1} (1 - 2k/(d-1)) *
//   (1/(2d^3 sin^2[pi(k+1/4)/d]) - 1/(2d^3 sin^2[pi(k+3/4)/d])).
double closed_form_epr(int d);

// The d -> infinity limit (2/pi^2) sum_k [1/(k+1/4)^2 - 1/(k+3/4)^2],
// approximately 2.96981; partial sum plus tail estimate, accurate to 1e-8
// for terms >= 1e4.
double epr_limit_series(long terms);

// |Q_ij| = sqrt((2d-1)/(3d)) at the EPR-limit optimum.
double optimal_modulus(int d);

// Linear least-squares fit of the four-coefficient model.
FitModel fit_asymptote(const std::vector<std::pair<double, double>>& points);

}  // namespace bellscope

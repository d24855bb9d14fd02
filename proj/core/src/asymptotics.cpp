#include "bellscope/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace bellscope {

using std::numbers::pi;

double closed_form_epr(int d) {
    if (d < 2) {
        throw std::invalid_argument("closed_form_epr: d must be >= 2");
    }
    const double dd = d;
    double sum = 0.0;
    for (int k = 0; k < d / 2; ++k) {
        const double weight = 1.0 - 2.0 * k / (dd - 1.0);
        const double s_plus = std::sin(pi * (k + 0.25) / dd);
        // sin^2 of the negative argument pi(-k-1+1/4)/d equals sin^2(pi(k+3/4)/d)
        const double s_minus = std::sin(pi * (k + 0.75) / dd);
        sum += weight * (1.0 / (2.0 * dd * dd * dd * s_plus * s_plus) -
                         1.0 / (2.0 * dd * dd * dd * s_minus * s_minus));
    }
    return 4.0 * dd * sum;
}

double epr_limit_series(long terms) {
    if (terms < 1) {
        throw std::invalid_argument("epr_limit_series: terms must be >= 1");
    }
    double sum = 0.0;
    for (long k = terms - 1; k >= 0; --k) {
        const double kp = k + 0.25, km = k + 0.75;
        sum += 1.0 / (kp * kp) - 1.0 / (km * km);
    }
    // Tail sum_{k>=K} f(k) with f(k) = (k+1/4)^-2 - (k+3/4)^-2, estimated by
    // Euler-Maclaurin: integral_K^inf f + f(K)/2. The integral is
    // 1/(K+1/4) - 1/(K+3/4); the neglected -f'(K)/12 term is O(K^-4), i.e.
    // below 1e-8 already for K >= 100.
    const double K = terms;
    const double fK = 1.0 / ((K + 0.25) * (K + 0.25)) - 1.0 / ((K + 0.75) * (K + 0.75));
    const double tail = 1.0 / (K + 0.25) - 1.0 / (K + 0.75) + 0.5 * fK;
    return 2.0 / (pi * pi) * (sum + tail);
}

double optimal_modulus(int d) {
    if (d < 2) {
        throw std::invalid_argument("optimal_modulus: d must be >= 2");
    }
    return std::sqrt((2.0 * d - 1.0) / (3.0 * d));
}

FitModel fit_asymptote(const std::vector<std::pair<double, double>>& points) {
    std::set<double> distinct;
    for (const auto& [d, B] : points) {
        distinct.insert(d);
    }
    if (distinct.size() < 4) {
        throw std::invalid_argument("fit_asymptote: need at least 4 distinct d values");
    }
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd A(n, 4);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double d = points[i].first;
        A(i, 0) = 1.0;
        A(i, 1) = 1.0 / d;
        A(i, 2) = 1.0 / (d * d);
        A(i, 3) = std::exp(-d);
        y[i] = points[i].second;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 4) {
        throw std::invalid_argument("fit_asymptote: rank-deficient design matrix");
    }
    Eigen::VectorXd coef = qr.solve(y);
    FitModel fit;
    fit.a = coef[0];
    fit.b = coef[1];
    fit.c = coef[2];
    fit.e = coef[3];
    fit.residual_norm = (A * coef - y).norm();
    return fit;
}

}  // namespace bellscope

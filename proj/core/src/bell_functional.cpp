#include "bellscope/bell_functional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellscope {

namespace {
constexpr double kEntryFloor = -1e-12;
constexpr double kSumTol = 1e-10;
}  // namespace

JointDistribution make_joint_distribution(int d, Eigen::MatrixXd p) {
    if (d < 2 || p.rows() != d || p.cols() != d) {
        throw std::invalid_argument("make_joint_distribution: table must be d x d with d >= 2");
    }
    if (p.minCoeff() < kEntryFloor) {
        throw std::invalid_argument("make_joint_distribution: negative probability entry");
    }
    if (std::abs(p.sum() - 1.0) > kSumTol) {
        throw std::invalid_argument("make_joint_distribution: entries must sum to 1");
    }
    // Clip roundoff-negative entries at the boundary.
    p = p.cwiseMax(0.0);
    return {d, std::move(p)};
}

CorrelationVector correlation_vector(const JointDistribution& P, const OutcomeVectorSet& V) {
    if (P.d != V.d) {
        throw std::invalid_argument("correlation_vector: dimension mismatch");
    }
    const int d = P.d;
    // Accumulate P(m + n = t mod d), then take the probability-weighted
    // average of the simplex vectors.
    Eigen::VectorXd pt = Eigen::VectorXd::Zero(d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            pt[outcome_index(m, n, d)] += P.p(m, n);
        }
    }
    Eigen::VectorXd q = V.vectors.transpose() * pt;
    return {d, std::move(q)};
}

Eigen::VectorXd bell_weights(int d) {
    if (d < 2) {
        throw std::invalid_argument("bell_weights: d must be >= 2");
    }
    const int N = d - 1;
    Eigen::VectorXd w(N);
    for (int k = 0; k < N; ++k) {
        w[k] = std::sqrt(double(N + 1 - k) * (N - k) / (double(N + 1) * N));
    }
    w[0] = 1.0;
    return w;
}

BellBreakdown bell_quantity(const CorrelationVector& Q11, const CorrelationVector& Q12,
                            const CorrelationVector& Q21, const CorrelationVector& Q22) {
    const int d = Q11.d;
    if (Q12.d != d || Q21.d != d || Q22.d != d) {
        throw std::invalid_argument("bell_quantity: dimension mismatch");
    }
    const int N = d - 1;
    Eigen::VectorXd comps(N);
    comps[0] = Q11.q[0] + Q12.q[0] - Q21.q[0] + Q22.q[0];
    for (int k = 1; k < N; ++k) {
        comps[k] = Q11.q[k] - Q12.q[k] - Q21.q[k] + Q22.q[k];
    }
    Eigen::VectorXd w = bell_weights(d);
    double total = w.dot(comps);
    return {d, std::move(comps), std::move(w), total};
}

LhvBounds lhv_bounds(int d) {
    if (d < 2) {
        throw std::invalid_argument("lhv_bounds: d must be >= 2");
    }
    if (d == 2) {
        return {-2.0, 2.0};
    }
    return {-2.0 * (d + 1) / (d - 1), 2.0};
}

double complex_form_bell_d3(std::complex<double> Q11, std::complex<double> Q12,
                            std::complex<double> Q21, std::complex<double> Q22) {
    return std::real(Q11 + Q12 - Q21 + Q22) +
           std::imag(Q11 - Q12 - Q21 + Q22) / std::sqrt(3.0);
}

std::complex<double> complex_correlation_d3(const JointDistribution& P) {
    if (P.d != 3) {
        throw std::invalid_argument("complex_correlation_d3: d must be 3");
    }
    const std::complex<double> omega =
        std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    std::complex<double> q = 0.0;
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            q += std::pow(omega, (m + n) % 3) * P.p(m, n);
        }
    }
    return q;
}

}  // namespace bellscope

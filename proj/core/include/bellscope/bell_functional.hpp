#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bellscope/outcome_geometry.hpp"

namespace bellscope {

// d x d table of joint outcome probabilities for one setting pair.
// Entries may be slightly negative (>= -1e-12) from roundoff; they are
// clipped when consumed.
struct JointDistribution {
    int d = 0;
    Eigen::MatrixXd p;  // p(m, n) = P(a = m, b = n)
};

// Vector-valued correlation function, components Q^(0) ... Q^(d-2).
struct CorrelationVector {
    int d = 0;
    Eigen::VectorXd q;
};

// Per-component Bell values B^(k), their weights w_k, and the weighted total.
struct BellBreakdown {
    int d = 0;
    Eigen::VectorXd components;
    Eigen::VectorXd weights;
    double total = 0.0;
};

struct LhvBounds {
    double lower = 0.0;
    double upper = 0.0;
};

JointDistribution make_joint_distribution(int d, Eigen::MatrixXd p);

CorrelationVector correlation_vector(const JointDistribution& P, const OutcomeVectorSet& V);

// w_k = sqrt((N+1-k)(N-k) / ((N+1)N)) with N = d-1; w_0 = 1 exactly.
Eigen::VectorXd bell_weights(int d);

// B^(0) = Q11 + Q12 - Q21 + Q22, B^(k!=0) = Q11 - Q12 - Q21 + Q22,
// total = sum_k w_k B^(k).
BellBreakdown bell_quantity(const CorrelationVector& Q11, const CorrelationVector& Q12,
                            const CorrelationVector& Q21, const CorrelationVector& Q22);

// Local-realistic bounds: [-2, 2] for d = 2, [-2(d+1)/(d-1), 2] otherwise.
LhvBounds lhv_bounds(int d);

// d = 3 only: Re[Q11+Q12-Q21+Q22] + (1/sqrt(3)) Im[Q11-Q12-Q21+Q22] for the
// complex correlations Q = sum_t omega^t P(t), omega = exp(i 2 pi / 3).
double complex_form_bell_d3(std::complex<double> Q11, std::complex<double> Q12,
                            std::complex<double> Q21, std::complex<double> Q22);

// Complex encoding of a d=3 joint distribution: sum_{m,n} omega^{(m+n) mod 3} p(m,n).
std::complex<double> complex_correlation_d3(const JointDistribution& P);

}  // namespace bellscope

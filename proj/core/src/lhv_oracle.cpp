#include "bellscope/lhv_oracle.hpp"

#include <stdexcept>
#include <string>

namespace bellscope {

namespace {

JointDistribution point_mass(int d, int m, int n) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    p(m, n) = 1.0;
    return {d, std::move(p)};
}

}  // namespace

double strategy_bell_value(const DeterministicStrategy& s, int d) {
    if (d < 2) {
        throw std::invalid_argument("strategy_bell_value: d must be >= 2");
    }
    for (int v : {s.a1, s.a2, s.b1, s.b2}) {
        if (v < 0 || v >= d) {
            throw std::invalid_argument("strategy_bell_value: outcome out of range");
        }
    }
    const OutcomeVectorSet V = build_outcome_vectors(d);
    const CorrelationVector Q11 = correlation_vector(point_mass(d, s.a1, s.b1), V);
    const CorrelationVector Q12 = correlation_vector(point_mass(d, s.a1, s.b2), V);
    const CorrelationVector Q21 = correlation_vector(point_mass(d, s.a2, s.b1), V);
    const CorrelationVector Q22 = correlation_vector(point_mass(d, s.a2, s.b2), V);
    return bell_quantity(Q11, Q12, Q21, Q22).total;
}

LhvExtrema enumerate_lhv_extrema(int d, int cap) {
    if (d < 2) {
        throw std::invalid_argument("enumerate_lhv_extrema: d must be >= 2");
    }
    if (d > cap) {
        throw std::invalid_argument(
            "enumerate_lhv_extrema: d = " + std::to_string(d) +
            " exceeds the enumeration cap " + std::to_string(cap) +
            "; raise the cap to enumerate d^4 strategies explicitly");
    }
    // Bell total of a deterministic strategy decomposes over the four
    // correlations; precompute the coefficient of P(m+n = t) per position.
    const OutcomeVectorSet V = build_outcome_vectors(d);
    const Eigen::VectorXd w = bell_weights(d);
    Eigen::VectorXd same(d), flipped(d);  // signs (+,+,...) and (+,-,-,...)
    for (int t = 0; t < d; ++t) {
        same[t] = w.dot(V.vectors.row(t));
        flipped[t] = w[0] * V.vectors(t, 0);
        for (int k = 1; k < d - 1; ++k) {
            flipped[t] -= w[k] * V.vectors(t, k);
        }
    }

    LhvExtrema out;
    out.min = std::numeric_limits<double>::infinity();
    out.max = -std::numeric_limits<double>::infinity();
    constexpr double kTieTol = 1e-12;
    for (int a1 = 0; a1 < d; ++a1)
        for (int a2 = 0; a2 < d; ++a2)
            for (int b1 = 0; b1 < d; ++b1)
                for (int b2 = 0; b2 < d; ++b2) {
                    const double value = same[(a1 + b1) % d] + flipped[(a1 + b2) % d] -
                                         same[(a2 + b1) % d] + same[(a2 + b2) % d];
                    const DeterministicStrategy s{a1, a2, b1, b2};
                    if (value < out.min - kTieTol) {
                        out.min = value;
                        out.argmin.clear();
                        out.argmin.push_back(s);
                    } else if (value < out.min + kTieTol) {
                        out.argmin.push_back(s);
                    }
                    if (value > out.max + kTieTol) {
                        out.max = value;
                        out.argmax.clear();
                        out.argmax.push_back(s);
                    } else if (value > out.max - kTieTol) {
                        out.argmax.push_back(s);
                    }
                }
    return out;
}

}  // namespace bellscope

#include "bellscope/outcome_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace bellscope {

OutcomeVectorSet build_outcome_vectors(int d) {
    if (d < 2) {
        throw std::invalid_argument("build_outcome_vectors: d must be >= 2");
    }
    const int N = d - 1;
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(d, N);

    // Shared column values for the sub-diagonal part: entry i of any row j > i
    // equals -(1/N) * sqrt((N+1)N / ((N-i+1)(N-i))).
    auto column_scale = [N](int i) {
        return std::sqrt(double(N + 1) * N / (double(N - i + 1) * (N - i)));
    };

    V(0, 0) = 1.0;
    for (int j = 1; j < N; ++j) {
        for (int i = 0; i < j; ++i) {
            V(j, i) = -column_scale(i) / N;
        }
        V(j, j) = (double(N - j) / N) * column_scale(j);
    }
    for (int i = 0; i < N; ++i) {
        V(N, i) = -column_scale(i) / N;
    }
    return {d, std::move(V)};
}

int outcome_index(int m, int n, int d) {
    if (d < 2 || m < 0 || n < 0) {
        throw std::invalid_argument("outcome_index: require d >= 2, m >= 0, n >= 0");
    }
    return (m + n) % d;
}

}  // namespace bellscope

#include "bellscope/quantum_model.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bellscope {

namespace {

using std::numbers::pi;

Eigen::MatrixXcd fourier_matrix(int d) {
    Eigen::MatrixXcd F(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            F(m, n) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * pi * m * n / d);
        }
    }
    return F;
}

// Right-multiply U by the two-level rotation on coordinates (a, b):
// col_a' =  c col_a + e^{i phi} s col_b
// col_b' = -e^{-i phi} s col_a + c col_b
void apply_givens_right(Eigen::MatrixXcd& U, int a, int b, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const std::complex<double> e = std::polar(1.0, phi);
    Eigen::VectorXcd col_a = U.col(a);
    Eigen::VectorXcd col_b = U.col(b);
    U.col(a) = c * col_a + e * s * col_b;
    U.col(b) = -std::conj(e) * s * col_a + c * col_b;
}

}  // namespace

int param_count(Scheme scheme, int d) {
    return scheme == Scheme::Full ? d * (d - 1) : d;
}

std::vector<std::pair<int, int>> full_pair_order(int d) {
    // Reverse of the elimination order used by decompose_unitary.
    std::vector<std::pair<int, int>> order;
    order.reserve(d * (d - 1) / 2);
    for (int r = 1; r < d; ++r) {
        for (int a = r - 1; a >= 0; --a) {
            order.emplace_back(a, r);
        }
    }
    return order;
}

SchmidtDiagonalState nopa_truncated_state(int d, double r) {
    if (d < 2) {
        throw std::invalid_argument("nopa_truncated_state: d must be >= 2");
    }
    if (std::isnan(r) || r < 0.0) {
        throw std::invalid_argument("nopa_truncated_state: r must be >= 0");
    }
    Eigen::VectorXd lam(d);
    if (std::isinf(r)) {
        lam.setConstant(1.0 / std::sqrt(double(d)));
    } else {
        const double t = std::tanh(r);
        double x = 1.0;
        for (int n = 0; n < d; ++n) {
            lam[n] = x;
            x *= t;
        }
        lam /= lam.norm();
    }
    return {d, std::move(lam)};
}

JointDistribution joint_probabilities(const SchmidtDiagonalState& state,
                                      const MeasurementUnitary& U_A,
                                      const MeasurementUnitary& U_B) {
    const int d = state.d;
    if (U_A.d != d || U_B.d != d) {
        throw std::invalid_argument("joint_probabilities: dimension mismatch");
    }
    Eigen::MatrixXcd amp =
        U_A.matrix * state.coeffs.asDiagonal() * U_B.matrix.transpose();
    Eigen::MatrixXd p = amp.cwiseAbs2();
    return {d, std::move(p)};
}

MeasurementUnitary parametrize_unitary(const UnitaryParams& up, int d) {
    if (static_cast<int>(up.params.size()) != param_count(up.scheme, d)) {
        throw std::invalid_argument("parametrize_unitary: wrong parameter count");
    }
    if (up.scheme == Scheme::PhaseFourier) {
        Eigen::MatrixXcd U = fourier_matrix(d);
        for (int n = 0; n < d; ++n) {
            U.col(n) *= std::polar(1.0, 2.0 * pi * up.params[n]);
        }
        return {d, std::move(U)};
    }
    const int K = d * (d - 1) / 2;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(d, d);
    const auto order = full_pair_order(d);
    for (int i = 0; i < K; ++i) {
        apply_givens_right(U, order[i].first, order[i].second, up.params[i],
                           up.params[K + i]);
    }
    return {d, std::move(U)};
}

UnitaryParams decompose_unitary(const Eigen::MatrixXcd& U) {
    const int d = static_cast<int>(U.rows());
    if (U.cols() != d || d < 2) {
        throw std::invalid_argument("decompose_unitary: square matrix with d >= 2 required");
    }
    const int K = d * (d - 1) / 2;
    Eigen::MatrixXcd T = U;
    std::vector<double> thetas, phis;
    thetas.reserve(K);
    phis.reserve(K);
    // Triangularize by column rotations; a unitary upper-triangular matrix is
    // diagonal, so T ends up diagonal and U = D * (product of inverses).
    for (int r = d - 1; r >= 1; --r) {
        for (int a = 0; a < r; ++a) {
            const std::complex<double> x = T(r, a);
            const std::complex<double> y = T(r, r);
            double theta = 0.0, phi = 0.0;
            if (std::abs(x) >= 1e-15) {
                if (std::abs(y) < 1e-15) {
                    theta = pi / 2.0;
                } else {
                    const std::complex<double> ratio = -x / y;
                    theta = std::atan(std::abs(ratio));
                    phi = std::arg(ratio);
                }
            }
            apply_givens_right(T, a, r, theta, phi);
            thetas.push_back(theta);
            phis.push_back(phi);
        }
    }
    // Parametrization order is the reverse of the elimination order; the
    // inverse rotation negates the angle and keeps the phase.
    UnitaryParams up;
    up.scheme = Scheme::Full;
    up.params.resize(2 * K);
    for (int i = 0; i < K; ++i) {
        up.params[i] = -thetas[K - 1 - i];
        up.params[K + i] = phis[K - 1 - i];
    }
    return up;
}

std::array<double, 4> cglmp_offsets() { return {0.0, 0.5, 0.25, -0.25}; }

std::array<MeasurementUnitary, 4> cglmp_settings(int d) {
    if (d < 2) {
        throw std::invalid_argument("cglmp_settings: d must be >= 2");
    }
    std::array<MeasurementUnitary, 4> out;
    const auto offsets = cglmp_offsets();
    for (int s = 0; s < 4; ++s) {
        UnitaryParams up;
        up.scheme = Scheme::PhaseFourier;
        up.params.resize(d);
        for (int n = 0; n < d; ++n) {
            up.params[n] = offsets[s] * n / d;
        }
        out[s] = parametrize_unitary(up, d);
    }
    return out;
}

JointDistribution sector_grouped_probabilities(int L, double r, int d,
                                               const MeasurementUnitary& U_A,
                                               const MeasurementUnitary& U_B) {
    if (L < 1) {
        throw std::invalid_argument("sector_grouped_probabilities: L must be >= 1");
    }
    if (d < 2 || U_A.d != d || U_B.d != d) {
        throw std::invalid_argument("sector_grouped_probabilities: dimension mismatch");
    }
    if (std::isnan(r) || std::isinf(r) || r < 0.0) {
        throw std::invalid_argument("sector_grouped_probabilities: finite r >= 0 required");
    }
    // Fock coefficients c_n ~ tanh^n r over n < d*L, renormalized.
    const double t = std::tanh(r);
    Eigen::VectorXd c(d * L);
    double x = 1.0;
    for (int n = 0; n < d * L; ++n) {
        c[n] = x;
        x *= t;
    }
    c /= c.norm();

    // Block-identical unitaries keep the diagonal state inside matched
    // blocks; sum the per-block joint amplitudes incoherently.
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    for (int s = 0; s < L; ++s) {
        Eigen::VectorXd block = c.segment(s * d, d);
        Eigen::MatrixXcd amp =
            U_A.matrix * block.asDiagonal() * U_B.matrix.transpose();
        p += amp.cwiseAbs2();
    }
    return {d, std::move(p)};
}

}  // namespace bellscope

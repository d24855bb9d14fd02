#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "bellscope/bell_functional.hpp"

namespace bellscope {

// Bipartite pure state sum_n lambda_n |nn> with real nonnegative Schmidt
// coefficients, sum lambda_n^2 = 1.
struct SchmidtDiagonalState {
    int d = 0;
    Eigen::VectorXd coeffs;
};

struct MeasurementUnitary {
    int d = 0;
    Eigen::MatrixXcd matrix;
};

enum class Scheme { Full, PhaseFourier };

// Parameter vector for a single measurement unitary.
//  Full: d(d-1)/2 plane-rotation angles followed by d(d-1)/2 relative phases,
//        in the canonical pair order of full_pair_order(). Covers U(d) up to
//        row phases, which do not affect outcome probabilities.
//  PhaseFourier: d phases in turns; U = F * diag(exp(i 2 pi params_n)) with
//        F_{mn} = exp(i 2 pi m n / d) / sqrt(d).
struct UnitaryParams {
    Scheme scheme = Scheme::Full;
    std::vector<double> params;
};

int param_count(Scheme scheme, int d);

// Canonical ordering of the two-level rotation pairs of the full scheme.
std::vector<std::pair<int, int>> full_pair_order(int d);

// Truncated NOPA state: lambda_n proportional to tanh^n r, normalized over
// the first d Fock levels. r may be +infinity (maximally entangled limit,
// lambda_n = 1/sqrt(d)).
SchmidtDiagonalState nopa_truncated_state(int d, double r);

// p(m, n) = |sum_j lambda_j (U_A)_{mj} (U_B)_{nj}|^2.
JointDistribution joint_probabilities(const SchmidtDiagonalState& state,
                                      const MeasurementUnitary& U_A,
                                      const MeasurementUnitary& U_B);

MeasurementUnitary parametrize_unitary(const UnitaryParams& params, int d);

// Inverse of the full scheme up to row phases: parametrize_unitary of the
// returned params equals diag(phases) * U for some unit-modulus phases.
UnitaryParams decompose_unitary(const Eigen::MatrixXcd& U);

// The four optimal phase-Fourier settings (A1, A2, B1, B2): Fourier matrix
// composed with per-label phases 2 pi * offset * n / d, offsets
// (0, 1/2, 1/4, -1/4). For the r = infinity state the resulting Bell total
// equals closed_form_epr(d).
std::array<MeasurementUnitary, 4> cglmp_settings(int d);
std::array<double, 4> cglmp_offsets();

// Full NOPA state truncated to L blocks of d Fock levels with block-identical
// local unitaries; outcomes grouped mod d, renormalized over the truncation.
JointDistribution sector_grouped_probabilities(int L, double r, int d,
                                               const MeasurementUnitary& U_A,
                                               const MeasurementUnitary& U_B);

}  // namespace bellscope

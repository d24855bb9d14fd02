#pragma once

#include <Eigen/Dense>

namespace bellscope {

// The d regular-simplex outcome vectors in (d-1)-dimensional real space.
// Row j of `vectors` is v_j; v_0 = (1, 0, ..., 0), all norms are 1, the
// rows sum to zero and every pair of distinct rows has dot product -1/(d-1).
struct OutcomeVectorSet {
    int d = 0;
    Eigen::MatrixXd vectors;  // d rows, d-1 columns
};

OutcomeVectorSet build_outcome_vectors(int d);

// Index of the simplex vector attached to the joint outcome (m, n): (m+n) mod d.
int outcome_index(int m, int n, int d);

}  // namespace bellscope

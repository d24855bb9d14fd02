#include "bellscope/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace bellscope {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options) {
    const int n = static_cast<int>(x0.size());
    NelderMeadResult result;
    result.x = x0;
    result.value = f(x0);
    result.evals = 1;
    if (n + 1 > options.max_evals) {
        return result;
    }

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    vals[0] = result.value;
    for (int i = 0; i < n; ++i) {
        pts[i + 1][i] += options.initial_step;
        vals[i + 1] = f(pts[i + 1]);
        ++result.evals;
    }
    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
    };

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    double best_at_last_shrink = std::min_element(vals.begin(), vals.end())[0];

    while (result.evals < options.max_evals) {
        sort_order();
        const int lo = order[0], hi = order[n], second_hi = order[n - 1];
        if (vals[hi] - vals[lo] < options.tolerance) {
            result.converged = true;
            break;
        }
        ++result.iterations;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i) {
            if (i != hi) centroid += pts[i];
        }
        centroid /= n;

        Eigen::VectorXd xr = centroid + kReflect * (centroid - pts[hi]);
        const double fr = f(xr);
        ++result.evals;
        if (fr < vals[lo]) {
            Eigen::VectorXd xe = centroid + kExpand * (xr - centroid);
            const double fe = f(xe);
            ++result.evals;
            if (fe < fr) {
                pts[hi] = std::move(xe);
                vals[hi] = fe;
            } else {
                pts[hi] = std::move(xr);
                vals[hi] = fr;
            }
        } else if (fr < vals[second_hi]) {
            pts[hi] = std::move(xr);
            vals[hi] = fr;
        } else {
            // Contract toward the better of the reflected and worst points.
            const bool outside = fr < vals[hi];
            Eigen::VectorXd xc;
            if (outside) {
                xc = centroid + kContract * (xr - centroid);
            } else {
                xc = centroid - kContract * (centroid - pts[hi]);
            }
            const double fc = f(xc);
            ++result.evals;
            if (fc < std::min(fr, vals[hi])) {
                pts[hi] = std::move(xc);
                vals[hi] = fc;
            } else {
                // Shrink toward the best vertex; convergence is declared when a
                // full shrink cycle fails to improve by the tolerance.
                for (int i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    pts[i] = pts[lo] + kShrink * (pts[i] - pts[lo]);
                    vals[i] = f(pts[i]);
                    ++result.evals;
                    if (result.evals >= options.max_evals) break;
                }
                const double best_now = *std::min_element(vals.begin(), vals.end());
                if (best_at_last_shrink - best_now < options.tolerance) {
                    result.converged = true;
                    break;
                }
                best_at_last_shrink = best_now;
            }
        }
    }

    for (int i = 0; i <= n; ++i) {
        if (vals[i] < result.value) {
            result.value = vals[i];
            result.x = pts[i];
        }
    }
    return result;
}

}  // namespace bellscope

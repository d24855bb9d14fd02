#pragma once

#include <vector>

#include "bellscope/bell_functional.hpp"

namespace bellscope {

// Pre-assigned outcomes for each local setting.
struct DeterministicStrategy {
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0;
};

struct LhvExtrema {
    double min = 0.0;
    double max = 0.0;
    std::vector<DeterministicStrategy> argmin;
    std::vector<DeterministicStrategy> argmax;
};

inline constexpr int kLhvEnumerationCap = 12;

// Bell total of the four point-mass joint distributions induced by s.
double strategy_bell_value(const DeterministicStrategy& s, int d);

// Exact extrema over all d^4 deterministic strategies (d <= cap).
LhvExtrema enumerate_lhv_extrema(int d, int cap = kLhvEnumerationCap);

}  // namespace bellscope

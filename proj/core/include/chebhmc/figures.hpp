#pragma once

#include <cstdint>
#include <string>

#include "chebhmc/schedule.hpp"

namespace chebhmc {

// CSV with columns k,chebyshev,constant: for each iteration count k = 0..K,
// the max over the lambda grid {m, m+step, ..., L} of the absolute prefix
// cosine product |prod_{s<=k} cos(sqrt(2 lambda) eta_s)| under each schedule.
std::string figure1_left_csv(const IntegrationSchedule& chebyshev,
                             const IntegrationSchedule& constant,
                             double grid_step);

// CSV with columns x,psi over [0, x_max] with the given step.
std::string figure1_psi_csv(double x_max = 100.0, double step = 0.01);

}  // namespace chebhmc

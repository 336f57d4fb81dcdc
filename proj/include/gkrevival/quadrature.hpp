#pragma once

#include <functional>

namespace gkr::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // sum of |K15 - G7| over the final partition
  int intervals = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]: the interval with the
// largest error estimate is bisected until the total estimate is at most
// max(abs_tol, rel_tol |value|). Throws ConvergenceError after max_intervals.
Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                 int max_intervals = 4000);

}  // namespace gkr::quad

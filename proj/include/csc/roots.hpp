#pragma once

#include <functional>

namespace csc {

/// Root of f on a bracket [lo, hi] with f(lo) f(hi) < 0.
///
/// Bracketing iteration: a secant candidate is used when it falls safely
/// inside the current bracket, otherwise the step falls back to bisection,
/// so convergence is guaranteed even when f' vanishes at the root (turning
/// points of an energy level).  Terminates when the bracket width drops
/// below max(tol, a few ulps) or an exact zero is hit.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

}  // namespace csc

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "csc/core.hpp"

namespace csc {

/// One accepted step of the integrator; y and f = dy/dt at the left end.
struct OdeStep {
  double t;
  Eigen::Vector2d y;
  Eigen::Vector2d f;
};

/// Trajectory of a plane autonomous system with cubic-Hermite dense output
/// on the accepted steps.  The interpolation error is dominated by the
/// integrator tolerance for the step sizes the controller produces.
class OdeSolution {
 public:
  std::vector<OdeStep> steps;  // includes the final point
  long accepted = 0;
  long rejected = 0;

  double t_begin() const { return steps.front().t; }
  double t_end() const { return steps.back().t; }
  /// Hermite value of component k at time t (t clamped to the span).
  double component(double t, int k) const;
  Eigen::Vector2d at(double t) const;

 private:
  int segment_of(double t) const;
};

using Rhs2 = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Adaptive embedded Dormand-Prince 5(4) pair.  Controls the local error
/// against atol + rtol * |y| per component; throws AccuracyError when the
/// step size underflows.
OdeSolution integrate_dopri5(const Rhs2& rhs, const Eigen::Vector2d& y0,
                             double t0, double t1, double rtol, double atol);

}  // namespace csc

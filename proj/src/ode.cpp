#include "csc/ode.hpp"

#include <algorithm>
#include <cmath>

namespace csc {

int OdeSolution::segment_of(double t) const {
  if (steps.size() < 2) return 0;
  auto it = std::upper_bound(steps.begin(), steps.end(), t,
                             [](double v, const OdeStep& s) { return v < s.t; });
  int idx = int(it - steps.begin()) - 1;
  return std::clamp(idx, 0, int(steps.size()) - 2);
}

double OdeSolution::component(double t, int k) const {
  const int i = segment_of(t);
  const OdeStep& a = steps[i];
  const OdeStep& b = steps[i + 1];
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * a.y[k] + h10 * h * a.f[k] + h01 * b.y[k] + h11 * h * b.f[k];
}

Eigen::Vector2d OdeSolution::at(double t) const {
  return {component(t, 0), component(t, 1)};
}

namespace {

// Dormand-Prince coefficients (FSAL pair).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y5 - y4 error weights (includes the FSAL stage).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeSolution integrate_dopri5(const Rhs2& rhs, const Eigen::Vector2d& y0,
                             double t0, double t1, double rtol, double atol) {
  OdeSolution sol;
  const double span = t1 - t0;
  if (!(span > 0.0)) throw std::domain_error("integrate_dopri5: need t1 > t0");

  double t = t0;
  Eigen::Vector2d y = y0;
  Eigen::Vector2d k1 = rhs(y);
  double h = 1e-3 * span;

  sol.steps.push_back({t, y, k1});
  const double hmin = 1e-14 * span;

  while (t < t1) {
    h = std::min(h, t1 - t);
    const Eigen::Vector2d k2 = rhs(y + h * (a21 * k1));
    const Eigen::Vector2d k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    const Eigen::Vector2d k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::Vector2d k5 =
        rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::Vector2d k6 =
        rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::Vector2d ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::Vector2d k7 = rhs(ynew);

    const Eigen::Vector2d errv =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(errv[i]) / sc);
    }

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      sol.steps.push_back({t, y, k1});
      ++sol.accepted;
    } else {
      ++sol.rejected;
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (h < hmin) {
      throw AccuracyError("integrate_dopri5: step size underflow");
    }
  }
  return sol;
}

}  // namespace csc

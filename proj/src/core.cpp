#include "csc/core.hpp"

#include <cmath>

namespace csc {

double gamma_half_integer(int m) {
  if (m < 1) throw std::domain_error("gamma_half_integer: argument must be >= 1/2");
  double g = (m % 2 == 0) ? 1.0 : std::sqrt(kPi);
  for (int v = m; v > 2; v -= 2) g *= 0.5 * (v - 2);
  return g;
}

double sphere_area(int k) {
  if (k < 1) throw std::domain_error("sphere_area: k must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / gamma_half_integer(k + 1);
}

RadialGrid RadialGrid::make(double lo, double hi, int count, GridSpacing spacing) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::domain_error("RadialGrid: need 0 < lo < hi");
  }
  if (count < 3) throw std::domain_error("RadialGrid: need at least 3 points");
  RadialGrid g;
  g.spacing = spacing;
  g.radii.resize(count);
  for (int i = 0; i < count; ++i) {
    const double f = double(i) / double(count - 1);
    g.radii[i] = (spacing == GridSpacing::LogUniform)
                     ? lo * std::pow(hi / lo, f)
                     : lo + (hi - lo) * f;
  }
  g.radii.front() = lo;
  g.radii.back() = hi;
  return g;
}

double RadialGrid::decades() const {
  return std::log10(radii.back() / radii.front());
}

double Rng::uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  // Box-Muller on the hand-mapped uniforms; u1 shifted into (0,1].
  const double u1 = (double((gen_() >> 11)) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Eigen::VectorXd Rng::normal_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Eigen::VectorXd Rng::on_sphere(int n) {
  Eigen::VectorXd v = normal_vector(n);
  double r = v.norm();
  while (r < 1e-12) {
    v = normal_vector(n);
    r = v.norm();
  }
  return v / r;
}

Eigen::VectorXd Rng::in_ball(int n, double radius) {
  return on_sphere(n) * (radius * std::pow(uniform(), 1.0 / n));
}

Eigen::VectorXd Rng::in_box(int n, double half_width) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(-half_width, half_width);
  return v;
}

}  // namespace csc

#include "csc/delaunay.hpp"

#include <cmath>

#include "csc/quadrature.hpp"
#include "csc/roots.hpp"

namespace csc {

namespace {

double require_positive_v(double v) {
  if (!(v > 0.0)) throw std::domain_error("hamiltonian: v must be positive");
  return v;
}

// Stable difference H(a+u, 0) - H(a, 0); the power term goes through
// expm1/log1p so the cancellation near a turning point costs no digits.
double turning_energy_diff(Dimension dim, double a, double u) {
  const int n = dim.n();
  const double q = dim.mass_exponent();
  const double A = double(n - 2) * (n - 2);
  const double B = 0.25 * A;
  const double power = A * std::pow(a, q) * std::expm1(q * std::log1p(u / a));
  return power - B * u * (2.0 * a + u);
}

double turning_energy_slope(Dimension dim, double v) {
  const int n = dim.n();
  const double q = dim.mass_exponent();
  const double A = double(n - 2) * (n - 2);
  return A * q * std::pow(v, q - 1.0) - 0.5 * A * v;
}

void require_admissible_neck(Dimension dim, double eps) {
  if (!(eps > 0.0) || !(eps < constant_solution_value(dim))) {
    throw std::domain_error(
        "neck-size must lie strictly between 0 and the constant solution value");
  }
}

}  // namespace

double hamiltonian(Dimension dim, double v, double vp) {
  require_positive_v(v);
  const int n = dim.n();
  const double c = 0.5 * (n - 2);
  return vp * vp - c * c * v * v +
         double(n - 2) * (n - 2) * std::pow(v, dim.mass_exponent());
}

double turning_energy(Dimension dim, double v) { return hamiltonian(dim, v, 0.0); }

double constant_solution_value(Dimension dim) {
  const int n = dim.n();
  return std::pow(double(n - 2) / (4.0 * n), 0.25 * (n - 2));
}

double hamiltonian_floor(Dimension dim) {
  return turning_energy(dim, constant_solution_value(dim));
}

double cylinder_value(Dimension dim, double t) {
  return std::pow(2.0 * std::cosh(t), 0.5 * (2 - dim.n()));
}

double cylinder_derivative(Dimension dim, double t) {
  return 0.5 * (2 - dim.n()) * std::tanh(t) * cylinder_value(dim, t);
}

double neck_to_energy(Dimension dim, double eps) {
  require_admissible_neck(dim, eps);
  return turning_energy(dim, eps);
}

double energy_to_neck(Dimension dim, double energy) {
  if (!(energy > hamiltonian_floor(dim)) || !(energy < 0.0)) {
    throw std::domain_error("energy_to_neck: energy must lie in (floor, 0)");
  }
  const double vbar = constant_solution_value(dim);
  return find_root(
      [&](double v) { return turning_energy(dim, v) - energy; }, 1e-300, vbar,
      1e-15);
}

double upper_turning_point(Dimension dim, double eps) {
  require_admissible_neck(dim, eps);
  const double energy = turning_energy(dim, eps);
  const double vbar = constant_solution_value(dim);
  return find_root(
      [&](double v) { return turning_energy(dim, v) - energy; }, vbar, 1.0,
      1e-15);
}

double delaunay_period(Dimension dim, double eps) {
  require_admissible_neck(dim, eps);
  const double vmax = upper_turning_point(dim, eps);
  const double mid = 0.5 * (eps + vmax);

  // Each half-integral int dv / sqrt(H - H(v,0)) with v = anchor -/+ s^2;
  // after the substitution the integrand 2/sqrt(|diff|/s^2) is smooth and
  // bounded down to the turning point.  Tolerance 1e-11: near the constant
  // solution the level difference is an inherent cancellation, which floors
  // the attainable relative accuracy around 1e-11 in doubles.
  const auto half = [&](double anchor, double sign) {
    const double len = std::sqrt(std::abs(mid - anchor));
    const auto integrand = [&, anchor, sign](double s) {
      const double w = sign * s * s;
      const double slope = (s == 0.0)
                               ? turning_energy_slope(dim, anchor)
                               : turning_energy_diff(dim, anchor, w) / w;
      return 2.0 / std::sqrt(-sign * slope);
    };
    return integrate_adaptive(integrand, 0.0, len, 1e-11);
  };

  // Lower anchor eps (v = eps + s^2), upper anchor vmax (v = vmax - s^2).
  return 2.0 * (half(eps, +1.0) + half(vmax, -1.0));
}

double DelaunayProfile::wrap(double t) const {
  double tau = std::fmod(t, period);
  if (tau < 0.0) tau += period;
  return tau;
}

double DelaunayProfile::value(double t) const {
  return trajectory.component(wrap(t), 0);
}

double DelaunayProfile::derivative(double t) const {
  return trajectory.component(wrap(t), 1);
}

DelaunayProfile integrate_delaunay(Dimension dim, double eps, int periods,
                                   double tol) {
  require_admissible_neck(dim, eps);
  if (!(tol > 0.0)) throw std::domain_error("integrate_delaunay: tol must be positive");
  if (periods < 1) throw std::domain_error("integrate_delaunay: periods must be >= 1");

  DelaunayProfile prof(dim);
  prof.eps = eps;
  prof.energy = neck_to_energy(dim, eps);
  prof.v_max = upper_turning_point(dim, eps);
  prof.period = delaunay_period(dim, eps);

  const int n = dim.n();
  const double c2 = 0.25 * double(n - 2) * (n - 2);
  const double p = dim.critical_exponent();
  const Rhs2 rhs = [n, c2, p](const Eigen::Vector2d& y) -> Eigen::Vector2d {
    const double v = std::max(y[0], 0.0);
    return {y[1], c2 * y[0] - double(n) * (n - 2) * std::pow(v, p)};
  };

  // The step controller runs two orders tighter than the requested drift
  // budget; drift is then measured, not assumed.
  const double step_tol = std::max(1e-13, 0.01 * tol);
  // A small overhang past the last period keeps the final maximum interior,
  // so the extrema scan below always sees it.
  prof.trajectory = integrate_dopri5(rhs, {prof.v_max, 0.0}, 0.0,
                                     (periods + 0.05) * prof.period, step_tol,
                                     step_tol);

  double drift = 0.0;
  for (const OdeStep& s : prof.trajectory.steps) {
    drift = std::max(drift,
                     std::abs(hamiltonian(dim, s.y[0], s.y[1]) - prof.energy));
  }
  prof.max_drift = drift / std::abs(prof.energy);
  if (prof.max_drift > 100.0 * tol) {
    throw AccuracyError("integrate_delaunay: energy drift exceeds 100 * tol");
  }

  // Period as measured on the trajectory: spacing of the maxima of v,
  // located as downward zero crossings of v'.
  const auto& steps = prof.trajectory.steps;
  double first_max = 0.0;
  double last_max = 0.0;
  long count = 0;
  for (std::size_t i = 1; i + 1 < steps.size(); ++i) {
    if (steps[i].y[1] > 0.0 && steps[i + 1].y[1] <= 0.0) {
      const double t = find_root(
          [&](double x) { return prof.trajectory.component(x, 1); },
          steps[i].t, steps[i + 1].t, 1e-13);
      if (count == 0) {
        first_max = t;
      }
      last_max = t;
      ++count;
    }
  }
  prof.period_measured =
      (count >= 2) ? (last_max - first_max) / double(count - 1)
                   : (count == 1 ? last_max : prof.period);
  return prof;
}

}  // namespace csc

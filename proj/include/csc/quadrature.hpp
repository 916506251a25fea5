#pragma once

#include <functional>

#include <Eigen/Core>

#include "csc/core.hpp"

namespace csc {

enum class QuadKind { GaussLegendre, GaussJacobi, TrapezoidPeriodic };

/// Nodes/weights pair.  Nodes are strictly increasing and interior to the
/// reference interval; the weights sum to the measure of that interval.
struct QuadratureRule {
  QuadKind kind = QuadKind::GaussLegendre;
  double alpha = 0.0;  // Jacobi exponent, weight (1 - x^2)^alpha
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
  int order = 0;

  double total_weight() const { return weights.sum(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (int i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// m-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int m);

/// m-point Gauss rule for integrals  int_0^pi f(phi) sin^{n-2}(phi) dphi.
/// Exact for f polynomial in cos(phi) of degree <= 2m - 1.  This is the
/// reduction used for all sphere integrals of fields that depend on the
/// direction only through the polar angle against a fixed axis.
QuadratureRule polar_quadrature(Dimension dim, int m);

/// Equispaced rule on [0, period) for smooth periodic integrands.
QuadratureRule trapezoid_periodic(int m, double period);

/// int_0^pi sin^{n-2}(phi) dphi  (total weight of polar_quadrature).
double polar_total_weight(Dimension dim);

/// Integrate f over [a, b] with a Gauss-Legendre rule mapped affinely.
template <class F>
double integrate_mapped(const QuadratureRule& rule, double a, double b, F&& f) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return s * half;
}

/// Adaptive panel integration of a smooth integrand on [a, b].
/// Panels are accepted when refining them in half changes the value by
/// less than the local share of the tolerance; otherwise they are split.
/// Throws AccuracyError when the recursion depth limit is reached.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol = 0.0);

}  // namespace csc

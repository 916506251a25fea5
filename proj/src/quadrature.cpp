#include "csc/quadrature.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace csc {

namespace {

// Symmetric Jacobi weight (1-x^2)^alpha on [-1,1]: recurrence coefficients
// are a_k = 0 and b_k^2 = k (k + 2 alpha) / (4 (k + alpha)^2 - 1), so the
// nodes/weights follow from the eigen-decomposition of the tridiagonal
// Jacobi matrix (Golub-Welsch).
QuadratureRule gauss_jacobi_symmetric(int m, double alpha, double mu0) {
  if (m < 2) throw std::domain_error("quadrature: need at least 2 nodes");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int k = 1; k < m; ++k) {
    const double num = k * (k + 2.0 * alpha);
    const double den = 4.0 * (k + alpha) * (k + alpha) - 1.0;
    sub[k - 1] = std::sqrt(num / den);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  QuadratureRule rule;
  rule.kind = (alpha == 0.0) ? QuadKind::GaussLegendre : QuadKind::GaussJacobi;
  rule.alpha = alpha;
  rule.order = m;
  rule.nodes = es.eigenvalues().array();
  rule.weights = mu0 * es.eigenvectors().row(0).array().square();
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int m) {
  return gauss_jacobi_symmetric(m, 0.0, 2.0);
}

double polar_total_weight(Dimension dim) {
  const int n = dim.n();
  return std::sqrt(kPi) * gamma_half_integer(n - 1) / gamma_half_integer(n);
}

QuadratureRule polar_quadrature(Dimension dim, int m) {
  const int n = dim.n();
  const double alpha = 0.5 * (n - 3);
  QuadratureRule base = gauss_jacobi_symmetric(m, alpha, polar_total_weight(dim));
  // Map x = cos(phi); reverse so the phi nodes come out increasing.
  QuadratureRule rule;
  rule.kind = QuadKind::GaussJacobi;
  rule.alpha = alpha;
  rule.order = m;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = std::acos(base.nodes[m - 1 - i]);
    rule.weights[i] = base.weights[m - 1 - i];
  }
  return rule;
}

QuadratureRule trapezoid_periodic(int m, double period) {
  if (m < 2) throw std::domain_error("quadrature: need at least 2 nodes");
  if (!(period > 0.0)) throw std::domain_error("quadrature: period must be positive");
  QuadratureRule rule;
  rule.kind = QuadKind::TrapezoidPeriodic;
  rule.order = m;
  rule.nodes = Eigen::ArrayXd::LinSpaced(m, 0.0, period * (m - 1) / m);
  rule.weights = Eigen::ArrayXd::Constant(m, period / m);
  return rule;
}

namespace {

// Width-proportional error allocation: a panel is accepted when refining
// it changes the value by no more than its share tol_density * width, so
// the accumulated error stays below the requested total.
double adapt(const std::function<double(double)>& f, const QuadratureRule& g,
             double a, double b, double coarse, double tol_density, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_mapped(g, a, mid, f);
  const double right = integrate_mapped(g, mid, b, f);
  const double fine = left + right;
  if (std::abs(fine - coarse) <= tol_density * (b - a)) return fine;
  if (depth >= 48) {
    throw AccuracyError("integrate_adaptive: panel refinement did not converge");
  }
  return adapt(f, g, a, mid, left, tol_density, depth + 1) +
         adapt(f, g, mid, b, right, tol_density, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol) {
  static const QuadratureRule g21 = gauss_legendre(21);
  const double coarse = integrate_mapped(g21, a, b, f);
  const double tol = std::max(abs_tol, rel_tol * std::max(1e-300, std::abs(coarse)));
  return adapt(f, g21, a, b, coarse, tol / (b - a), 0);
}

}  // namespace csc

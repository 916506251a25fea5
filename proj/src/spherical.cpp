#include "csc/spherical.hpp"

#include <cmath>

namespace csc {

double eval_spherical(const SphericalSolution& s, const Eigen::VectorXd& x) {
  const double d2 = (x - s.xi).squaredNorm();
  const int n = s.dim.n();
  return std::pow(s.lambda / (s.lambda * s.lambda + d2), 0.5 * (n - 2));
}

Eigen::VectorXd spherical_gradient(const SphericalSolution& s,
                                   const Eigen::VectorXd& x) {
  const Eigen::VectorXd d = x - s.xi;
  const int n = s.dim.n();
  const double denom = s.lambda * s.lambda + d.squaredNorm();
  const double factor =
      -(n - 2) * std::pow(s.lambda, 0.5 * (n - 2)) * std::pow(denom, -0.5 * n);
  return factor * d;
}

Field spherical_field(const SphericalSolution& s) {
  Field f;
  f.n = s.dim.n();
  const double xi_norm = s.xi.norm();
  if (xi_norm == 0.0) {
    f.symmetry = Symmetry::Radial;
  } else {
    f.symmetry = Symmetry::Axisymmetric;
    f.axis = s.xi / xi_norm;
  }
  f.value = [s](const Eigen::VectorXd& x) { return eval_spherical(s, x); };
  f.gradient = [s](const Eigen::VectorXd& x) { return spherical_gradient(s, x); };
  return f;
}

MassResult spherical_mass(const SphericalSolution& s, const QuadratureRule& rule) {
  const int n = s.dim.n();
  const double q = s.dim.mass_exponent();
  const Eigen::VectorXd dir = Eigen::VectorXd::Unit(n, 0);

  const auto radial = [&](const QuadratureRule& g) {
    // r = lambda tan(psi): dx-volume element r^{n-1} dr becomes
    // lambda^n tan^{n-1} sec^2, evaluated through the field itself.
    const auto integrand = [&](double psi) {
      const double r = s.lambda * std::tan(psi);
      const double u = eval_spherical(s, s.xi + r * dir);
      const double c = std::cos(psi);
      return std::pow(u, q) * std::pow(r, n - 1) * s.lambda / (c * c);
    };
    return integrate_mapped(g, 0.0, 0.5 * kPi, integrand);
  };

  const double fine = sphere_area(n - 1) * radial(rule);
  const QuadratureRule coarse = gauss_legendre(std::max(2, rule.order / 2));
  const double rough = sphere_area(n - 1) * radial(coarse);
  const double err = std::abs(fine - rough) + 1e-15 * std::abs(fine);
  if (err > 1e-4 * std::max(1.0, std::abs(fine))) {
    throw AccuracyError("spherical_mass: quadrature failed to converge");
  }
  return {fine, err};
}

}  // namespace csc

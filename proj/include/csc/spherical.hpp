#pragma once

#include <Eigen/Core>

#include "csc/core.hpp"
#include "csc/field.hpp"
#include "csc/quadrature.hpp"

namespace csc {

/// The two-parameter family of entire positive solutions of
///   Delta u + n(n-2) u^{(n+2)/(n-2)} = 0,
/// u(x) = (lambda / (lambda^2 + |x - xi|^2))^{(n-2)/2}; rotationally
/// symmetric about xi with maximum lambda^{-(n-2)/2} there.
struct SphericalSolution {
  Dimension dim;
  double lambda;
  Eigen::VectorXd xi;

  SphericalSolution(Dimension d, double lam, Eigen::VectorXd center)
      : dim(d), lambda(lam), xi(std::move(center)) {
    if (!(lambda > 0.0)) throw std::domain_error("SphericalSolution: lambda > 0");
    if (xi.size() != dim.n()) throw std::invalid_argument("SphericalSolution: xi size");
  }
};

double eval_spherical(const SphericalSolution& s, const Eigen::VectorXd& x);
Eigen::VectorXd spherical_gradient(const SphericalSolution& s,
                                   const Eigen::VectorXd& x);

/// View as a Field (radial when xi = 0, axisymmetric about xi otherwise).
Field spherical_field(const SphericalSolution& s);

struct MassResult {
  double value;
  double error;  // estimate from comparing against a coarser rule
};

/// int_{R^n} u^{2n/(n-2)} dx by radial reduction about xi.  The radial
/// integral is mapped through r = lambda tan(psi), which makes the
/// integrand a smooth function on [0, pi/2] independent of scale.
MassResult spherical_mass(const SphericalSolution& s, const QuadratureRule& rule);

}  // namespace csc

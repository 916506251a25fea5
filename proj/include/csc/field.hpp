#pragma once

#include <functional>
#include <memory>

#include <Eigen/Core>

#include "csc/core.hpp"
#include "csc/delaunay.hpp"

namespace csc {

enum class Symmetry { Radial, Axisymmetric, General };

/// A positive scalar field on R^n (possibly minus isolated singular points)
/// together with its gradient.  Fields are immutable closures over
/// immutable data and safe to evaluate concurrently.
///
/// The symmetry tag drives the sphere-integral reductions: Radial fields
/// are constant on spheres about the origin, Axisymmetric fields depend on
/// the direction only through its angle against `axis`.
struct Field {
  int n = 3;
  Symmetry symmetry = Symmetry::General;
  Eigen::VectorXd axis;  // unit vector; set when symmetry == Axisymmetric
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

  double operator()(const Eigen::VectorXd& x) const { return value(x); }
};

/// u identically equal to c.
Field constant_field(int n, double c);

/// u(x) = |x|^exponent (test fixture; singular at the origin for negative
/// exponents).
Field radial_power_field(int n, double exponent);

/// u(x) = |x|^{(2-n)/2} v(-ln|x| + shift) for a periodic cylindrical
/// profile v; radial, singular at the origin, slow decay at infinity.
Field profile_induced_field(std::shared_ptr<const DelaunayProfile> profile,
                            double shift = 0.0);

/// u(x) = |x|^{(2-n)/2} (2 cosh(-ln|x|))^{(2-n)/2}; equals the unit
/// spherical solution, but evaluated through the cylindrical formula.
Field cylinder_induced_field(Dimension dim);

/// Wrap a value function with central-difference gradients (step h).
Field with_numeric_gradient(int n, Symmetry sym, const Eigen::VectorXd& axis,
                            std::function<double(const Eigen::VectorXd&)> value,
                            double h = 1e-6);

/// Unit vector orthogonal to `axis` (deterministic choice).
Eigen::VectorXd orthogonal_direction(const Eigen::VectorXd& axis);

/// Point on the sphere of radius r at polar angle phi against `axis`.
Eigen::VectorXd sphere_point(double r, double phi, const Eigen::VectorXd& axis);

}  // namespace csc

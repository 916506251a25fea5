#pragma once

#include <memory>
#include <utility>

#include <Eigen/Core>

#include "csc/delaunay.hpp"
#include "csc/field.hpp"

namespace csc {

/// Kelvin transform about the sphere of radius a:
///   (K_a u)(x) = |x|^{2-n} a^{n-2} u(a^2 x / |x|^2),   x != 0.
/// An involution; maps solutions of the conformal equation to solutions
/// with the curvature composed with the inversion.
double kelvin_value(const Field& u, double a, const Eigen::VectorXd& x);
Field kelvin_field(const Field& u, double a);

/// Parameters of the Kelvin transform of a spherical solution:
///   lambda' = a^2 lambda / (lambda^2 + |xi|^2),
///   xi'     = a^2 xi     / (lambda^2 + |xi|^2).
/// xi' is formed as lambda' * (xi / lambda) so the ratio is preserved
/// exactly in floating point.
std::pair<double, Eigen::VectorXd> kelvin_spherical_params(
    Dimension dim, double lambda, const Eigen::VectorXd& xi, double a);

/// The two log-radial charts in use: t = -ln|x| (natural near a singular
/// origin) and s = ln|x| (natural near infinity).  Conversions between
/// the two negate the first coordinate.
enum class CylOrientation { NegLog, Log };

/// An axisymmetric function on the cylinder R x S^{n-1}, stored as a
/// closure over (coordinate, polar angle).  The orientation tag fixes the
/// sign convention of the first argument in every conversion.
struct CylindricalField {
  int n = 3;
  CylOrientation orientation = CylOrientation::Log;
  bool angle_dependent = false;
  Eigen::VectorXd axis;  // unit; used when angle_dependent
  std::function<double(double, double)> value;  // (coord, phi)

  double operator()(double c, double phi) const { return value(c, phi); }
};

/// v(c, phi) = |x|^{(n-2)/2} u(x) with |x| = e^c or e^{-c} per orientation.
/// Requires u radial or axisymmetric.
CylindricalField to_cylinder(const Field& u, CylOrientation orientation);

/// Inverse of to_cylinder: u(x) = |x|^{(2-n)/2} v(coord(|x|), angle);
/// gradients by central differences.
Field from_cylinder(const CylindricalField& v);

/// Same field in the opposite chart.
CylindricalField convert_orientation(const CylindricalField& v);

/// Reflection across the sphere {c1} x S^{n-1}: v*(c, phi) = v(2 c1 - c, phi).
CylindricalField reflect(const CylindricalField& v, double c1);

/// Deformed periodic solution: the base profile conjugated by
/// inversion-translation-inversion (inversion radius fixed to 1, recover
/// general radii by rescaling xi) and shifted by T along the cylinder.
/// Writing s = -ln|x| + T and rho = |theta - xi e^{-s}|,
///   u(x) = |x|^{(2-n)/2} rho^{(2-n)/2} v(s + ln rho),
/// defined away from the origin and from the point e^T xi / |xi|^2.
class DeformedDelaunay {
 public:
  DeformedDelaunay(std::shared_ptr<const DelaunayProfile> base,
                   Eigen::VectorXd xi, double shift);

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  /// v_{eps,xi,T}(t, phi) in the t = -ln|x| chart.
  double cylindrical_value(double t, double phi) const;

  Field as_field() const;
  CylindricalField as_cylindrical() const;

  const DelaunayProfile& base() const { return *base_; }
  const Eigen::VectorXd& xi() const { return xi_; }
  double shift() const { return shift_; }

 private:
  // rho^2 and its gradient ingredients at x; throws on the singular set.
  double rho_squared(const Eigen::VectorXd& x) const;

  std::shared_ptr<const DelaunayProfile> base_;
  Eigen::VectorXd xi_;
  double shift_;
};

DeformedDelaunay deform_delaunay(std::shared_ptr<const DelaunayProfile> base,
                                 const Eigen::VectorXd& xi, double shift);

/// Curvature function seen by a deformed solution (inversion radius 1):
///   K'(x) = K( (x/|x|^2 - xi) / |x/|x|^2 - xi|^2 ).
/// Equals K far out whenever K is constant outside a compact set.
std::function<double(const Eigen::VectorXd&)> deformed_curvature(
    std::function<double(const Eigen::VectorXd&)> K, const Eigen::VectorXd& xi);

/// Finite-difference residual of the cylindrical equation
///   d^2v/dc^2 + Lap_theta v - ((n-2)/2)^2 v + n(n-2) v^{(n+2)/(n-2)}
/// at (c, phi) with step h.  For axisymmetric fields
/// Lap_theta v = d^2v/dphi^2 + (n-2) cot(phi) dv/dphi, with the symmetric
/// limit (n-1) d^2v/dphi^2 applied exactly at the poles; evaluations in
/// (0, 2h) of a pole are refused.
double cylindrical_residual(const CylindricalField& v, double c, double phi,
                            double h);

}  // namespace csc

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "csc/field.hpp"
#include "csc/quadrature.hpp"

namespace csc {

/// Curvature coefficient K of the normalized equation
///   Delta u + K u^{(n+2)/(n-2)} = 0.
/// The explicit solution families of this library solve the equation with
/// K identically n(n-2).
struct CurvatureFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  bool constant = false;

  static CurvatureFunction constant_k(int n, double k);
};

/// Boundary integral of the radial identity on the sphere of radius r:
///   P(u, r) = int_{S_r} [ r u_r^2 - (r/2)|grad u|^2
///                         + ((n-2)/(2n)) r K u^{2n/(n-2)}
///                         + ((n-2)/2) u u_r ] dS.
/// Constant in r over any annulus where u solves the equation with
/// x . grad K = 0; its small-radius limit at an isolated singularity is
/// the radial invariant.
double radial_pohozaev(const Field& u, const CurvatureFunction& K, double r,
                       const QuadratureRule& polar);

/// Boundary integral of the translational identity in direction i
/// (1-based):
///   P_i(u, r) = int_{S_r} [ u_i u_r - (1/2)|grad u|^2 nu_i
///                           + ((n-2)/(2n)) K u^{2n/(n-2)} nu_i ] dS.
/// Exactly zero for components orthogonal to the symmetry axis.
double translational_pohozaev(const Field& u, const CurvatureFunction& K,
                              double r, int i, const QuadratureRule& polar);

/// Volume term ((n-2)/(2n)) int_{B_r} (dK/dx_i) u^{2n/(n-2)} dx linking
/// the boundary integrals at two radii; subtracting it from P_i(u, r)
/// yields the r-independent translational invariant.
double bulk_correction(const Field& u, const CurvatureFunction& K, double r,
                       int i);

/// Mean of the last k values when their spread is below spread_factor
/// times the quadrature error estimate; absent otherwise.
std::optional<double> extract_invariant(const std::vector<double>& values,
                                        double quad_error, int k = 4,
                                        double spread_factor = 10.0);

struct PohozaevOptions {
  int polar_points = 64;
  int plateau_k = 4;
  double spread_factor = 10.0;
  /// Relative allowance for field-evaluation noise folded into the error
  /// estimate.  Fields backed by dense ODE output are reproducible only to
  /// about 1e-10..1e-9 of their magnitude, which the two-resolution
  /// quadrature comparison cannot see.
  double eval_noise_rel = 1e-8;
};

struct PohozaevReport {
  Dimension dim;
  std::vector<double> radii;
  std::vector<double> P_values;
  std::vector<std::vector<double>> Pi_values;  // [radius][axis]
  std::optional<double> P_invariant;
  std::vector<std::optional<double>> Pi_invariant;
  double quad_error = 0.0;
};

/// Evaluate both identities across a radius schedule and extract the
/// invariants by plateau detection.  Each sphere integral is computed at
/// two resolutions; the difference feeds the quadrature error estimate.
PohozaevReport pohozaev_report(const Field& u, const CurvatureFunction& K,
                               const std::vector<double>& radii,
                               const PohozaevOptions& opts = {});

}  // namespace csc

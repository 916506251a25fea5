#pragma once

#include "csc/core.hpp"
#include "csc/ode.hpp"

namespace csc {

/// Energy of a state (v, v') of the cylindrical ODE
///   v'' = ((n-2)/2)^2 v - n(n-2) v^{(n+2)/(n-2)},
/// conserved along trajectories:
///   H(v, v') = (v')^2 - ((n-2)/2)^2 v^2 + (n-2)^2 v^{2n/(n-2)}.
double hamiltonian(Dimension dim, double v, double vp);

/// H(v, 0) as a function of v alone (the potential level of a turning point).
double turning_energy(Dimension dim, double v);

/// Value of the constant stationary solution, ((n-2)/(4n))^{(n-2)/4}.
double constant_solution_value(Dimension dim);

/// Minimum possible energy: H at the constant solution.  Bounded periodic
/// positive solutions exist exactly for energies in (floor, 0).
double hamiltonian_floor(Dimension dim);

/// The zero-energy solution (2 cosh t)^{(2-n)/2}, the cylindrical transform
/// of the unit spherical solution centered at the origin.
double cylinder_value(Dimension dim, double t);
double cylinder_derivative(Dimension dim, double t);

/// Energy of the periodic solution with minimum value eps (the neck-size):
///   H = (n-2)^2 eps^{2n/(n-2)} - ((n-2)/2)^2 eps^2.
/// Requires 0 < eps < constant_solution_value.
double neck_to_energy(Dimension dim, double eps);

/// Inverse of neck_to_energy on (floor, 0); unique neck in (0, v_const).
double energy_to_neck(Dimension dim, double energy);

/// Larger root v_max of H(v, 0) = neck_to_energy(eps); the trajectory
/// oscillates between eps and v_max.
double upper_turning_point(Dimension dim, double eps);

/// Period of the neck-eps solution by quadrature between the turning
/// points.  The integrand has inverse-square-root singularities at both
/// ends; each half is regularized by the substitution v = turning -/+ s^2
/// and then integrated adaptively.
double delaunay_period(Dimension dim, double eps);

/// A periodic trajectory with dense output.  Construction starts at the
/// upper turning point, so v(0) = v_max, v'(0) = 0 and v''(0) < 0; value()
/// and derivative() wrap their argument by the period, which makes the
/// profile usable as an entire function of t.
class DelaunayProfile {
 public:
  Dimension dim;
  double eps = 0;
  double energy = 0;
  double v_max = 0;
  double period = 0;           // from quadrature
  double period_measured = 0;  // from trajectory extrema
  double max_drift = 0;        // max relative energy drift over the span
  OdeSolution trajectory;

  explicit DelaunayProfile(Dimension d) : dim(d) {}

  double value(double t) const;
  double derivative(double t) const;

 private:
  double wrap(double t) const;
};

/// Integrate the ODE over `periods` periods at tolerance tol.  The energy
/// drift along the trajectory is monitored; a drift above 100 * tol is an
/// error, never silently corrected.
DelaunayProfile integrate_delaunay(Dimension dim, double eps, int periods,
                                   double tol);

}  // namespace csc

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "csc/field.hpp"

namespace csc {

enum class DecayClass { Fast, Slow, SlowWithLowerBound, Unclassified };

/// Tail diagnostics of a positive field: fitted decay exponent of
/// sup_{S_r} u over the outer half of the radius grid, per-radius Harnack
/// quotients, the scale-invariant gradient constant sup |x||grad u|/u,
/// and the superharmonic-type lower bound check.
struct DecayReport {
  double fitted_exponent = 0.0;
  std::vector<double> harnack;
  double gradient_const = 0.0;
  bool lower_ok = false;
  DecayClass classification = DecayClass::Unclassified;
};

/// Classify the tail of u on the given grid (spanning at least two
/// decades).  The exponent is matched against -(n-2) (fast) and -(n-2)/2
/// (slow) within tol_exponent; slow tails with the |x|^{2-n} lower bound
/// in force are reported as slow-with-lower-bound.
DecayReport classify_decay(const Field& u, const RadialGrid& radii,
                           int samples_per_sphere, double tol_exponent = 0.05);

/// sup / inf of u over the sphere of radius r.  Exactly one for radial
/// fields; sampled over the polar angle otherwise.
double harnack_quotient(const Field& u, double r, int samples);

/// max over the sampled radii and directions of |x| |grad u(x)| / u(x).
double gradient_bound(const Field& u, const RadialGrid& radii, int samples);

/// With c = rho^{n-2} min_{S_rho} u, check u >= c |x|^{2-n} at every
/// sampled point with |x| > rho (the conclusion of the superharmonic
/// comparison, testable without verifying superharmonicity itself).
bool lower_bound_check(const Field& u, double rho, const RadialGrid& radii,
                       int samples);

/// Rescaled near-maximum profile of a field w on the punctured ball
/// B(5/8).  With the cutoff weight d(x) = max(0, min(|x|-cutoff, 5/8-|x|))
/// the maximizer x* of d^{(n-2)/2} w is located on a log-radial grid and
/// refined; the profile is
///   v(x) = mu^{(n-2)/2} w(x* + mu x),  mu = w(x*)^{-2/(n-2)},
/// normalized so v(0) = 1.
struct RescaleReport {
  double cutoff = 0.0;
  Eigen::VectorXd max_point;
  double M = 0.0;                  // max of the weighted field
  double mu = 0.0;                 // rescale length
  double r_window = 0.0;           // d(x*)/2
  double guaranteed_radius = 0.0;  // r_window / mu
  /// sup over the sampled ball B(R) of |v - u_{1,0}|; huge/meaningless
  /// when the ball reaches the rescaled image of the singular origin.
  double sup_deviation = 0.0;
  /// Diagnostic: deviation from the canonically matched spherical profile
  /// (scale 1/2, centered at -x^*/(2|x^*|)) on B(min(R, guaranteed)).
  double matched_deviation = 0.0;
  /// True when the weighted maximum stays bounded as the cutoff shrinks,
  /// i.e. the field shows no concentration and the rescale degenerates.
  bool bounded = false;
  std::vector<double> sample_par, sample_perp, sample_value;
};

struct RescaleOptions {
  int radial_grid = 480;
  int angle_grid = 33;
  int profile_radii = 40;
  int profile_angles = 33;
  double inner_radius = 1e-12;
};

RescaleReport blowup_rescale(const Field& w, double cutoff, double R,
                             const RescaleOptions& opts = {});

/// Max-normalized rescaling: x -> u(delta x + y)/m with
/// delta = m^{-(s-2)/2}; the value at the origin is exactly one.  At the
/// critical exponent s = 2n/(n-2) this is the same rescaling as in
/// blowup_rescale up to the choice of center.
Field normalized_blowup(const Field& u, const Eigen::VectorXd& y, double m,
                        double s);

}  // namespace csc

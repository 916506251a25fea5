#include "csc/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "csc/spherical.hpp"

namespace csc {

namespace {

Eigen::VectorXd sampling_axis(const Field& u) {
  return (u.symmetry == Symmetry::Axisymmetric)
             ? u.axis
             : Eigen::VectorXd::Unit(u.n, 0).eval();
}

/// Values of u over the sphere of radius r at `count` polar angles
/// (endpoints included).  Radial fields need a single evaluation.
std::vector<double> sphere_values(const Field& u, double r, int count) {
  const Eigen::VectorXd axis = sampling_axis(u);
  if (u.symmetry == Symmetry::Radial) count = 1;
  std::vector<double> vals;
  vals.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double phi = (count == 1) ? 0.0 : kPi * j / (count - 1);
    vals.push_back(u.value(sphere_point(r, phi, axis)));
  }
  return vals;
}

}  // namespace

double harnack_quotient(const Field& u, double r, int samples) {
  if (u.symmetry == Symmetry::Radial) return 1.0;
  const std::vector<double> vals = sphere_values(u, r, samples);
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  return *hi / *lo;
}

double gradient_bound(const Field& u, const RadialGrid& radii, int samples) {
  const Eigen::VectorXd axis = sampling_axis(u);
  const int count = (u.symmetry == Symmetry::Radial) ? 1 : samples;
  double best = 0.0;
  for (double r : radii.radii) {
    for (int j = 0; j < count; ++j) {
      const double phi = (count == 1) ? 0.0 : kPi * j / (count - 1);
      const Eigen::VectorXd x = sphere_point(r, phi, axis);
      best = std::max(best, r * u.gradient(x).norm() / u.value(x));
    }
  }
  return best;
}

bool lower_bound_check(const Field& u, double rho, const RadialGrid& radii,
                       int samples) {
  const int n = u.n;
  const std::vector<double> ring = sphere_values(u, rho, samples);
  const double c =
      *std::min_element(ring.begin(), ring.end()) * std::pow(rho, n - 2);
  for (double r : radii.radii) {
    if (!(r > rho)) continue;
    for (double v : sphere_values(u, r, samples)) {
      if (v < c * std::pow(r, 2 - n) * (1.0 - 1e-10)) return false;
    }
  }
  return true;
}

DecayReport classify_decay(const Field& u, const RadialGrid& radii,
                           int samples_per_sphere, double tol_exponent) {
  if (radii.decades() < 2.0) {
    throw std::domain_error("classify_decay: radii must span at least 2 decades");
  }
  const int n = u.n;
  DecayReport rep;

  std::vector<double> sup(radii.radii.size());
  for (std::size_t i = 0; i < radii.radii.size(); ++i) {
    const std::vector<double> vals =
        sphere_values(u, radii.radii[i], samples_per_sphere);
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    if (!(*lo > 0.0)) {
      throw std::domain_error("classify_decay: field must be positive");
    }
    sup[i] = *hi;
    rep.harnack.push_back(*hi / *lo);
  }

  // Least-squares slope of log sup vs log r over the outer half.
  const std::size_t start = radii.radii.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(radii.radii.size() - start);
  for (std::size_t i = start; i < radii.radii.size(); ++i) {
    const double x = std::log(radii.radii[i]);
    const double y = std::log(sup[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  rep.gradient_const = gradient_bound(u, radii, samples_per_sphere);
  rep.lower_ok =
      lower_bound_check(u, radii.radii[start], radii, samples_per_sphere);

  const double fast = -(n - 2.0);
  const double slow = -0.5 * (n - 2.0);
  if (std::abs(rep.fitted_exponent - fast) <= tol_exponent) {
    rep.classification = DecayClass::Fast;
  } else if (std::abs(rep.fitted_exponent - slow) <= tol_exponent) {
    rep.classification = rep.lower_ok ? DecayClass::SlowWithLowerBound
                                      : DecayClass::Slow;
  } else {
    rep.classification = DecayClass::Unclassified;
  }
  return rep;
}

namespace {

double cutoff_weight(double r, double cutoff) {
  return std::max(0.0, std::min(r - cutoff, 5.0 / 8.0 - r));
}

struct WeightedMax {
  double log_r;
  double phi;
  double W;
};

WeightedMax search_weighted_max(const Field& w, double cutoff,
                                const RescaleOptions& opts) {
  const int n = w.n;
  const Eigen::VectorXd axis = sampling_axis(w);
  const double lo = std::log(std::max(cutoff * (1.0 + 1e-9), opts.inner_radius));
  const double hi = std::log(5.0 / 8.0);
  const int nr = opts.radial_grid;
  const int na = (w.symmetry == Symmetry::Radial) ? 1 : opts.angle_grid;

  const auto weighted = [&](double log_r, double phi) {
    const double r = std::exp(log_r);
    const double d = cutoff_weight(r, cutoff);
    if (d <= 0.0) return 0.0;
    return std::pow(d, 0.5 * (n - 2)) * w.value(sphere_point(r, phi, axis));
  };

  WeightedMax best{lo, 0.0, -1.0};
  int best_i = -1;
  for (int i = 0; i < nr; ++i) {
    const double log_r = lo + (hi - lo) * i / double(nr - 1);
    for (int j = 0; j < na; ++j) {
      const double phi = (na == 1) ? 0.0 : kPi * j / (na - 1);
      const double W = weighted(log_r, phi);
      if (W > best.W) {
        best = {log_r, phi, W};
        best_i = i;
      }
    }
  }
  if (best_i <= 0 || best_i >= nr - 1) {
    throw SearchError("blowup_rescale: maximizer on the boundary of the search domain");
  }

  // Coordinate-descent refinement to ~1e-6 relative in position.
  double step_r = (hi - lo) / double(nr - 1);
  double step_a = (na == 1) ? 0.0 : kPi / (na - 1);
  for (int sweep = 0; sweep < 40 && step_r > 1e-7; ++sweep) {
    bool moved = false;
    for (const double dr : {-step_r, step_r}) {
      const double cand = weighted(best.log_r + dr, best.phi);
      if (cand > best.W) {
        best.log_r += dr;
        best.W = cand;
        moved = true;
      }
    }
    if (na > 1) {
      for (const double da : {-step_a, step_a}) {
        const double phi = std::clamp(best.phi + da, 0.0, kPi);
        const double cand = weighted(best.log_r, phi);
        if (cand > best.W) {
          best.phi = phi;
          best.W = cand;
          moved = true;
        }
      }
    }
    if (!moved) {
      step_r *= 0.5;
      step_a *= 0.5;
    }
  }
  return best;
}

}  // namespace

RescaleReport blowup_rescale(const Field& w, double cutoff, double R,
                             const RescaleOptions& opts) {
  if (!(cutoff >= 0.0) || cutoff >= 5.0 / 8.0) {
    throw std::domain_error("blowup_rescale: cutoff must lie in [0, 5/8)");
  }
  const int n = w.n;
  const Eigen::VectorXd axis = sampling_axis(w);

  const WeightedMax best = search_weighted_max(w, cutoff, opts);
  RescaleReport rep;
  rep.cutoff = cutoff;
  const double r_star = std::exp(best.log_r);
  rep.max_point = sphere_point(r_star, best.phi, axis);
  rep.M = best.W;
  const double w_star = w.value(rep.max_point);
  rep.mu = std::pow(w_star, -2.0 / (n - 2));
  rep.r_window = 0.5 * cutoff_weight(r_star, cutoff);
  rep.guaranteed_radius = rep.r_window / rep.mu;

  // Boundedness probe: a genuinely concentrating field shows a growing
  // weighted max as the cutoff shrinks; slow-decay and bounded fields
  // do not.
  {
    double grown = rep.M;
    if (cutoff > 0.0) {
      grown = search_weighted_max(w, cutoff / 4.0, opts).W;
    }
    rep.bounded = (grown <= 2.0 * rep.M);
  }

  // Sample the rescaled profile on the half-disc spanned by the direction
  // of x* and a perpendicular; both the profile and the references are
  // symmetric about that plane.
  const Eigen::VectorXd e_par = rep.max_point / rep.max_point.norm();
  const Eigen::VectorXd e_perp = orthogonal_direction(e_par);
  const SphericalSolution reference(Dimension(n), 1.0,
                                    Eigen::VectorXd::Zero(n));
  const SphericalSolution matched(Dimension(n), 0.5, (-0.5 * e_par).eval());

  double sup_dev = 0.0;
  double matched_dev = 0.0;
  const double r_core = std::min(R, rep.guaranteed_radius);
  for (int i = 0; i <= opts.profile_radii; ++i) {
    const double rr = R * i / double(opts.profile_radii);
    for (int j = 0; j < opts.profile_angles; ++j) {
      const double phi = kPi * j / (opts.profile_angles - 1);
      const Eigen::VectorXd y =
          rr * (std::cos(phi) * e_par + std::sin(phi) * e_perp);
      const Eigen::VectorXd source = rep.max_point + rep.mu * y;
      double v;
      try {
        v = std::pow(rep.mu, 0.5 * (n - 2)) * w.value(source);
      } catch (const std::domain_error&) {
        continue;  // exact singular sample point
      }
      rep.sample_par.push_back(y.dot(e_par));
      rep.sample_perp.push_back(y.dot(e_perp));
      rep.sample_value.push_back(v);
      sup_dev = std::max(sup_dev, std::abs(v - eval_spherical(reference, y)));
      if (rr <= r_core) {
        matched_dev =
            std::max(matched_dev, std::abs(v - eval_spherical(matched, y)));
      }
      if (i == 0) break;  // center point once
    }
  }
  rep.sup_deviation = sup_dev;
  rep.matched_deviation = matched_dev;
  return rep;
}

Field normalized_blowup(const Field& u, const Eigen::VectorXd& y, double m,
                        double s) {
  if (!(m > 0.0)) throw std::domain_error("normalized_blowup: m must be positive");
  const double q = Dimension(u.n).mass_exponent();
  if (!(s > 2.0) || s > q + 1e-12) {
    throw std::domain_error("normalized_blowup: s must lie in (2, 2n/(n-2)]");
  }
  const double delta = std::pow(m, -0.5 * (s - 2.0));
  Field f;
  f.n = u.n;
  f.symmetry = Symmetry::General;
  f.value = [u, y, m, delta](const Eigen::VectorXd& x) {
    return u.value(y + delta * x) / m;
  };
  f.gradient = [u, y, m, delta](const Eigen::VectorXd& x) {
    return ((delta / m) * u.gradient(y + delta * x)).eval();
  };
  return f;
}

}  // namespace csc

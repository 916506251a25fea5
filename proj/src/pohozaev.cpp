#include "csc/pohozaev.hpp"

#include <algorithm>
#include <cmath>

namespace csc {

CurvatureFunction CurvatureFunction::constant_k(int n, double k) {
  CurvatureFunction K;
  K.constant = true;
  K.value = [k](const Eigen::VectorXd&) { return k; };
  K.gradient = [n](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(n).eval();
  };
  return K;
}

namespace {

struct SphereSample {
  double u;
  double u_r;       // radial derivative
  double grad_sq;   // |grad u|^2
  double u_axis;    // derivative along the symmetry axis
  double K;
};

SphereSample sample_at(const Field& u, const CurvatureFunction& K,
                       const Eigen::VectorXd& x, const Eigen::VectorXd& axis) {
  SphereSample s;
  const Eigen::VectorXd g = u.gradient(x);
  s.u = u.value(x);
  s.u_r = g.dot(x) / x.norm();
  s.grad_sq = g.squaredNorm();
  s.u_axis = g.dot(axis);
  s.K = K.value(x);
  return s;
}

Eigen::VectorXd field_axis(const Field& u) {
  return (u.symmetry == Symmetry::Axisymmetric)
             ? u.axis
             : Eigen::VectorXd::Unit(u.n, 0).eval();
}

void require_reducible(const Field& u) {
  if (u.symmetry == Symmetry::General) {
    throw SymmetryError("pohozaev: field must be radial or axisymmetric");
  }
}

}  // namespace

double radial_pohozaev(const Field& u, const CurvatureFunction& K, double r,
                       const QuadratureRule& polar) {
  require_reducible(u);
  if (!(r > 0.0)) throw std::domain_error("radial_pohozaev: r > 0");
  const int n = u.n;
  const double q = Dimension(n).mass_exponent();
  const double c = double(n - 2) / (2.0 * n);
  const Eigen::VectorXd axis = field_axis(u);

  const auto integrand = [&](const Eigen::VectorXd& x) {
    const SphereSample s = sample_at(u, K, x, axis);
    return r * s.u_r * s.u_r - 0.5 * r * s.grad_sq +
           c * r * s.K * std::pow(s.u, q) + 0.5 * (n - 2) * s.u * s.u_r;
  };

  if (u.symmetry == Symmetry::Radial) {
    // Constant on the sphere: the full measure is exact.
    return sphere_area(n - 1) * std::pow(r, n - 1) *
           integrand(r * Eigen::VectorXd::Unit(n, 0));
  }
  const double ring = sphere_area(n - 2) * std::pow(r, n - 1);
  return ring * polar.integrate([&](double phi) {
    return integrand(sphere_point(r, phi, axis));
  });
}

double translational_pohozaev(const Field& u, const CurvatureFunction& K,
                              double r, int i, const QuadratureRule& polar) {
  require_reducible(u);
  if (!(r > 0.0)) throw std::domain_error("translational_pohozaev: r > 0");
  const int n = u.n;
  if (i < 1 || i > n) throw std::domain_error("translational_pohozaev: axis index");
  const double q = Dimension(n).mass_exponent();
  const double c = double(n - 2) / (2.0 * n);

  // Odd integrand on the sphere: exactly zero for a radial field, and for
  // the components of an axisymmetric field orthogonal to its axis.
  if (u.symmetry == Symmetry::Radial) return 0.0;
  const Eigen::VectorXd axis = field_axis(u);
  const double cosine = axis.dot(Eigen::VectorXd::Unit(n, i - 1));
  if (cosine == 0.0) return 0.0;

  const double ring = sphere_area(n - 2) * std::pow(r, n - 1);
  const double along_axis = ring * polar.integrate([&](double phi) {
    const Eigen::VectorXd x = sphere_point(r, phi, axis);
    const SphereSample s = sample_at(u, K, x, axis);
    const double nu_axis = std::cos(phi);
    return s.u_axis * s.u_r - 0.5 * s.grad_sq * nu_axis +
           c * s.K * std::pow(s.u, q) * nu_axis;
  });
  return cosine * along_axis;
}

double bulk_correction(const Field& u, const CurvatureFunction& K, double r,
                       int i) {
  require_reducible(u);
  const int n = u.n;
  if (i < 1 || i > n) throw std::domain_error("bulk_correction: axis index");
  if (K.constant) return 0.0;
  const double q = Dimension(n).mass_exponent();
  const double c = double(n - 2) / (2.0 * n);
  const Eigen::VectorXd axis = field_axis(u);
  const Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i - 1);

  // Integrability gate: fit the growth of |dK/dx_i| u^q r^{n-1} near the
  // origin; a non-integrable combination is a precondition failure.
  {
    double prev_r = 0.0, prev_g = 0.0;
    double slope = 0.0;
    bool have_prev = false, all_zero = true;
    int count = 0;
    for (double rr : {1e-4, 1e-3, 1e-2}) {
      double gmax = 0.0;
      for (int j = 0; j <= 8; ++j) {
        const Eigen::VectorXd x = sphere_point(rr, kPi * j / 8.0, axis);
        const double gi = std::abs(K.gradient(x).dot(ei));
        const double uu = u.value(x);
        gmax = std::max(gmax, gi * std::pow(uu, q) * std::pow(rr, n - 1));
      }
      if (gmax > 0.0) {
        all_zero = false;
        if (have_prev && prev_g > 0.0) {
          slope += std::log(gmax / prev_g) / std::log(rr / prev_r);
          ++count;
        }
        prev_r = rr;
        prev_g = gmax;
        have_prev = true;
      }
    }
    if (!all_zero && count > 0 && slope / count <= -1.0) {
      throw std::domain_error(
          "bulk_correction: non-integrable curvature gradient at the origin");
    }
  }

  // Polar reduction of the angular integral with weight sin^{n-2}.
  const QuadratureRule rule = polar_quadrature(Dimension(n), 48);
  const auto shell = [&](double rr) {
    const double acc = rule.integrate([&](double phi) {
      const Eigen::VectorXd x = sphere_point(rr, phi, axis);
      const double gi = K.gradient(x).dot(ei);
      return gi * std::pow(u.value(x), q);
    });
    return sphere_area(n - 2) * std::pow(rr, n - 1) * acc;
  };
  const double volume =
      integrate_adaptive([&](double rr) { return shell(rr); }, 1e-12, r, 1e-10);
  return c * volume;
}

std::optional<double> extract_invariant(const std::vector<double>& values,
                                        double quad_error, int k,
                                        double spread_factor) {
  if (int(values.size()) < std::max(k, 4)) return std::nullopt;
  const auto tail_begin = values.end() - k;
  const double lo = *std::min_element(tail_begin, values.end());
  const double hi = *std::max_element(tail_begin, values.end());
  double mean = 0.0;
  for (auto it = tail_begin; it != values.end(); ++it) mean += *it;
  mean /= k;
  const double floor = 1e-13 * std::max(1.0, std::abs(mean));
  if (hi - lo <= spread_factor * std::max(quad_error, floor)) return mean;
  return std::nullopt;
}

PohozaevReport pohozaev_report(const Field& u, const CurvatureFunction& K,
                               const std::vector<double>& radii,
                               const PohozaevOptions& opts) {
  require_reducible(u);
  PohozaevReport rep{Dimension(u.n), radii, {}, {}, std::nullopt, {}, 0.0};
  const int n = u.n;
  const QuadratureRule fine = polar_quadrature(Dimension(n), 2 * opts.polar_points);
  const QuadratureRule coarse = polar_quadrature(Dimension(n), opts.polar_points);

  double qerr = 0.0;
  double scale = 0.0;
  for (double r : radii) {
    const double p_fine = radial_pohozaev(u, K, r, fine);
    const double p_coarse = radial_pohozaev(u, K, r, coarse);
    qerr = std::max(qerr, std::abs(p_fine - p_coarse));
    scale = std::max(scale, std::abs(p_fine));
    rep.P_values.push_back(p_fine);
    std::vector<double> row(n);
    for (int i = 1; i <= n; ++i) {
      const double t_fine = translational_pohozaev(u, K, r, i, fine);
      const double t_coarse = translational_pohozaev(u, K, r, i, coarse);
      qerr = std::max(qerr, std::abs(t_fine - t_coarse));
      scale = std::max(scale, std::abs(t_fine));
      row[i - 1] = t_fine;
    }
    rep.Pi_values.push_back(std::move(row));
  }
  rep.quad_error = qerr + opts.eval_noise_rel * scale;

  rep.P_invariant = extract_invariant(rep.P_values, rep.quad_error,
                                      opts.plateau_k, opts.spread_factor);
  rep.Pi_invariant.resize(n);
  for (int i = 1; i <= n; ++i) {
    std::vector<double> col;
    col.reserve(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j) {
      double v = rep.Pi_values[j][i - 1];
      if (!K.constant) v -= bulk_correction(u, K, radii[j], i);
      col.push_back(v);
    }
    rep.Pi_invariant[i - 1] = extract_invariant(col, rep.quad_error,
                                                opts.plateau_k,
                                                opts.spread_factor);
  }
  return rep;
}

}  // namespace csc

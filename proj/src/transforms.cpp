#include "csc/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace csc {

namespace {

void require_nonzero(const Eigen::VectorXd& x) {
  if (!(x.squaredNorm() > 0.0)) {
    throw std::domain_error("kelvin: undefined at the origin");
  }
}

}  // namespace

double kelvin_value(const Field& u, double a, const Eigen::VectorXd& x) {
  require_nonzero(x);
  if (!(a > 0.0)) throw std::domain_error("kelvin: radius a must be positive");
  const int n = u.n;
  const double r2 = x.squaredNorm();
  const Eigen::VectorXd y = (a * a / r2) * x;
  return std::pow(a, n - 2) * std::pow(r2, 0.5 * (2 - n)) * u.value(y);
}

Field kelvin_field(const Field& u, double a) {
  if (!(a > 0.0)) throw std::domain_error("kelvin: radius a must be positive");
  Field f;
  f.n = u.n;
  f.symmetry = u.symmetry;  // inversion preserves rays through the origin
  f.axis = u.axis;
  const int n = u.n;
  f.value = [u, a](const Eigen::VectorXd& x) { return kelvin_value(u, a, x); };
  f.gradient = [u, a, n](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    require_nonzero(x);
    const double r2 = x.squaredNorm();
    const double r = std::sqrt(r2);
    const Eigen::VectorXd theta = x / r;
    const Eigen::VectorXd y = (a * a / r2) * x;
    const double an = std::pow(a, n - 2);
    const double uy = u.value(y);
    const Eigen::VectorXd gy = u.gradient(y);
    // d y / d x = (a^2/r^2)(I - 2 theta theta^T)
    const Eigen::VectorXd jac_g =
        (a * a / r2) * (gy - 2.0 * theta.dot(gy) * theta);
    return an * ((2 - n) * std::pow(r, -n) * uy * x +
                 std::pow(r, 2 - n) * jac_g);
  };
  return f;
}

std::pair<double, Eigen::VectorXd> kelvin_spherical_params(
    Dimension, double lambda, const Eigen::VectorXd& xi, double a) {
  if (!(lambda > 0.0)) throw std::domain_error("kelvin_spherical_params: lambda > 0");
  if (!(a > 0.0)) throw std::domain_error("kelvin_spherical_params: a > 0");
  const double denom = lambda * lambda + xi.squaredNorm();
  const double lambda_t = a * a * lambda / denom;
  // xi' = lambda' * (xi / lambda): the ratio xi/lambda is preserved exactly.
  const Eigen::VectorXd xi_t = lambda_t * (xi / lambda);
  return {lambda_t, xi_t};
}

CylindricalField to_cylinder(const Field& u, CylOrientation orientation) {
  if (u.symmetry == Symmetry::General) {
    throw SymmetryError("to_cylinder: field must be radial or axisymmetric");
  }
  CylindricalField v;
  v.n = u.n;
  v.orientation = orientation;
  v.angle_dependent = (u.symmetry == Symmetry::Axisymmetric);
  v.axis = v.angle_dependent ? u.axis
                             : Eigen::VectorXd::Unit(u.n, 0).eval();
  const int n = u.n;
  const Eigen::VectorXd axis = v.axis;
  v.value = [u, axis, n, orientation](double c, double phi) {
    const double r = (orientation == CylOrientation::Log) ? std::exp(c)
                                                          : std::exp(-c);
    const Eigen::VectorXd x = sphere_point(r, phi, axis);
    return std::pow(r, 0.5 * (n - 2)) * u.value(x);
  };
  return v;
}

Field from_cylinder(const CylindricalField& v) {
  const int n = v.n;
  const Eigen::VectorXd axis = v.axis;
  const CylOrientation orientation = v.orientation;
  const auto value = [v, axis, n, orientation](const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::domain_error("from_cylinder: undefined at the origin");
    const double c = (orientation == CylOrientation::Log) ? std::log(r)
                                                          : -std::log(r);
    double phi = 0.0;
    if (v.angle_dependent) {
      const double cosphi =
          std::clamp(x.dot(axis) / r, -1.0, 1.0);
      phi = std::acos(cosphi);
    }
    return std::pow(r, 0.5 * (2 - n)) * v.value(c, phi);
  };
  return with_numeric_gradient(
      n, v.angle_dependent ? Symmetry::Axisymmetric : Symmetry::Radial, axis,
      value);
}

CylindricalField convert_orientation(const CylindricalField& v) {
  CylindricalField w = v;
  w.orientation = (v.orientation == CylOrientation::Log) ? CylOrientation::NegLog
                                                         : CylOrientation::Log;
  const auto inner = v.value;
  w.value = [inner](double c, double phi) { return inner(-c, phi); };
  return w;
}

CylindricalField reflect(const CylindricalField& v, double c1) {
  CylindricalField w = v;
  const auto inner = v.value;
  w.value = [inner, c1](double c, double phi) { return inner(2.0 * c1 - c, phi); };
  return w;
}

DeformedDelaunay::DeformedDelaunay(std::shared_ptr<const DelaunayProfile> base,
                                   Eigen::VectorXd xi, double shift)
    : base_(std::move(base)), xi_(std::move(xi)), shift_(shift) {
  if (xi_.size() != base_->dim.n()) {
    throw std::invalid_argument("DeformedDelaunay: xi dimension mismatch");
  }
}

double DeformedDelaunay::rho_squared(const Eigen::VectorXd& x) const {
  const double e = std::exp(-shift_);
  const double rho2 = 1.0 - 2.0 * e * x.dot(xi_) +
                      e * e * x.squaredNorm() * xi_.squaredNorm();
  if (!(rho2 > 1e-300)) {
    throw std::domain_error("DeformedDelaunay: singular evaluation point");
  }
  return rho2;
}

double DeformedDelaunay::value(const Eigen::VectorXd& x) const {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("DeformedDelaunay: singular at the origin");
  const int n = base_->dim.n();
  const double rho = std::sqrt(rho_squared(x));
  const double s = -std::log(r) + shift_;
  return std::pow(r * rho, 0.5 * (2 - n)) * base_->value(s + std::log(rho));
}

Eigen::VectorXd DeformedDelaunay::gradient(const Eigen::VectorXd& x) const {
  const double r = x.norm();
  if (!(r > 0.0)) throw std::domain_error("DeformedDelaunay: singular at the origin");
  const int n = base_->dim.n();
  const double e = std::exp(-shift_);
  const double rho = std::sqrt(rho_squared(x));
  const double s = -std::log(r) + shift_;
  const double tau = s + std::log(rho);
  const double v = base_->value(tau);
  const double vp = base_->derivative(tau);
  const double u = std::pow(r * rho, 0.5 * (2 - n)) * v;

  const Eigen::VectorXd theta_over_r = x / (r * r);
  const Eigen::VectorXd grad_rho_over_rho =
      (e * e * xi_.squaredNorm() * x - e * xi_) / (rho * rho);
  const Eigen::VectorXd grad_log_u =
      0.5 * (2 - n) * (theta_over_r + grad_rho_over_rho) +
      (vp / v) * (grad_rho_over_rho - theta_over_r);
  return u * grad_log_u;
}

double DeformedDelaunay::cylindrical_value(double t, double phi) const {
  const int n = base_->dim.n();
  const double e = std::exp(-(t + shift_));
  const double xin = xi_.norm();
  const double rho2 =
      1.0 - 2.0 * e * xin * std::cos(phi) + e * e * xin * xin;
  if (!(rho2 > 1e-300)) {
    throw std::domain_error("DeformedDelaunay: singular evaluation point");
  }
  const double rho = std::sqrt(rho2);
  return std::pow(rho, 0.5 * (2 - n)) *
         base_->value(t + shift_ + std::log(rho));
}

Field DeformedDelaunay::as_field() const {
  Field f;
  f.n = base_->dim.n();
  const double xin = xi_.norm();
  if (xin == 0.0) {
    f.symmetry = Symmetry::Radial;
  } else {
    f.symmetry = Symmetry::Axisymmetric;
    f.axis = xi_ / xin;
  }
  const DeformedDelaunay self = *this;
  f.value = [self](const Eigen::VectorXd& x) { return self.value(x); };
  f.gradient = [self](const Eigen::VectorXd& x) { return self.gradient(x); };
  return f;
}

CylindricalField DeformedDelaunay::as_cylindrical() const {
  CylindricalField v;
  v.n = base_->dim.n();
  v.orientation = CylOrientation::NegLog;
  const double xin = xi_.norm();
  v.angle_dependent = (xin != 0.0);
  v.axis = v.angle_dependent ? (xi_ / xin).eval()
                             : Eigen::VectorXd::Unit(v.n, 0).eval();
  const DeformedDelaunay self = *this;
  v.value = [self](double t, double phi) { return self.cylindrical_value(t, phi); };
  return v;
}

DeformedDelaunay deform_delaunay(std::shared_ptr<const DelaunayProfile> base,
                                 const Eigen::VectorXd& xi, double shift) {
  return DeformedDelaunay(std::move(base), xi, shift);
}

std::function<double(const Eigen::VectorXd&)> deformed_curvature(
    std::function<double(const Eigen::VectorXd&)> K, const Eigen::VectorXd& xi) {
  return [K, xi](const Eigen::VectorXd& x) {
    const double r2 = x.squaredNorm();
    if (!(r2 > 0.0)) throw std::domain_error("deformed_curvature: origin");
    const Eigen::VectorXd w = x / r2 - xi;
    const double w2 = w.squaredNorm();
    if (!(w2 > 0.0)) throw std::domain_error("deformed_curvature: singular point");
    return K(w / w2);
  };
}

double cylindrical_residual(const CylindricalField& v, double c, double phi,
                            double h) {
  if (!(h > 0.0)) throw std::domain_error("cylindrical_residual: h > 0");
  const int n = v.n;
  const double p = Dimension(n).critical_exponent();

  // Even extension in phi across both poles.
  const auto val = [&](double cc, double ph) {
    if (ph < 0.0) ph = -ph;
    if (ph > kPi) ph = 2.0 * kPi - ph;
    return v.value(cc, ph);
  };

  const double v0 = val(c, phi);
  const double d2_c = (val(c + h, phi) - 2.0 * v0 + val(c - h, phi)) / (h * h);

  double lap_theta = 0.0;
  if (v.angle_dependent) {
    const bool at_pole = (phi == 0.0) || (phi == kPi);
    if (at_pole) {
      const double d2 = (val(c, phi + h) - 2.0 * v0 + val(c, phi - h)) / (h * h);
      lap_theta = (n - 1) * d2;
    } else if (phi < 2.0 * h || kPi - phi < 2.0 * h) {
      throw StencilError(
          "cylindrical_residual: too close to the axis for this step");
    } else {
      const double d2 = (val(c, phi + h) - 2.0 * v0 + val(c, phi - h)) / (h * h);
      const double d1 = (val(c, phi + h) - val(c, phi - h)) / (2.0 * h);
      lap_theta = d2 + (n - 2) * d1 / std::tan(phi);
    }
  }

  const double cc = 0.25 * double(n - 2) * (n - 2);
  return d2_c + lap_theta - cc * v0 +
         double(n) * (n - 2) * std::pow(v0, p);
}

}  // namespace csc

#include "csc/field.hpp"

#include <cmath>

namespace csc {

Field constant_field(int n, double c) {
  Field f;
  f.n = n;
  f.symmetry = Symmetry::Radial;
  f.value = [c](const Eigen::VectorXd&) { return c; };
  f.gradient = [n](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(n).eval();
  };
  return f;
}

Field radial_power_field(int n, double exponent) {
  Field f;
  f.n = n;
  f.symmetry = Symmetry::Radial;
  f.value = [exponent](const Eigen::VectorXd& x) {
    return std::pow(x.norm(), exponent);
  };
  f.gradient = [exponent](const Eigen::VectorXd& x) {
    const double r = x.norm();
    return (exponent * std::pow(r, exponent - 2.0) * x).eval();
  };
  return f;
}

Field profile_induced_field(std::shared_ptr<const DelaunayProfile> profile,
                            double shift) {
  Field f;
  const int n = profile->dim.n();
  f.n = n;
  f.symmetry = Symmetry::Radial;
  f.value = [profile, shift, n](const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::domain_error("profile field: singular at the origin");
    return std::pow(r, 0.5 * (2 - n)) * profile->value(-std::log(r) + shift);
  };
  f.gradient = [profile, shift, n](const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::domain_error("profile field: singular at the origin");
    const double t = -std::log(r) + shift;
    const double v = profile->value(t);
    const double vp = profile->derivative(t);
    // d/dr [r^{(2-n)/2} v(-ln r)] = r^{-n/2} ((2-n)/2 v - v').
    const double du_dr = std::pow(r, -0.5 * n) * (0.5 * (2 - n) * v - vp);
    return (du_dr / r * x).eval();
  };
  return f;
}

Field cylinder_induced_field(Dimension dim) {
  Field f;
  const int n = dim.n();
  f.n = n;
  f.symmetry = Symmetry::Radial;
  f.value = [dim, n](const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::domain_error("cylinder field: singular at the origin");
    return std::pow(r, 0.5 * (2 - n)) * cylinder_value(dim, -std::log(r));
  };
  f.gradient = [dim, n](const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw std::domain_error("cylinder field: singular at the origin");
    const double t = -std::log(r);
    const double v = cylinder_value(dim, t);
    const double vp = cylinder_derivative(dim, t);
    const double du_dr = std::pow(r, -0.5 * n) * (0.5 * (2 - n) * v - vp);
    return (du_dr / r * x).eval();
  };
  return f;
}

Field with_numeric_gradient(int n, Symmetry sym, const Eigen::VectorXd& axis,
                            std::function<double(const Eigen::VectorXd&)> value,
                            double h) {
  Field f;
  f.n = n;
  f.symmetry = sym;
  f.axis = axis;
  f.value = value;
  f.gradient = [value, n, h](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(n);
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + h;
      xm[i] = x[i] - h;
      g[i] = (value(xp) - value(xm)) / (2.0 * h);
      xp[i] = x[i];
      xm[i] = x[i];
    }
    return g;
  };
  return f;
}

Eigen::VectorXd orthogonal_direction(const Eigen::VectorXd& axis) {
  const int n = int(axis.size());
  int smallest = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(axis[i]) < std::abs(axis[smallest])) smallest = i;
  }
  Eigen::VectorXd e = Eigen::VectorXd::Unit(n, smallest);
  Eigen::VectorXd w = e - e.dot(axis) * axis;
  return w / w.norm();
}

Eigen::VectorXd sphere_point(double r, double phi, const Eigen::VectorXd& axis) {
  const Eigen::VectorXd perp = orthogonal_direction(axis);
  return r * (std::cos(phi) * axis + std::sin(phi) * perp);
}

}  // namespace csc

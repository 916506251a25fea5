#include <cmath>
#include <memory>

#include <doctest.h>

#include "csc/delaunay.hpp"
#include "csc/field.hpp"
#include "csc/quadrature.hpp"
#include "csc/roots.hpp"
#include "csc/spherical.hpp"

using namespace csc;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

double fd_laplacian(const Field& u, const Eigen::VectorXd& x, double h) {
  double acc = 0.0;
  const double center = u.value(x);
  Eigen::VectorXd xp = x;
  for (int i = 0; i < u.n; ++i) {
    xp[i] = x[i] + h;
    const double up = u.value(xp);
    xp[i] = x[i] - h;
    const double um = u.value(xp);
    xp[i] = x[i];
    acc += (up - 2.0 * center + um) / (h * h);
  }
  return acc;
}

}  // namespace

TEST_CASE("eval_spherical: fixed values and far-field limit") {
  const SphericalSolution u10(Dimension(3), 1.0, Eigen::VectorXd::Zero(3));
  CHECK(eval_spherical(u10, Eigen::VectorXd::Zero(3)) == doctest::Approx(1.0));

  const SphericalSolution u20(Dimension(3), 2.0, Eigen::VectorXd::Zero(3));
  CHECK(eval_spherical(u20, vec3(1, 0, 0)) ==
        doctest::Approx(std::sqrt(0.4)).epsilon(1e-12));

  // u(x) |x|^{n-2} -> lambda^{(n-2)/2} as |x| -> infinity.
  for (int n : {3, 4, 5}) {
    const double lambda = 1.7;
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
    xi[0] = 0.5;
    const SphericalSolution s(Dimension(n), lambda, xi);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x[n - 1] = 1e6;
    const double limit = eval_spherical(s, x) * std::pow(x.norm(), n - 2);
    CHECK(limit ==
          doctest::Approx(std::pow(lambda, 0.5 * (n - 2))).epsilon(1e-9));
  }
}

TEST_CASE("spherical gradient matches central differences") {
  Rng rng(11);
  for (int n : {3, 4, 5}) {
    const SphericalSolution s(Dimension(n), rng.uniform(0.5, 2.0),
                              rng.in_box(n, 1.0));
    const Field u = spherical_field(s);
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd x = rng.in_box(n, 2.0);
      const Eigen::VectorXd g = u.gradient(x);
      const double h = 1e-5;
      Eigen::VectorXd xp = x, xm = x;
      for (int i = 0; i < n; ++i) {
        xp[i] += h;
        xm[i] -= h;
        const double fd = (u.value(xp) - u.value(xm)) / (2 * h);
        xp[i] = x[i];
        xm[i] = x[i];
        CHECK(std::abs(g[i] - fd) <=
              1e-6 * std::max(1.0, std::abs(g[i])));
      }
    }
  }
}

TEST_CASE("entire-solution residual is second order in the stencil step") {
  Rng rng(13);
  const double h = 1e-3;
  for (int n : {3, 4, 5}) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double lambda = rng.uniform(1.2, 2.0);
      const Eigen::VectorXd xi = rng.in_box(n, 1.0);
      const SphericalSolution s(Dimension(n), lambda, xi);
      const Field u = spherical_field(s);
      const Eigen::VectorXd x = xi + rng.in_ball(n, 2.0 * lambda);
      const double res =
          fd_laplacian(u, x, h) +
          n * (n - 2) * std::pow(u.value(x), Dimension(n).critical_exponent());
      worst = std::max(worst, std::abs(res));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("spherical mass: closed form and parameter invariance") {
  const QuadratureRule gl = gauss_legendre(200);
  const SphericalSolution s3(Dimension(3), 1.0, Eigen::VectorXd::Zero(3));
  const MassResult m3 = spherical_mass(s3, gl);
  CHECK(m3.value == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-10));
  CHECK(m3.error < 1e-10);

  const SphericalSolution s4(Dimension(4), 1.0, Eigen::VectorXd::Zero(4));
  CHECK(spherical_mass(s4, gl).value ==
        doctest::Approx(sphere_area(4) / 16.0).epsilon(1e-10));

  const SphericalSolution moved(Dimension(3), 5.0, vec3(3, 0, 0));
  CHECK(std::abs(spherical_mass(moved, gl).value - m3.value) < 1e-12);

  // A rule too coarse to resolve the integrand is a reported failure.
  CHECK_THROWS_AS(spherical_mass(s3, gauss_legendre(4)), AccuracyError);
}

TEST_CASE("hamiltonian: fixed values") {
  const Dimension d3(3);
  CHECK(hamiltonian(d3, std::pow(2.0, -0.5), 0.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(hamiltonian(d3, 0.2, 0.0) == doctest::Approx(-0.009936).epsilon(1e-14));
  CHECK_THROWS_AS(hamiltonian(d3, -0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(hamiltonian(d3, 0.0, 0.0), std::domain_error);
}

TEST_CASE("energy floor equals the energy of the constant solution") {
  for (int n : {3, 4, 5, 6}) {
    const Dimension dim(n);
    const double vbar = constant_solution_value(dim);
    // Direct substitution into the energy at zero velocity.
    CHECK(hamiltonian_floor(dim) ==
          doctest::Approx(hamiltonian(dim, vbar, 0.0)).epsilon(1e-15));
    // Dense scan: no turning level lies below the floor.
    double lowest = 0.0;
    for (int i = 1; i <= 2000; ++i) {
      lowest = std::min(lowest, turning_energy(dim, i * 5e-4));
    }
    CHECK(hamiltonian_floor(dim) <= lowest + 1e-12);
    CHECK(hamiltonian_floor(dim) ==
          doctest::Approx(lowest).epsilon(1e-6));
  }
  // n = 3 value of the floor.
  CHECK(hamiltonian_floor(Dimension(3)) ==
        doctest::Approx(-std::sqrt(1.0 / 12.0) / 6.0).epsilon(1e-14));
}

TEST_CASE("cylinder solution: values, symmetry, zero energy") {
  const Dimension d3(3);
  CHECK(cylinder_value(d3, 0.0) ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const double t = rng.uniform(-5.0, 5.0);
    CHECK(cylinder_value(d3, t) == doctest::Approx(cylinder_value(d3, -t)));
    const double H =
        hamiltonian(d3, cylinder_value(d3, t), cylinder_derivative(d3, t));
    CHECK(std::abs(H) < 1e-14);
  }
  CHECK(cylinder_value(Dimension(4), 40.0) < 1e-15);
}

TEST_CASE("neck-size / energy relation and its inverse") {
  const Dimension d3(3);
  CHECK(neck_to_energy(d3, 0.2) == doctest::Approx(-0.009936).epsilon(1e-14));
  CHECK_THROWS_AS(neck_to_energy(d3, 0.0), std::domain_error);
  CHECK_THROWS_AS(neck_to_energy(d3, 0.6), std::domain_error);

  CHECK(energy_to_neck(d3, -0.009936) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK_THROWS_AS(energy_to_neck(d3, 0.1), std::domain_error);
  CHECK_THROWS_AS(energy_to_neck(d3, hamiltonian_floor(d3) * 1.01),
                  std::domain_error);

  // Near the endpoints of the admissible energy range.
  const double tiny = neck_to_energy(d3, 1e-6);
  CHECK(tiny < 0.0);
  CHECK(tiny > -1e-11);
  const double near_floor = hamiltonian_floor(d3) * (1.0 - 1e-10);
  CHECK(energy_to_neck(d3, near_floor) ==
        doctest::Approx(constant_solution_value(d3)).epsilon(1e-4));

  // Round trip across the admissible interval.
  for (int n : {3, 4, 5}) {
    const Dimension dim(n);
    const double vbar = constant_solution_value(dim);
    for (int i = 0; i < 50; ++i) {
      const double eps = vbar * std::pow(10.0, -4.0 * (49 - i) / 49.0) * 0.999;
      const double back = energy_to_neck(dim, neck_to_energy(dim, eps));
      CHECK(std::abs(back - eps) <= 1e-10);
    }
  }
}

TEST_CASE("upper turning point against a dense scan of the energy level") {
  const Dimension d3(3);
  const double eps = 0.2;
  const double H = neck_to_energy(d3, eps);
  const double vmax = upper_turning_point(d3, eps);
  CHECK(std::abs(turning_energy(d3, vmax) - H) < 1e-14);
  CHECK(vmax > constant_solution_value(d3));
  // Scan oracle: the sign of H(v,0) - H changes inside [vmax-d, vmax+d].
  double bracket_lo = 0.0, bracket_hi = 0.0;
  for (double v = 0.6; v < 0.8; v += 1e-5) {
    if ((turning_energy(d3, v) - H) <= 0.0 &&
        (turning_energy(d3, v + 1e-5) - H) > 0.0) {
      bracket_lo = v;
      bracket_hi = v + 1e-5;
    }
  }
  CHECK(vmax >= bracket_lo);
  CHECK(vmax <= bracket_hi);
  CHECK(vmax == doctest::Approx(0.69195).epsilon(1e-4));
}

TEST_CASE("delaunay trajectory: minimum, conservation, drift bound") {
  const Dimension d3(3);
  const double eps = 0.2;
  const DelaunayProfile p = integrate_delaunay(d3, eps, 1, 1e-10);

  // Minimum over one period equals the neck-size.
  double vmin = 1e300;
  for (int i = 0; i <= 4096; ++i) {
    vmin = std::min(vmin, p.value(p.period * i / 4096.0));
  }
  CHECK(std::abs(vmin - eps) < 1e-8);

  CHECK(p.max_drift < 1e-8);
  CHECK(p.value(0.0) == doctest::Approx(p.v_max).epsilon(1e-12));
  CHECK(std::abs(p.derivative(0.0)) < 1e-10);

  CHECK_THROWS_AS(integrate_delaunay(d3, 0.9, 1, 1e-10), std::domain_error);
  CHECK_THROWS_AS(integrate_delaunay(d3, 0.2, 0, 1e-10), std::domain_error);
  // A drift budget below what the step controller can deliver is an error.
  CHECK_THROWS_AS(integrate_delaunay(d3, 0.2, 10, 1e-14), AccuracyError);
}

TEST_CASE("hamiltonian conservation over ten periods") {
  const Dimension d3(3);
  for (double eps : {0.1, 0.2, 0.3}) {
    const DelaunayProfile p = integrate_delaunay(d3, eps, 10, 1e-10);
    CHECK(p.max_drift < 1e-8);
  }
}

TEST_CASE("near the constant solution the trajectory stays near it") {
  const Dimension d3(3);
  const double vbar = constant_solution_value(d3);
  const double eps = vbar - 4e-4;
  const DelaunayProfile p = integrate_delaunay(d3, eps, 1, 1e-10);
  for (int i = 0; i <= 512; ++i) {
    CHECK(std::abs(p.value(p.period * i / 512.0) - vbar) < 1e-3);
  }
}

TEST_CASE("two period computations agree and the map is monotone") {
  const Dimension d3(3);
  for (double eps : {0.1, 0.2, 0.3}) {
    const DelaunayProfile p = integrate_delaunay(d3, eps, 10, 1e-10);
    CHECK(std::abs(p.period - p.period_measured) / p.period < 1e-6);
  }
  CHECK(delaunay_period(d3, 0.025) > delaunay_period(d3, 0.05));
  CHECK(delaunay_period(d3, 0.05) > delaunay_period(d3, 0.1));
  CHECK(delaunay_period(d3, 0.1) > delaunay_period(d3, 0.2));
}

TEST_CASE("period grows without visible bound as the neck shrinks") {
  const Dimension d3(3);
  double prev = 0.0;
  for (int k = 2; k <= 10; ++k) {
    const double t = delaunay_period(d3, std::pow(2.0, -k));
    CHECK(t > prev);
    prev = t;
  }
}

TEST_CASE("period limit at the constant-solution endpoint") {
  // Near the upper end of the neck range the oscillation is harmonic with
  // frequency sqrt(n-2), so the period approaches 2 pi / sqrt(n-2); it
  // does not collapse to zero.
  for (int n : {3, 4, 5}) {
    const Dimension dim(n);
    const double vbar = constant_solution_value(dim);
    const double t = delaunay_period(dim, vbar * (1.0 - 1e-5));
    CHECK(t == doctest::Approx(2.0 * kPi / std::sqrt(n - 2.0)).epsilon(1e-3));
  }
}

TEST_CASE("profiles approach the zero-energy solution as the neck shrinks") {
  const Dimension d3(3);
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const DelaunayProfile p = integrate_delaunay(d3, eps, 1, 1e-10);
    double sup = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double t = -2.0 + 4.0 * i / 256.0;
      sup = std::max(sup, std::abs(p.value(t) - cylinder_value(d3, t)));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("turning level root via find_root matches the scan") {
  // The upper turning point of the eps = 0.2 level, bracketed between the
  // constant solution value and 1.
  const Dimension d3(3);
  const double H = neck_to_energy(d3, 0.2);
  const double root = find_root(
      [&](double v) { return turning_energy(d3, v) - H; },
      constant_solution_value(d3), 1.0, 1e-12);
  CHECK(root == doctest::Approx(upper_turning_point(d3, 0.2)).epsilon(1e-10));
}

TEST_CASE("profile-induced field evaluates the cylindrical formula") {
  const Dimension d3(3);
  auto p = std::make_shared<const DelaunayProfile>(
      integrate_delaunay(d3, 0.2, 1, 1e-10));
  const Field u = profile_induced_field(p);
  const double r = 0.37;
  CHECK(u.value(vec3(r, 0, 0)) ==
        doctest::Approx(std::pow(r, -0.5) * p->value(-std::log(r)))
            .epsilon(1e-13));
  // gradient against central differences
  const Eigen::VectorXd x = vec3(0.3, -0.2, 0.1);
  const Eigen::VectorXd g = u.gradient(x);
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    CHECK(g[i] == doctest::Approx((u.value(xp) - u.value(xm)) / (2 * h))
                      .epsilon(1e-5));
  }
}

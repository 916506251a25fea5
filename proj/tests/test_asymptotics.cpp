#include <cmath>
#include <memory>

#include <doctest.h>

#include "csc/asymptotics.hpp"
#include "csc/spherical.hpp"
#include "csc/transforms.hpp"

using namespace csc;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

std::shared_ptr<const DelaunayProfile> profile3(double eps) {
  return std::make_shared<const DelaunayProfile>(
      integrate_delaunay(Dimension(3), eps, 1, 1e-10));
}

const RadialGrid kWideGrid = RadialGrid::make(1.0, 1e12, 49);

}  // namespace

TEST_CASE("decay classification of the three families") {
  for (int n : {3, 4, 5}) {
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
    xi[0] = 0.4;
    const Field u = spherical_field(SphericalSolution(Dimension(n), 1.0, xi));
    const DecayReport rep = classify_decay(u, kWideGrid, 33);
    CHECK(rep.classification == DecayClass::Fast);
    CHECK(std::abs(rep.fitted_exponent + (n - 2.0)) < 0.05);
  }

  const Field slow = profile_induced_field(profile3(0.2));
  const DecayReport rep = classify_decay(slow, kWideGrid, 33);
  CHECK(rep.classification == DecayClass::SlowWithLowerBound);
  CHECK(std::abs(rep.fitted_exponent + 0.5) < 0.05);
  for (double h : rep.harnack) CHECK(h == 1.0);

  const DecayReport flat = classify_decay(constant_field(3, 1.0), kWideGrid, 33);
  CHECK(flat.classification == DecayClass::Unclassified);
  CHECK(std::abs(flat.fitted_exponent) < 0.05);

  CHECK_THROWS_AS(classify_decay(constant_field(3, 1.0),
                                 RadialGrid::make(1.0, 10.0, 9), 8),
                  std::domain_error);
  CHECK_THROWS_AS(classify_decay(constant_field(3, -1.0), kWideGrid, 8),
                  std::domain_error);
}

TEST_CASE("harnack quotients") {
  const Field radial = profile_induced_field(profile3(0.3));
  CHECK(harnack_quotient(radial, 7.3, 33) == 1.0);

  const Field moved =
      spherical_field(SphericalSolution(Dimension(3), 1.0, vec3(0.5, 0, 0)));
  double prev = harnack_quotient(moved, 1.0, 65);
  CHECK(prev > 1.0);
  for (double r : {10.0, 100.0, 1000.0}) {
    const double q = harnack_quotient(moved, r, 65);
    CHECK(q < prev);
    prev = q;
  }
  CHECK(harnack_quotient(moved, 1000.0, 65) < 1.01);

  auto base = profile3(0.2);
  const Field def = deform_delaunay(base, vec3(0.3, 0, 0), 0.0).as_field();
  for (int j = 0; j <= 10; ++j) {
    const double q = harnack_quotient(def, std::pow(2.0, j), 65);
    CHECK(q >= 1.0);
    CHECK(q < 50.0);
  }
}

TEST_CASE("gradient bound") {
  const RadialGrid grid = RadialGrid::make(0.1, 1e4, 25);
  CHECK(gradient_bound(constant_field(3, 2.0), grid, 17) == 0.0);

  const Field u10 =
      spherical_field(SphericalSolution(Dimension(3), 1.0, vec3(0, 0, 0)));
  const double g = gradient_bound(u10, grid, 17);
  CHECK(g <= 1.0 + 1e-9);
  CHECK(g > 0.9);

  const double gc = gradient_bound(cylinder_induced_field(Dimension(3)), grid, 17);
  CHECK(gc <= 1.0 + 1e-9);
}

TEST_CASE("superharmonic-type lower bound") {
  const RadialGrid grid = RadialGrid::make(2.0, 1e6, 29);
  const Field sph =
      spherical_field(SphericalSolution(Dimension(3), 1.2, vec3(0.3, 0, 0)));
  CHECK(lower_bound_check(sph, 1.0, grid, 33));

  const Field slow = profile_induced_field(profile3(0.2));
  CHECK(lower_bound_check(slow, 1.0, grid, 33));

  const Field too_fast = radial_power_field(3, -3.0);
  CHECK(!lower_bound_check(too_fast, 1.0, grid, 33));
}

TEST_CASE("slow-decay equivalences hold jointly on every family") {
  auto base = profile3(0.2);
  const Field fields[] = {
      spherical_field(SphericalSolution(Dimension(3), 1.0, vec3(0.4, 0, 0))),
      cylinder_induced_field(Dimension(3)),
      profile_induced_field(base),
      deform_delaunay(base, vec3(0.3, 0, 0), 0.0).as_field()};
  const RadialGrid grid = RadialGrid::make(1.0, 1e6, 25);
  for (const Field& u : fields) {
    const DecayReport rep = classify_decay(u, RadialGrid::make(1.0, 1e12, 49), 33);
    // upper bound at the slow rate or better
    CHECK(rep.fitted_exponent <= -0.5 + 0.05);
    // bounded spherical oscillation
    for (double h : rep.harnack) CHECK(h < 50.0);
    // scale-invariant gradient bound
    CHECK(gradient_bound(u, grid, 33) < 10.0);
  }
}

TEST_CASE("rescale of the regular zero-energy field") {
  // This w extends smoothly through the origin and equals the unit
  // spherical solution; the weighted maximizer sits where the two branches
  // of the cutoff weight meet.
  const Field w = cylinder_induced_field(Dimension(3));
  const double cutoff = 1e-3;
  const RescaleReport rep = blowup_rescale(w, cutoff, 5.0);

  const double r_mid = 0.5 * (5.0 / 8.0 + cutoff);
  CHECK(rep.max_point.norm() == doctest::Approx(r_mid).epsilon(1e-5));
  // closed form of the weighted maximum at the meeting point
  const double expected_M =
      std::sqrt((r_mid - cutoff) / (1.0 + r_mid * r_mid));
  CHECK(rep.M == doctest::Approx(expected_M).epsilon(1e-6));
  // normalization: the profile equals one at the origin
  const double v0 = std::pow(rep.mu, 0.5) * w.value(rep.max_point);
  CHECK(v0 == doctest::Approx(1.0).epsilon(1e-12));
  // the weighted max does not grow as the cutoff shrinks
  CHECK(rep.bounded);

  // deviation against a dense independent scan of the same quantity
  const SphericalSolution ref(Dimension(3), 1.0, Eigen::VectorXd::Zero(3));
  double oracle = 0.0;
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(3, 0);
  const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(3, 1);
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j <= 64; ++j) {
      const double rr = 5.0 * i / 200.0;
      const double ph = kPi * j / 64.0;
      const Eigen::VectorXd y =
          rr * (std::cos(ph) * e1 + std::sin(ph) * e2);
      const double v =
          std::sqrt(rep.mu) * w.value(rep.max_point + rep.mu * y);
      oracle = std::max(oracle, std::abs(v - eval_spherical(ref, y)));
    }
  }
  CHECK(rep.sup_deviation == doctest::Approx(oracle).epsilon(0.05));
  CHECK(rep.sup_deviation < 0.15);
  CHECK(rep.sup_deviation > 0.01);
}

TEST_CASE("rescale of a periodic singular field finds the outermost bead") {
  auto base = profile3(0.05);
  const Field w = profile_induced_field(base);
  const RescaleReport rep = blowup_rescale(w, 1e-12, 5.0);

  // maximizer at the first profile maximum below the domain, r = e^{-T}
  CHECK(std::abs(std::log(rep.max_point.norm()) + base->period) < 0.05);
  // rescale length relative to the maximizer radius
  CHECK(rep.mu / rep.max_point.norm() ==
        doctest::Approx(std::pow(base->v_max, -2.0)).epsilon(1e-3));
  // the sampled profile respects the doubling bound on the guaranteed ball
  for (std::size_t k = 0; k < rep.sample_value.size(); ++k) {
    const double rr = std::hypot(rep.sample_par[k], rep.sample_perp[k]);
    if (rr <= rep.guaranteed_radius) {
      CHECK(rep.sample_value[k] <= std::sqrt(2.0) * (1.0 + 1e-6));
    }
  }
  // a slow-decay field does not concentrate: flagged as bounded
  CHECK(rep.bounded);
}

TEST_CASE("matched profile deviation shrinks with the neck") {
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    auto base = profile3(eps);
    const Field w = profile_induced_field(base);
    const RescaleReport rep = blowup_rescale(w, 1e-12, 5.0);
    CHECK(rep.matched_deviation < prev);
    prev = rep.matched_deviation;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("degenerate search windows are reported") {
  // A field spiking toward the outer rim of the domain drives the
  // maximizer into the last grid cell.
  Field spike;
  spike.n = 3;
  spike.symmetry = Symmetry::Radial;
  spike.value = [](const Eigen::VectorXd& x) {
    return 1.0 / (5.0 / 8.0 - x.norm() + 1e-12);
  };
  spike.gradient = [](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(3).eval();
  };
  CHECK_THROWS_AS(blowup_rescale(spike, 1e-3, 5.0), SearchError);
  CHECK_THROWS_AS(blowup_rescale(constant_field(3, 1.0), 0.7, 5.0),
                  std::domain_error);
}

TEST_CASE("normalized blow-up") {
  const Eigen::VectorXd xi = vec3(0.3, -0.2, 0.5);
  const double lambda = 1.7;
  const SphericalSolution s(Dimension(3), lambda, xi);
  const Field u = spherical_field(s);
  const double m = eval_spherical(s, xi);  // global maximum
  const double q = Dimension(3).mass_exponent();

  const Field v = normalized_blowup(u, xi, m, q);
  CHECK(v.value(Eigen::VectorXd::Zero(3)) == 1.0);

  // At the critical exponent the rescaled spherical solution is the unit
  // one, for every lambda.
  const SphericalSolution unit(Dimension(3), 1.0, Eigen::VectorXd::Zero(3));
  Rng rng(73);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd x = rng.in_box(3, 3.0);
    CHECK(v.value(x) == doctest::Approx(eval_spherical(unit, x)).epsilon(1e-12));
    CHECK(v.value(x) <= 1.0 + 1e-12);
  }

  // gradient chain rule
  const Eigen::VectorXd x0 = vec3(0.4, 0.1, -0.2);
  const Eigen::VectorXd g = v.gradient(x0);
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp[i] += 1e-6;
    xm[i] -= 1e-6;
    CHECK(g[i] == doctest::Approx((v.value(xp) - v.value(xm)) / 2e-6)
                      .epsilon(1e-5));
  }

  CHECK_THROWS_AS(normalized_blowup(u, xi, -1.0, q), std::domain_error);
  CHECK_THROWS_AS(normalized_blowup(u, xi, m, 2.0), std::domain_error);
  CHECK_THROWS_AS(normalized_blowup(u, xi, m, q + 0.1), std::domain_error);
}

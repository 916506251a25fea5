#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace csc {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr double kPi = std::numbers::pi;

/// Numerical accuracy could not be reached (quadrature or integrator).
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root bracket does not contain a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation requiring radial/axial symmetry was given a general field.
class SymmetryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil could not be placed.
class StencilError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A maximizer search terminated on the boundary of its domain.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spatial dimension n >= 3.  The two exponents that govern the critical
/// equation are derived from n and never stored separately.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3) throw std::domain_error("Dimension: n must be >= 3");
  }
  int n() const { return n_; }
  /// (n+2)/(n-2), the exponent of the nonlinearity.
  double critical_exponent() const {
    return double(n_ + 2) / double(n_ - 2);
  }
  /// 2n/(n-2), the exponent of the conserved volume integral.
  double mass_exponent() const { return 2.0 * n_ / double(n_ - 2); }

 private:
  int n_;
};

/// Surface measure of the unit k-sphere in R^{k+1}:
///   omega_k = 2 pi^{(k+1)/2} / Gamma((k+1)/2).
/// Throughout this library omega_k always denotes the k-dimensional
/// measure of the unit k-sphere (so omega_2 = 4 pi, omega_3 = 2 pi^2).
double sphere_area(int k);

/// Gamma(m/2) for integer m >= 1, evaluated exactly from the half-integer
/// recurrence.  Only integer and half-integer arguments occur in this
/// library, so no general-purpose approximation is needed.
double gamma_half_integer(int m);

struct SphereMeasure {
  Dimension dim;
  double omega_n;          // measure of S^n in R^{n+1}
  double omega_n_minus_1;  // measure of S^{n-1} in R^n

  static SphereMeasure of(Dimension dim) {
    return SphereMeasure{dim, sphere_area(dim.n()), sphere_area(dim.n() - 1)};
  }
};

enum class GridSpacing { LogUniform, Linear };

/// Strictly increasing positive radii.
struct RadialGrid {
  std::vector<double> radii;
  GridSpacing spacing = GridSpacing::LogUniform;

  static RadialGrid make(double lo, double hi, int count,
                         GridSpacing spacing = GridSpacing::LogUniform);
  double decades() const;
};

/// Deterministic random source.  The raw 64-bit stream is mapped to doubles
/// by hand so that sampled values depend only on the seed, not on the
/// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double a, double b);    // [a, b)
  double normal();
  Eigen::VectorXd normal_vector(int n);
  Eigen::VectorXd on_sphere(int n);
  Eigen::VectorXd in_ball(int n, double radius);
  Eigen::VectorXd in_box(int n, double half_width);

 private:
  std::mt19937_64 gen_;
};

}  // namespace csc

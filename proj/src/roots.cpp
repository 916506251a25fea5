#include "csc/roots.hpp"

#include <cmath>
#include <limits>

#include "csc/core.hpp"

namespace csc {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0)) {
    throw BracketError("find_root: no sign change on the given bracket");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const double width = b - a;
    const double scale = std::max(std::abs(a), std::abs(b));
    if (width <= std::max(tol, 4.0 * eps * scale)) break;

    // Secant candidate, accepted only if it lands well inside the bracket.
    double c = (fb - fa != 0.0) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
    const double margin = 0.01 * width;
    if (!(c > a + margin && c < b - margin)) c = 0.5 * (a + b);

    const double fc = f(c);
    if (fc == 0.0) return c;
    if (fa * fc < 0.0) {
      b = c;
      fb = fc;
    } else {
      a = c;
      fa = fc;
    }
  }
  // Midpoint of the final bracket; both endpoints satisfy the width bound.
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace csc

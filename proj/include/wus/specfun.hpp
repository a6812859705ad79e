#pragma once

#include <functional>

namespace wus {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Principal branch W0 of the Lambert W function, for x >= -1/e.
///
/// Starts from a branch-point series near -1/e, log1p(x) for moderate x and
/// the asymptotic log(x) - log(log(x)) for large x, then Halley steps.
double lambert_w0(double x);

/// Bracketed root of f. Illinois-modified regula falsi, falling back to a
/// bisection step whenever the bracket fails to shrink by half.
double find_root(const std::function<double(double)>& f, Bracket bracket, double tol = 1e-12);

}  // namespace wus

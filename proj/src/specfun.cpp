#include "wus/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wus/errors.hpp"

namespace wus {

namespace {

// 1/e split into a double and its rounding error.
constexpr double kInvEHi = 0.36787944117144233;
constexpr double kInvELo = -1.2428753672788363e-17;

// Distance p = sqrt(2 (e x + 1)) from the branch point, with x + 1/e formed
// before scaling so that nothing cancels.
double branch_distance(double x) {
  const double q = (x + kInvEHi) + kInvELo;
  return std::sqrt(std::max(0.0, 2.0 * std::numbers::e * q));
}

double branch_series(double p) {
  static constexpr double c[] = {-1.0,
                                 1.0,
                                 -1.0 / 3.0,
                                 11.0 / 72.0,
                                 -43.0 / 540.0,
                                 769.0 / 17280.0,
                                 -221.0 / 8505.0,
                                 680863.0 / 43545600.0,
                                 -1963.0 / 204120.0,
                                 226287557.0 / 37623398400.0};
  double w = 0.0;
  for (int k = 9; k >= 0; --k) w = w * p + c[k];
  return w;
}

double initial_guess(double x) {
  if (x < -0.25) return branch_series(branch_distance(x));
  if (x < 3.0) return std::log1p(x) * (x < 0.0 ? 1.0 : 0.9);
  const double l = std::log(x);
  return l - std::log(l);
}

}  // namespace

double lambert_w0(double x) {
  constexpr double branch = -1.0 / std::numbers::e;
  if (std::isnan(x)) throw DomainError("lambert_w0: argument is NaN");
  if (std::abs(x) < 1e-300) return x;
  if (x < branch - 1e-15) {
    throw DomainError("lambert_w0: argument " + std::to_string(x) + " is below -1/e");
  }
  if (x <= branch) return -1.0;
  if (std::isinf(x)) return x;
  if (x < -0.3) {
    const double p = branch_distance(x);
    if (p < 0.05) return branch_series(p);
  }

  double w = initial_guess(x);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double find_root(const std::function<double(double)>& f, Bracket bracket, double tol) {
  double a = bracket.lo;
  double b = bracket.hi;
  if (!(a < b)) throw InvalidArgument("find_root: bracket must satisfy lo < hi");
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
    throw NoRoot("find_root: no sign change on [" + std::to_string(a) + ", " + std::to_string(b) +
                 "]");
  }

  int side = 0;
  for (int it = 0; it < 400; ++it) {
    const double width = b - a;
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = f(c);
    if (std::abs(fc) < tol || fc == 0.0) return c;

    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }

    if (b - a > 0.5 * width) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (std::abs(fm) < tol || fm == 0.0) return m;
      if ((fm > 0.0) == (fb > 0.0)) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
      side = 0;
    }
    const double mid = 0.5 * (a + b);
    if (b - a <= tol * std::max(1.0, std::abs(mid))) return mid;
  }
  return 0.5 * (a + b);
}

}  // namespace wus

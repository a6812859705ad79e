#include "wus/types.hpp"

#include <algorithm>
#include <string>

#include "wus/errors.hpp"

namespace wus {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite(double v) { return std::isfinite(v); }

bool is_multiple(double value, double unit) {
  const double k = value / unit;
  return std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, k);
}

}  // namespace

void PowerProfile::validate() const {
  require(finite(pw1) && finite(pw2) && finite(pw3) && finite(pw4),
          "power levels must be finite");
  require(pw4 >= 0.0, "pw4 must be non-negative");
  require(pw1 > pw4, "pw1 must exceed pw4");
  require(pw3 > pw1, "pw3 must exceed pw1");
  require(pw2 >= pw3, "pw2 must be at least pw3 (phi >= 1)");
}

PowerProfile PowerProfile::reference(double phi) {
  require(finite(phi) && phi >= 1.0, "phi must be >= 1");
  PowerProfile p;
  p.pw2 = phi * p.pw3;
  return p;
}

void TimingParams::validate() const {
  require(finite(t_su) && t_su > 0.0, "t_su must be positive");
  require(finite(t_pd) && t_pd > 0.0, "t_pd must be positive");
  require(finite(t_on) && t_on >= 0.0, "t_on must be non-negative");
  require(finite(tti) && tti > 0.0, "tti must be positive");
  require(finite(t_s) && std::abs(t_s - tti) <= 1e-12 * tti, "t_s must equal one TTI");
  require(t_on < tti, "t_on must be shorter than one TTI");
}

TimingParams TimingParams::reference(double tti) {
  TimingParams t;
  t.tti = tti;
  t.t_s = tti;
  return t;
}

TimingParams TimingParams::ideal(double tti) {
  TimingParams t = reference(tti);
  t.t_on = 0.0;
  return t;
}

void TrafficModel::validate(const TimingParams& timing) const {
  require(finite(lambda) && lambda > 0.0, "lambda must be positive");
  require(lambda * timing.tti < 1.0, "lambda must be below one packet per TTI");
}

void ChannelErrorModel::validate() const {
  require(finite(p_fa) && p_fa >= 0.0 && p_fa < 1.0, "p_fa must lie in [0, 1)");
  require(finite(p_md) && p_md >= 0.0 && p_md < 1.0, "p_md must lie in [0, 1)");
}

void WuConfig::validate(const TimingParams& timing) const {
  const double slack = 1e-9 * timing.tti;
  require(finite(t_w) && t_w >= timing.tti - slack, "t_w must be at least one TTI");
  require(finite(t_i) && t_i >= timing.tti - slack, "t_i must be at least one TTI");
  if (integral) {
    require(is_multiple(t_w, timing.tti), "t_w must be a whole number of TTIs");
    require(is_multiple(t_i, timing.tti), "t_i must be a whole number of TTIs");
  }
}

void Constraint::validate(const TimingParams& timing) const {
  require(finite(d_max), "d_max must be finite");
  if (d_max <= 0.5 * timing.t_s) {
    throw Infeasible("d_max must exceed half a service time (" +
                     std::to_string(0.5 * timing.t_s) + " ms)");
  }
}

}  // namespace wus

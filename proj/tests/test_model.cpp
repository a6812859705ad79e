#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracle.hpp"
#include "wus/errors.hpp"
#include "wus/model.hpp"

using namespace wus;

namespace {

oracle::Params<double> as_oracle(double lambda, const TimingParams& t, const ChannelErrorModel& c,
                                 const WuConfig& cfg) {
  oracle::Params<double> q{lambda, cfg.t_w, cfg.t_i};
  q.t_su = t.t_su;
  q.t_pd = t.t_pd;
  q.t_on = t.t_on;
  q.t_s = t.t_s;
  q.p_fa = c.p_fa;
  q.p_md = c.p_md;
  return q;
}

}  // namespace

TEST_CASE("wake probability matches a Monte Carlo of the detector") {
  const TimingParams timing = TimingParams::reference(1.0);
  const ChannelErrorModel ch{0.1, 0.01};
  const WuConfig cfg{124.0, 1.0, true};
  const TrafficModel traffic{0.08};
  const TransitionMatrix p = transition_probabilities(traffic, timing, ch, cfg);

  std::mt19937_64 gen(12345);
  std::exponential_distribution<double> arrival(traffic.lambda);
  std::bernoulli_distribution fa(ch.p_fa), md(ch.p_md);
  const int n = 400000;
  int wake = 0;
  for (int k = 0; k < n; ++k) {
    const bool packet = arrival(gen) < cfg.t_w;
    wake += packet ? !md(gen) : fa(gen);
  }
  const double est = static_cast<double>(wake) / n;
  const double se = std::sqrt(est * (1 - est) / n);
  CHECK(p[0][1] == doctest::Approx(0.98996).epsilon(1e-4));
  CHECK(std::abs(est - p[0][1]) < 5 * se);
}

TEST_CASE("rows of the transition matrix are distributions") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const TimingParams t = TimingParams::reference(1.0);
    const ChannelErrorModel ch{0.3 * u(gen), 0.3 * u(gen)};
    const WuConfig cfg{1.0 + 3000 * u(gen), 1.0 + 100 * u(gen), false};
    const TransitionMatrix p = transition_probabilities(TrafficModel{0.001 + 0.4 * u(gen)}, t, ch, cfg);
    for (const auto& row : p) {
      double s = 0;
      for (double v : row) {
        CHECK(v >= 0.0);
        s += v;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(p[3][0] == 1.0);
  }
}

TEST_CASE("closed-form stationary law agrees with a generic linear solve") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    TimingParams t = TimingParams::reference(u(gen) < 0.5 ? 1.0 : 0.125);
    const ChannelErrorModel ch{0.2 * u(gen), 0.2 * u(gen)};
    const WuConfig cfg{t.tti + 3000 * u(gen), t.tti * (1 + std::floor(60 * u(gen))), false};
    const double lambda = 0.001 + 0.5 * u(gen);
    const StateVector pi = steady_state(transition_probabilities(TrafficModel{lambda}, t, ch, cfg));
    const auto ref = oracle::stationary(oracle::chain(as_oracle(lambda, t, ch, cfg)));
    double s = 0;
    for (std::size_t i = 0; i < kStates; ++i) {
      CHECK(pi[i] == doctest::Approx(ref[i]).epsilon(1e-11));
      s += pi[i];
    }
    CHECK(s == doctest::Approx(1.0));
    CHECK(pi[0] == doctest::Approx(pi[3]).epsilon(1e-14));
  }
}

TEST_CASE("inactivity sojourn matches numerical integration") {
  const TimingParams t = TimingParams::reference(1.0);
  for (double lambda : {0.005, 0.08, 0.3}) {
    for (double ti : {1.0, 7.0, 40.0}) {
      const StateVector h = expected_holding_times(TrafficModel{lambda}, t, WuConfig{300.0, ti, true});
      // E[min(X, t_i)] for X ~ Exp(lambda) = integral_0^{t_i} P(X > s) ds
      const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [&](double s) { return std::exp(-lambda * s); }, 0.0, ti);
      CHECK(h[2] == doctest::Approx(q).epsilon(1e-12));
      CHECK(h[0] == t.t_on);
      CHECK(h[1] == t.t_s);
      CHECK(h[3] == doctest::Approx(300.0 - t.t_on));
    }
  }
}

TEST_CASE("summary bundles the three pieces") {
  const TimingParams t = TimingParams::reference(1.0);
  const WuConfig cfg{315.0, 1.0, true};
  const SemiMarkovSummary s = summarize(TrafficModel{0.08}, t, ChannelErrorModel::ideal(), cfg);
  CHECK(s.prob(State::Sleep, State::WrxOn) == 1.0);
  CHECK(s.stationary(State::WrxOn) == doctest::Approx(s.stationary(State::Sleep)));
  CHECK(s.holding(State::Decode) == 1.0);
}

TEST_CASE("degenerate chains and bad inputs are rejected") {
  const TimingParams t = TimingParams::reference(1.0);
  TransitionMatrix p = transition_probabilities(TrafficModel{0.05}, t, ChannelErrorModel::ideal(),
                                                WuConfig{100.0, 2.0, true});
  p[1][1] = 1.0;
  p[1][2] = 0.0;
  CHECK_THROWS_AS(steady_state(p), SingularChain);

  CHECK_THROWS_AS(summarize(TrafficModel{-1.0}, t, ChannelErrorModel::ideal(), WuConfig{}), InvalidArgument);
  CHECK_THROWS_AS(summarize(TrafficModel{0.1}, t, ChannelErrorModel{1.5, 0.0}, WuConfig{}), InvalidArgument);
  CHECK_THROWS_AS(summarize(TrafficModel{0.1}, t, ChannelErrorModel::ideal(), WuConfig{-5.0, 1.0, true}),
                  InvalidArgument);
  CHECK_THROWS_AS(summarize(TrafficModel{0.1}, t, ChannelErrorModel::ideal(), WuConfig{100.5, 1.0, true}),
                  InvalidArgument);
}

#pragma once

// Reference implementations used only by the tests. Everything is rebuilt
// from the embedded chain with a generic linear solve, so none of the
// closed forms in the library are reused.

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

// Solves pi P = pi with sum(pi) = 1 by Gaussian elimination on (P^T - I)
// with the last row replaced by the normalization.
template <class T>
std::array<T, 4> stationary(const Mat4<T>& p) {
  using std::abs;
  Mat4<T> a{};
  std::array<T, 4> rhs{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) a[i][j] = p[j][i] - (i == j ? T(1) : T(0));
  }
  for (std::size_t j = 0; j < 4; ++j) a[3][j] = T(1);
  rhs[3] = T(1);
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 4; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == c) continue;
      const T f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::array<T, 4> pi{};
  for (std::size_t i = 0; i < 4; ++i) pi[i] = rhs[i] / a[i][i];
  return pi;
}

template <class T>
struct Params {
  T lambda, t_w, t_i;
  T t_su = 15, t_pd = 10, t_on = 0, t_s = 1;
  T p_fa = 0, p_md = 0;
  T pw1 = 57, pw2 = 935, pw3 = 850, pw4 = 0;
};

template <class T>
Mat4<T> chain(const Params<T>& q) {
  using std::exp;
  Mat4<T> p{};
  const T none = exp(-q.lambda * q.t_w);
  p[0][1] = none * q.p_fa + (T(1) - none) * (T(1) - q.p_md);
  p[0][3] = T(1) - p[0][1];
  p[1][1] = T(1) - exp(-q.lambda * q.t_s);
  p[1][2] = T(1) - p[1][1];
  p[2][1] = T(1) - exp(-q.lambda * q.t_i);
  p[2][3] = T(1) - p[2][1];
  p[3][0] = T(1);
  return p;
}

template <class T>
std::array<T, 4> holding(const Params<T>& q) {
  using std::exp;
  return {q.t_on, q.t_s, (T(1) - exp(-q.lambda * q.t_i)) / q.lambda, q.t_w - q.t_on};
}

// Average power with linear start-up and power-down ramps from the sleep level.
template <class T>
T power(const Params<T>& q) {
  const Mat4<T> p = chain(q);
  const std::array<T, 4> pi = stationary(p);
  const std::array<T, 4> h = holding(q);
  const std::array<T, 4> lv{q.pw1, q.pw2, q.pw3, q.pw4};
  const T up = pi[0] * p[0][1];
  const T down = pi[2] * p[2][3];
  T e = up * q.t_su * (q.pw4 + q.pw2) / 2 + down * q.t_pd * (q.pw4 + q.pw3) / 2;
  T t = up * q.t_su + down * q.t_pd;
  for (std::size_t k = 0; k < 4; ++k) {
    e += pi[k] * h[k] * lv[k];
    t += pi[k] * h[k];
  }
  return e / t;
}

// Delay with ideal detection: a packet arriving t into a sleep period waits
// t_w - t + t_su (+ t_on) before decoding, averaged over sleep entries,
// plus half a service time.
template <class T>
T delay_ideal(const Params<T>& q) {
  using std::exp;
  const std::array<T, 4> pi = stationary(chain(q));
  const T l = q.lambda;
  const T tw = q.t_w;
  // integral_0^tw l e^{-l t} (tw + t_su + t_on - t) dt
  const T c = tw + q.t_su + q.t_on;
  const T integral = c * (T(1) - exp(-l * tw)) - (T(1) - (T(1) + l * tw) * exp(-l * tw)) / l;
  return pi[3] * integral + q.t_s / 2;
}

template <class F>
double central_difference(F f, const mp& x) {
  const mp h = mp("1e-20") * (mp(1) + abs(x));
  return static_cast<double>((f(x + h) - f(x - h)) / (2 * h));
}

}  // namespace oracle

#pragma once

// Central finite differences with step h = eps^(1/3) * (1 + |x|).

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "thermovisc/tensor3.hpp"

namespace thermovisc {

inline double fd_step(double x) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return base * (1.0 + std::abs(x));
}

inline double central_derivative(const std::function<double(double)>& f, double x) {
  const double h = fd_step(x);
  const double xp = x + h, xm = x - h;
  return (f(xp) - f(xm)) / (xp - xm);
}

inline Mat3 central_gradient(const std::function<double(const Mat3&)>& f, const Mat3& x) {
  Mat3 g;
  Mat3 probe = x;
  for (std::size_t i = 0; i < 9; ++i) {
    const double h = fd_step(x.a[i]);
    probe.a[i] = x.a[i] + h;
    const double fp = f(probe);
    const double xp = probe.a[i];
    probe.a[i] = x.a[i] - h;
    const double fm = f(probe);
    const double xm = probe.a[i];
    probe.a[i] = x.a[i];
    g.a[i] = (fp - fm) / (xp - xm);
  }
  return g;
}

inline Vec3 central_gradient(const std::function<double(const Vec3&)>& f, const Vec3& x) {
  Vec3 g;
  Vec3 probe = x;
  for (std::size_t i = 0; i < 3; ++i) {
    const double h = fd_step(x[i]);
    probe[i] = x[i] + h;
    const double fp = f(probe);
    const double xp = probe[i];
    probe[i] = x[i] - h;
    const double fm = f(probe);
    const double xm = probe[i];
    probe[i] = x[i];
    g[i] = (fp - fm) / (xp - xm);
  }
  return g;
}

inline std::vector<double> central_gradient(const std::function<double(const std::vector<double>&)>& f,
                                            const std::vector<double>& x) {
  std::vector<double> g(x.size());
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = fd_step(x[i]);
    probe[i] = x[i] + h;
    const double fp = f(probe);
    const double xp = probe[i];
    probe[i] = x[i] - h;
    const double fm = f(probe);
    const double xm = probe[i];
    probe[i] = x[i];
    g[i] = (fp - fm) / (xp - xm);
  }
  return g;
}

/// Row-major flattening helpers for 3x3 blocks stored in flat arrays.
inline Mat3 block(const double* p) {
  Mat3 m;
  for (std::size_t i = 0; i < 9; ++i) m.a[i] = p[i];
  return m;
}

inline void put_block(double* p, const Mat3& m) {
  for (std::size_t i = 0; i < 9; ++i) p[i] = m.a[i];
}

}  // namespace thermovisc

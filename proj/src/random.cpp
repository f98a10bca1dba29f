#include "thermovisc/random.hpp"

#include <algorithm>
#include <cmath>

namespace thermovisc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_sample(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ index));
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Mat3 random_rotation(Rng& rng) {
  for (;;) {
    Mat3 g;
    for (double& x : g.a) x = rng.normal();
    Vec3 c0 = g.column(0), c1 = g.column(1);
    const double n0 = norm(c0);
    if (n0 < 1e-8) continue;
    c0 = (1.0 / n0) * c0;
    c1 = c1 - dot(c0, c1) * c0;
    const double n1 = norm(c1);
    if (n1 < 1e-8) continue;
    c1 = (1.0 / n1) * c1;
    // The third column of a Gram-Schmidt basis is fixed up to sign; taking
    // the cross product selects det = +1.
    return Mat3::from_columns(c0, c1, cross(c0, c1));
  }
}

Mat3 random_defgrad(Rng& rng, double max_log_stretch, double det_min, double det_max) {
  for (;;) {
    const double u0 = rng.uniform(-max_log_stretch, max_log_stretch);
    const double u1 = rng.uniform(-max_log_stretch, max_log_stretch);
    const double u2 = rng.uniform(-max_log_stretch, max_log_stretch);
    const double d = std::exp(u0 + u1 + u2);
    const Mat3 r1 = random_rotation(rng);
    const Mat3 r2 = random_rotation(rng);
    if (d < det_min || d > det_max) continue;
    return r1 * Mat3::diag(std::exp(u0), std::exp(u1), std::exp(u2)) * r2;
  }
}

Mat3 random_unimodular(Rng& rng, double max_log_stretch) {
  const double u0 = rng.uniform(-max_log_stretch, max_log_stretch);
  const double u1 = rng.uniform(-max_log_stretch, max_log_stretch);
  const Mat3 r1 = random_rotation(rng);
  const Mat3 r2 = random_rotation(rng);
  const Mat3 s = r1 * Mat3::diag(std::exp(u0), std::exp(u1), std::exp(-u0 - u1)) * r2;
  return (1.0 / std::cbrt(det(s))) * s;
}

Mat3 random_matrix(Rng& rng, double lo, double hi) {
  Mat3 m;
  for (double& x : m.a) x = rng.uniform(lo, hi);
  return m;
}

Vec3 random_vector(Rng& rng, double lo, double hi) {
  Vec3 v;
  for (double& x : v.v) x = rng.uniform(lo, hi);
  return v;
}

Sym3 random_sym(Rng& rng, double lo, double hi) {
  Sym3 s;
  for (double& x : s.s) x = rng.uniform(lo, hi);
  return s;
}

Mat3 random_traceless(Rng& rng) {
  Mat3 m;
  for (double& x : m.a) x = rng.normal();
  const double third = trace(m) / 3.0;
  for (std::size_t i = 0; i < 3; ++i) m(i, i) -= third;
  return m;
}

Sym3 random_spd_generic(Rng& rng, double lo, double hi, double min_gap) {
  std::array<double, 3> l{};
  for (;;) {
    for (double& x : l) x = rng.uniform(lo, hi);
    std::sort(l.begin(), l.end());
    if (l[1] - l[0] >= min_gap && l[2] - l[1] >= min_gap) break;
  }
  const Mat3 r = random_rotation(rng);
  return Sym3::sym_of(r * Mat3::diag(l[0], l[1], l[2]) * transpose(r));
}

Mat3 random_skew(Rng& rng) {
  return hat(random_vector(rng));
}

}  // namespace thermovisc

#pragma once

#include <cstdint>
#include <random>

#include "thermovisc/tensor3.hpp"

namespace thermovisc {

/// splitmix64 finalizer; used to derive independent per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable deterministic generator. Same seed, same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Generator for sample `index` of a sweep seeded with `seed`.
  static Rng for_sample(std::uint64_t seed, std::uint64_t index);

  double uniform(double lo, double hi);
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Haar-uniform rotation: Gaussian matrix, Gram-Schmidt, sign fix.
Mat3 random_rotation(Rng& rng);

/// R1 diag(exp(u)) R2 with u in [-max_log_stretch, max_log_stretch],
/// rejected until det lies in [det_min, det_max].
Mat3 random_defgrad(Rng& rng, double max_log_stretch = 0.8, double det_min = 0.2, double det_max = 5.0);

/// R1 diag(exp(u)) R2 with sum(u) = 0, so det = 1 and S is not a rotation
/// unless u = 0.
Mat3 random_unimodular(Rng& rng, double max_log_stretch = 0.5);

Mat3 random_matrix(Rng& rng, double lo = -1.0, double hi = 1.0);
Vec3 random_vector(Rng& rng, double lo = -1.0, double hi = 1.0);
Sym3 random_sym(Rng& rng, double lo = -1.0, double hi = 1.0);
/// Standard normal entries with the mean of the diagonal removed.
Mat3 random_traceless(Rng& rng);
/// Random SPD matrix R diag(l) R^T with eigenvalues in [lo, hi] separated by
/// at least min_gap.
Sym3 random_spd_generic(Rng& rng, double lo = 0.2, double hi = 5.0, double min_gap = 0.05);
/// Random skew matrix with entries in [-1, 1].
Mat3 random_skew(Rng& rng);

}  // namespace thermovisc

#pragma once

/// Deterministic samplers for the randomized verification harness. All
/// randomness flows through `Rng` (mt19937_64 with explicit mappings), so a
/// fixed seed reproduces the same draws on any platform with the same build.

#include <cstdint>
#include <random>

#include "kron/geometry.hpp"
#include "kron/mat.hpp"

namespace kron {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  /// Uniform on [lo, hi], inclusive.
  long uniform_long(long lo, long hi) {
    return lo + static_cast<long>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal (Box-Muller, spare cached).
  double normal();

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Components p/q uniform over {0, 1/q, ..., (q-1)/q} with q uniform in
/// [1, max_den]: cheap rationals inside the fundamental cube.
RatVec random_alpha(int d, long max_den, Rng& rng);

std::vector<double> random_alpha_f(int d, Rng& rng);

/// Identity basis hit with up to `ops` random elementary integer row
/// operations (add/subtract a row, swap, negate); |det| stays 1.
LatticeBasis random_recombined_basis(int d, int ops, Rng& rng);

/// Random element of SL(n, R): Gram-Schmidt rotation of a normal matrix,
/// times an upper-triangular unit-determinant matrix with bounded entries.
/// A spread of lattice shapes, no Haar claim.
MatF random_sl(int n, Rng& rng);

/// Float unimodular d x d basis from the SL sampler.
LatticeBasis random_basis_f(int d, Rng& rng);

/// Half-open planar arc of length tau in (pi, 2pi), boundary rays snapped to
/// denominator-4096 rationals (membership stays exact; the margin keeps tau
/// above pi after snapping).
DirectionSet random_wide_arc(Rng& rng);

}  // namespace kron

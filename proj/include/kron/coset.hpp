#pragma once

/// Minimum of |x + l| over lattice vectors l with x + l restricted to the
/// cone over a direction set, by radius-doubling box enumeration. Complete
/// within each ball: every coset point of length <= R is visited, so the
/// first non-empty ball already contains the global minimum.

#include <vector>

#include "kron/geometry.hpp"

namespace kron {

struct CosetMinQ {
  Rat len2;                  // |x + l|^2, exact
  std::vector<long> coeffs;  // l = coeffs * M0
};

struct CosetMinF {
  double len2 = 0.0;
  std::vector<long> coeffs;
  bool near_boundary = false;  // some candidate was within tolerance of the cone boundary
};

/// Exact minimum. Ties on length are broken toward the lexicographically
/// smallest enumeration point, which keeps witnesses deterministic across
/// the fast path and the brute-force oracle.
/// Throws if the direction set has empty interior or dimensions mismatch.
CosetMinQ coset_min(const RatVec& x, const LatticeBasis& basis, const DirectionSet& dir);

/// Float mirror; cone tests use `tol` and near-boundary candidates set the flag.
CosetMinF coset_min_f(std::span<const double> x, const LatticeBasis& basis,
                      const DirectionSet& dir, double tol = 1e-9);

}  // namespace kron

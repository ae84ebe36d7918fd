#pragma once

/// Closed-form bounds on the number of distinct directional nearest-neighbor
/// distances, plus an experimental Diophantine scan.

#include <optional>
#include <span>

#include "kron/geometry.hpp"

namespace kron {

struct KissingEntry {
  int d = 0;
  long upper = 0;
  bool exact = false;  // bound known to be attained
};

/// Best known upper bound for the kissing number in R^d, 1 <= d <= 24.
KissingEntry kissing_bound(int d);

/// Upper bound for the number of distinct nearest-neighbor distances of a
/// Kronecker sequence: 3 for d = 1, 5 for d = 2, kissing bound + 1 above.
long nearest_neighbor_bound(int d);

/// Upper bound for a half-open planar arc of length tau > pi:
///   5 at 2pi; 9 on (5pi/3, 2pi); 8 at 5pi/3; 9 on (4pi/3, 5pi/3); 8 at
///   4pi/3; 12 + 2*floor(sin(tau/2 + pi/6)/sin(tau - pi)) on (pi, 4pi/3).
/// Returns nullopt for tau <= pi (no finite bound holds there); throws for
/// tau outside (0, 2pi]. Branch edges are matched within 1e-12.
std::optional<long> arc_gap_bound(double tau);

/// Experimental scan of the badly-approximable condition
/// |n*alpha - l|_inf > c * n^{-1/d}: finds the smallest observed
/// n^{1/d} * min_l |n*alpha - l|_inf over n = 1..n_max. Can refute the
/// condition (passes = false) but never certify it.
struct DiophantineReport {
  double min_scaled = 0.0;
  long argmin_n = 0;
  bool exact_hit = false;  // some n*alpha landed exactly on the lattice
  bool passes = false;     // min_scaled > c over the scanned range
  double c = 0.0;
  long n_max = 0;
};

DiophantineReport diophantine_scan(const RatVec& alpha, const LatticeBasis& lattice,
                                   double c, long n_max);
DiophantineReport diophantine_scan(std::span<const double> alpha, const LatticeBasis& lattice,
                                   double c, long n_max);

}  // namespace kron

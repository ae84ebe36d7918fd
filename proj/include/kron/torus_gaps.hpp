#pragma once

/// Directional nearest-neighbor distances of a Kronecker sequence
/// {n*alpha mod L : n = 1..N} on the flat torus R^d / L.
///
/// The distance from the n-th point in the direction set D reduces to
///     min{ |k*alpha + l| : k*alpha + l in the cone over D,
///          -n < k < N + 1/2 - n, l in L },
/// so the per-k coset minima can be computed once and each point's value is
/// a sliding-window minimum over a contiguous k-range. `nearest_distances`
/// does exactly that (O(N) amortized after the per-k precomputation);
/// `nearest_distances_bruteforce` is the reference double loop over point
/// pairs with its own enumeration, no caching and no window.

#include <optional>
#include <string>
#include <vector>

#include "kron/coset.hpp"
#include "kron/geometry.hpp"

namespace kron {

struct KroneckerConfig {
  Mode mode = Mode::Exact;
  RatVec alpha;                  // exact mode
  std::vector<double> alpha_f;   // float mode
  LatticeBasis lattice = LatticeBasis::identity(1);
  long n_points = 1;             // N
  DirectionSet direction = DirectionSet::full_sphere(1);

  int dim() const { return lattice.dim(); }
};

struct GapWitness {
  long k = 0;
  std::vector<long> ell;  // lattice coefficients w.r.t. the config's basis

  bool operator==(const GapWitness&) const = default;
};

struct GapReportQ {
  int dim = 0;
  long n = 0;            // the N of the window
  long point_count = 0;  // min(N, period)
  std::vector<Rat> per_point_len2;  // index 0 <-> n = 1
  std::vector<Rat> distinct_len2;   // sorted ascending, exact distinct
  int g = 0;
  std::vector<GapWitness> witnesses;

  bool operator==(const GapReportQ&) const = default;
};

struct GapReportF {
  int dim = 0;
  long n = 0;
  long point_count = 0;
  std::vector<double> per_point_len2;
  std::vector<double> distinct_len2;  // tolerance-grouped representatives
  int g = 0;
  std::vector<GapWitness> witnesses;
  std::vector<std::string> warnings;  // near-tolerance value pairs, cone-boundary flags
};

/// Smallest q >= 1 with q*alpha in the lattice. Exact mode only; in this
/// artifact alpha is rational there, so the period always exists (lcm of the
/// coefficient denominators).
Int orbit_period(const RatVec& alpha, const LatticeBasis& lattice);

/// Config-level wrapper: nullopt in float mode (no period assumed).
std::optional<Int> orbit_period(const KroneckerConfig& config);

GapReportQ nearest_distances(const KroneckerConfig& config);
GapReportF nearest_distances_f(const KroneckerConfig& config);

/// Reference path: O(N^2) pair loop plus per-pair lattice-box enumeration.
/// Identical contract to nearest_distances, field by field.
GapReportQ nearest_distances_bruteforce(const KroneckerConfig& config);
GapReportF nearest_distances_bruteforce_f(const KroneckerConfig& config);

/// g = number of distinct squared distances (mode dispatching).
int distinct_distance_count(const KroneckerConfig& config);

/// Group sorted squared distances whose relative difference is < rel_tol;
/// pairs of group representatives within [rel_tol, warn_tol) produce a
/// warning string. Shared by the float report paths.
std::vector<double> group_distinct(std::vector<double> values, double rel_tol, double warn_tol,
                                   std::vector<std::string>* warnings);

}  // namespace kron

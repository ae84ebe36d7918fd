#pragma once

/// The reformulation on the space of unimodular (d+1)-lattices: a torus
/// configuration (alpha, L, N) becomes a matrix whose lattice Z^{d+1}M is
/// probed through sliding u-windows,
///     Q(M, t) = {(u, v) in Z^{d+1}M : -t < u < 1-t, v in the cone over D},
/// and the minimal |v| over Q(M, t) plays the role of a gap length.
///
/// Two builds of the configuration matrix are provided: the literal one with
/// the isotropic v-rescaling (floats; its window minima are the distances
/// scaled by N_+^{1/d}) and an exact affine variant that rescales only the
/// u-coordinate, for which the window minimum *is* the distance, bit for bit.

#include <optional>
#include <vector>

#include "kron/geometry.hpp"
#include "kron/mat.hpp"

namespace kron {

struct WindowPointQ {
  Rat u;
  RatVec v;
  std::vector<long> coeffs;  // (u, v) = coeffs * M
};

struct WindowPointF {
  double u = 0.0;
  std::vector<double> v;
  std::vector<long> coeffs;
};

/// Literal configuration matrix: block product
/// [[1,0],[0,M0]] * [[1,alpha],[0,I]] * diag(n_plus^-1, n_plus^{1/d} I).
/// det = 1. Throws if n_plus <= 0.
MatF embedding_matrix(std::span<const double> alpha, const LatticeBasis& m0, double n_plus);

/// Exact affine variant: [[1,alpha],[0,M0]] * diag(n_plus^-1, 1, ..., 1).
/// det = n_plus^-1 (the v-block is untouched), entries exactly rational.
MatQ embedding_matrix_affine(const RatVec& alpha, const LatticeBasis& m0, const Rat& n_plus);

/// All (u,v) = c*M with u_lo < u < u_hi, |v| <= radius, v in the cone.
/// Complete within the stated ball. Matrices whose u-column is supported on
/// the first row (every constructor output) are enumerated layer by layer;
/// anything else goes through a full inverse-norm coefficient box.
std::vector<WindowPointF> window_points(const MatF& m, double u_lo, double u_hi,
                                        const DirectionSet& dir, double radius);
std::vector<WindowPointQ> window_points(const MatQ& m, const Rat& u_lo, const Rat& u_hi,
                                        const DirectionSet& dir, const Rat& radius2);

struct WindowMinF {
  double len = 0.0;  // |v|
  WindowPointF point;
};
struct WindowMinQ {
  Rat len2;  // |v|^2
  WindowPointQ point;
};

/// min |v| over Q(M, t), by radius doubling. Requires 0 < t < 1 and a
/// direction set with non-empty interior.
WindowMinF window_min(const MatF& m, double t, const DirectionSet& dir);
WindowMinQ window_min(const MatQ& m, const Rat& t, const DirectionSet& dir);

/// Number of distinct window minima at the sample times t = n/(N + 1/2),
/// n = 1..N (float values grouped at relative 1e-9).
int count_values_at_times(const MatF& m, const DirectionSet& dir, long n_points);
int count_values_at_times(const MatQ& m, const DirectionSet& dir, long n_points);

/// Number of distinct window minima over all t in (0, 1). The minimum is
/// piecewise constant in t; its breakpoints are the u-coordinates (and their
/// 1-u mirrors) of cone points with |u| < 1 below an envelope kappa, so one
/// evaluation per breakpoint interval counts everything. kappa starts at
/// twice the sampled maximum and is validated by recomputing at 2*kappa; if
/// the value set is still changing after three doublings, envelope_ok is
/// false and the count is not trustworthy.
struct ValueCountF {
  int count = 0;
  std::vector<double> values;  // distinct |v|, ascending
  double kappa = 0.0;
  bool envelope_ok = false;
};
struct ValueCountQ {
  int count = 0;
  std::vector<Rat> values_len2;  // distinct |v|^2, ascending
  double kappa = 0.0;
  bool envelope_ok = false;
};
ValueCountF count_values(const MatF& m, const DirectionSet& dir);
ValueCountQ count_values(const MatQ& m, const DirectionSet& dir);

/// Lattice with a long staircase of distinct window minima: row 0 is
/// (eps, -eps*e0), row 1 is (0, e1), the remaining frame vectors are blown
/// up by eps^{-1/(d-1)}. det = 1. The frame e1..ed must be orthonormal with
/// det +1, |e0| = 1 and e0.e1 > 0 (all within 1e-9), 0 < eps < 1.
MatF staircase_matrix(std::span<const double> e0,
                      const std::vector<std::vector<double>>& frame, double epsilon);

/// diag(theta^d, theta^-1 I_d), det = 1. Throws if theta <= 0.
MatF dilation_matrix(double theta, int d);

/// diag(e^-s, e^{s/d} I_d), det = 1.
MatF geodesic_flow_matrix(double s, int d);

/// Largest integer strictly less than x (floor, except integers step down).
long strict_floor(double x);

}  // namespace kron

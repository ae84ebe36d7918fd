#pragma once

/// Direction sets on the unit sphere and unimodular lattice bases.
///
/// All membership decisions for rational data are exact sign tests; the
/// float mirror classifies with a tolerance and reports when a vector lands
/// within that tolerance of a boundary instead of silently picking a side.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kron/mat.hpp"
#include "kron/rat.hpp"

namespace kron {

enum class Mode { Exact, Float };

inline std::string mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

/// Which of the two arcs between the boundary rays is meant: sweeping
/// counterclockwise or clockwise from the left ray to the right ray.
/// If the rays are positively parallel the arc degenerates to the full
/// circle (either orientation).
enum class ArcOrientation { Ccw, Cw };

/// Float cone test outcome. `near_boundary` means some deciding quantity was
/// within tolerance of zero; the classification in `inside` still uses the
/// raw comparisons, but callers must surface the flag.
struct ConeTest {
  bool inside = false;
  bool near_boundary = false;
};

/// Membership predicate on S^{d-1}: the full sphere, a half-open planar arc
/// (d = 2, left ray included / right ray excluded), or a closed spherical cap.
class DirectionSet {
 public:
  enum class Kind { FullSphere, Arc, Cap };

  static DirectionSet full_sphere(int dim);
  static DirectionSet arc(RatVec left_ray, RatVec right_ray, ArcOrientation orientation);
  static DirectionSet cap(RatVec axis, Rat cos_half_angle);
  /// d = 1 half line {+1} or {-1}; the one-dimensional analogue of a gap
  /// "to the right".
  static DirectionSet half_line(int sign);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  ArcOrientation orientation() const { return orientation_; }
  const RatVec& left_ray() const { return left_; }
  const RatVec& right_ray() const { return right_; }
  const RatVec& axis() const { return axis_; }
  const Rat& cos_half_angle() const { return cos_; }
  /// Boundary rays positively parallel: the arc degenerates to the full circle.
  bool arc_is_full() const { return full_arc_; }

  /// True iff the cone over the set has non-empty interior in R^d (so a
  /// full-rank lattice coset always meets it). For d = 1 the sphere is
  /// discrete and every non-empty set qualifies.
  bool has_interior() const;

  /// Exact test: v != 0 and v/|v| in the set.
  bool contains(const RatVec& v) const;

  /// Float mirror with boundary tolerance (relative to the vector norms).
  ConeTest contains(std::span<const double> v, double tol = 1e-9) const;

  /// Arc length in radians, in (0, 2pi]. Float only; never used for
  /// membership. Throws unless kind() == Arc.
  double arc_length() const;

 private:
  DirectionSet() = default;

  Kind kind_ = Kind::FullSphere;
  int dim_ = 0;
  // arc data
  RatVec left_, right_;
  ArcOrientation orientation_ = ArcOrientation::Ccw;
  bool full_arc_ = false;  // rays positively parallel
  int lr_sign_ = 0;        // sign of cross(left, right), decided exactly once
  // cap data
  RatVec axis_;
  Rat cos_;
  // float shadows of the rational data
  std::vector<double> left_f_, right_f_, axis_f_;
  double cos_f_ = 0.0;
};

/// v != 0 and v/|v| in D. Throws std::invalid_argument on dimension mismatch.
bool in_cone(const RatVec& v, const DirectionSet& d);
ConeTest in_cone(std::span<const double> v, const DirectionSet& d, double tol = 1e-9);

/// Exact comparison of the angle between two non-zero vectors against pi/3:
/// -1 below, 0 equal, +1 above.
int cmp_angle_pi_over_3(const RatVec& a, const RatVec& b);

/// Basis of a unimodular lattice {c * M0 : c in Z^d}, rows = basis vectors.
/// |det| must be exactly 1 in exact mode, within 1e-12 of 1 in float mode.
class LatticeBasis {
 public:
  static LatticeBasis identity(int dim, Mode mode = Mode::Exact);
  static LatticeBasis from_rows(std::vector<RatVec> rows);
  static LatticeBasis from_rows(std::vector<std::vector<double>> rows);

  int dim() const { return dim_; }
  Mode mode() const { return mode_; }

  const MatQ& mat() const;
  const MatQ& inv() const;
  const MatF& mat_f() const { return mat_f_; }
  const MatF& inv_f() const { return inv_f_; }

  RatVec row(int i) const;

  /// Exact-mode basis whose entries are all integers. Together with
  /// |det| = 1 this means the lattice is Z^d itself, which the enumeration
  /// exploits.
  bool integer_entries() const { return integer_entries_; }

  double max_row_norm() const { return max_row_norm_; }

 private:
  LatticeBasis() = default;
  void finish();

  int dim_ = 0;
  Mode mode_ = Mode::Exact;
  MatQ mat_q_, inv_q_;
  MatF mat_f_, inv_f_;
  bool integer_entries_ = false;
  double max_row_norm_ = 0.0;
};

}  // namespace kron

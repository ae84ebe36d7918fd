#include "kron/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kron {

namespace {

Rat cross2(const RatVec& a, const RatVec& b) { return a[0] * b[1] - a[1] * b[0]; }

double cross2(std::span<const double> a, std::span<const double> b) {
  return a[0] * b[1] - a[1] * b[0];
}

// v positively parallel to ray (same direction)?
bool parallel_pos(const RatVec& ray, const RatVec& v) {
  return sgn(cross2(ray, v)) == 0 && sgn(ray.dot(v)) > 0;
}

}  // namespace

DirectionSet DirectionSet::full_sphere(int dim) {
  if (dim < 1) throw std::invalid_argument("DirectionSet: dim must be >= 1");
  DirectionSet d;
  d.kind_ = Kind::FullSphere;
  d.dim_ = dim;
  return d;
}

DirectionSet DirectionSet::arc(RatVec left_ray, RatVec right_ray, ArcOrientation orientation) {
  if (left_ray.dim() != 2 || right_ray.dim() != 2)
    throw std::invalid_argument("DirectionSet::arc: rays must be 2-dimensional");
  if (left_ray.is_zero() || right_ray.is_zero())
    throw std::invalid_argument("DirectionSet::arc: zero boundary ray");
  DirectionSet d;
  d.kind_ = Kind::Arc;
  d.dim_ = 2;
  d.left_ = std::move(left_ray);
  d.right_ = std::move(right_ray);
  d.orientation_ = orientation;
  d.full_arc_ = parallel_pos(d.left_, d.right_);
  d.lr_sign_ = sgn(cross2(d.left_, d.right_));
  d.left_f_ = d.left_.to_doubles();
  d.right_f_ = d.right_.to_doubles();
  return d;
}

DirectionSet DirectionSet::cap(RatVec axis, Rat cos_half_angle) {
  if (axis.is_zero()) throw std::invalid_argument("DirectionSet::cap: zero axis");
  if (cos_half_angle < -1 || cos_half_angle > 1)
    throw std::invalid_argument("DirectionSet::cap: cos outside [-1, 1]");
  DirectionSet d;
  d.kind_ = Kind::Cap;
  d.dim_ = axis.dim();
  d.axis_ = std::move(axis);
  d.cos_ = std::move(cos_half_angle);
  d.axis_f_ = d.axis_.to_doubles();
  d.cos_f_ = d.cos_.get_d();
  return d;
}

DirectionSet DirectionSet::half_line(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("half_line: sign must be +-1");
  return cap(RatVec({Rat(sign)}), Rat(0));
}

bool DirectionSet::has_interior() const {
  if (dim_ == 1) return true;  // S^0 is discrete
  switch (kind_) {
    case Kind::FullSphere:
    case Kind::Arc:
      return true;
    case Kind::Cap:
      return cos_ < 1;
  }
  return false;
}

bool DirectionSet::contains(const RatVec& v) const {
  if (v.dim() != dim_) throw std::invalid_argument("DirectionSet: dimension mismatch");
  if (v.is_zero()) return false;
  switch (kind_) {
    case Kind::FullSphere:
      return true;
    case Kind::Arc: {
      if (full_arc_) return true;
      if (parallel_pos(left_, v)) return true;   // left boundary included
      if (parallel_pos(right_, v)) return false; // right boundary excluded
      // Mirror the plane for the clockwise sweep so one set of sign tests
      // covers both orientations.
      const int s = orientation_ == ArcOrientation::Ccw ? 1 : -1;
      const int lr = s * lr_sign_;
      const int lv = s * sgn(cross2(left_, v));
      const int vr = s * sgn(cross2(v, right_));
      if (lr > 0) return lv > 0 && vr > 0;   // sector shorter than pi
      if (lr == 0) return lv > 0;            // rays anti-parallel: half plane
      return lv > 0 || vr > 0;               // sector longer than pi
    }
    case Kind::Cap: {
      // v.axis >= |v||axis| cos, decided on squares to stay rational
      const Rat s = v.dot(axis_);
      const Rat rhs2 = v.squared_norm() * axis_.squared_norm() * cos_ * cos_;
      if (sgn(cos_) >= 0) return sgn(s) >= 0 && s * s >= rhs2;
      return sgn(s) >= 0 || s * s <= rhs2;
    }
  }
  return false;
}

ConeTest DirectionSet::contains(std::span<const double> v, double tol) const {
  if (static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("DirectionSet: dimension mismatch");
  ConeTest out;
  const double vn = std::sqrt(fnorm2(v));
  if (vn == 0.0) return out;
  switch (kind_) {
    case Kind::FullSphere:
      out.inside = true;
      return out;
    case Kind::Arc: {
      if (full_arc_) {
        out.inside = true;
        return out;
      }
      const double ln = std::sqrt(fnorm2(left_f_));
      const double rn = std::sqrt(fnorm2(right_f_));
      const int s = orientation_ == ArcOrientation::Ccw ? 1 : -1;
      // the ray-to-ray relation was decided exactly at construction
      const int lr = s * lr_sign_;
      const double lv = s * cross2(left_f_, v) / (ln * vn);
      const double vr = s * cross2(v, right_f_) / (vn * rn);
      if (std::abs(lv) < tol || std::abs(vr) < tol) out.near_boundary = true;
      if (lr > 0)
        out.inside = lv > 0 && vr > 0;
      else if (lr == 0)
        out.inside = lv > 0;
      else
        out.inside = lv > 0 || vr > 0;
      return out;
    }
    case Kind::Cap: {
      const double an = std::sqrt(fnorm2(axis_f_));
      const double sn = fdot(v, axis_f_) / (vn * an);
      if (std::abs(sn - cos_f_) < tol) out.near_boundary = true;
      out.inside = sn >= cos_f_;
      return out;
    }
  }
  return out;
}

double DirectionSet::arc_length() const {
  if (kind_ != Kind::Arc) throw std::logic_error("arc_length: not an arc");
  if (full_arc_) return 2.0 * std::numbers::pi;
  const double c = cross2(left_f_, right_f_);
  const double d = fdot(left_f_, right_f_);
  double ccw = std::atan2(c, d);  // in (-pi, pi]
  if (ccw <= 0) ccw += 2.0 * std::numbers::pi;
  return orientation_ == ArcOrientation::Ccw ? ccw : 2.0 * std::numbers::pi - ccw;
}

bool in_cone(const RatVec& v, const DirectionSet& d) { return d.contains(v); }

ConeTest in_cone(std::span<const double> v, const DirectionSet& d, double tol) {
  return d.contains(v, tol);
}

int cmp_angle_pi_over_3(const RatVec& a, const RatVec& b) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("cmp_angle_pi_over_3: zero vector");
  const Rat d = a.dot(b);
  if (sgn(d) <= 0) return 1;  // angle >= pi/2
  const Rat lhs = 4 * d * d;
  const Rat rhs = a.squared_norm() * b.squared_norm();
  return lhs > rhs ? -1 : (lhs == rhs ? 0 : 1);
}

LatticeBasis LatticeBasis::identity(int dim, Mode mode) {
  LatticeBasis b;
  b.dim_ = dim;
  b.mode_ = mode;
  if (mode == Mode::Exact) {
    b.mat_q_ = MatQ::identity(dim);
    b.inv_q_ = MatQ::identity(dim);
  }
  b.mat_f_ = MatF::identity(dim);
  b.inv_f_ = MatF::identity(dim);
  b.integer_entries_ = mode == Mode::Exact;
  b.max_row_norm_ = 1.0;
  return b;
}

LatticeBasis LatticeBasis::from_rows(std::vector<RatVec> rows) {
  const int d = static_cast<int>(rows.size());
  if (d < 1) throw std::invalid_argument("LatticeBasis: empty basis");
  LatticeBasis b;
  b.dim_ = d;
  b.mode_ = Mode::Exact;
  b.mat_q_ = MatQ(d);
  for (int i = 0; i < d; ++i) {
    if (rows[i].dim() != d) throw std::invalid_argument("LatticeBasis: ragged rows");
    for (int j = 0; j < d; ++j) b.mat_q_.at(i, j) = rows[i][j];
  }
  const Rat dq = det(b.mat_q_);
  if (dq != 1 && dq != -1)
    throw std::invalid_argument("LatticeBasis: |det| != 1 (got " + rat_to_string(dq) + ")");
  b.inv_q_ = inverse(b.mat_q_);
  b.mat_f_ = to_float(b.mat_q_);
  b.inv_f_ = to_float(b.inv_q_);
  b.integer_entries_ = true;
  for (const Rat& x : b.mat_q_.a)
    if (x.get_den() != 1) {
      b.integer_entries_ = false;
      break;
    }
  b.finish();
  return b;
}

LatticeBasis LatticeBasis::from_rows(std::vector<std::vector<double>> rows) {
  const int d = static_cast<int>(rows.size());
  if (d < 1) throw std::invalid_argument("LatticeBasis: empty basis");
  LatticeBasis b;
  b.dim_ = d;
  b.mode_ = Mode::Float;
  b.mat_f_ = MatF(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw std::invalid_argument("LatticeBasis: ragged rows");
    for (int j = 0; j < d; ++j) b.mat_f_.at(i, j) = rows[i][j];
  }
  const double dv = det(b.mat_f_);
  if (std::abs(std::abs(dv) - 1.0) > 1e-12)
    throw std::invalid_argument("LatticeBasis: |det| not within 1e-12 of 1");
  b.inv_f_ = inverse(b.mat_f_);
  b.integer_entries_ = false;
  b.finish();
  return b;
}

void LatticeBasis::finish() {
  max_row_norm_ = 0.0;
  for (int i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += mat_f_.at(i, j) * mat_f_.at(i, j);
    max_row_norm_ = std::max(max_row_norm_, std::sqrt(acc));
  }
}

const MatQ& LatticeBasis::mat() const {
  if (mode_ != Mode::Exact) throw std::logic_error("LatticeBasis: no exact data in float mode");
  return mat_q_;
}

const MatQ& LatticeBasis::inv() const {
  if (mode_ != Mode::Exact) throw std::logic_error("LatticeBasis: no exact data in float mode");
  return inv_q_;
}

RatVec LatticeBasis::row(int i) const {
  std::vector<Rat> r(dim_);
  for (int j = 0; j < dim_; ++j) r[j] = mat().at(i, j);
  return RatVec(std::move(r));
}

}  // namespace kron

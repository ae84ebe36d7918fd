#include "kron/coset.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace kron {

namespace {

// Scale a rational vector to an integer one pointing the same way.
std::vector<Int> scale_to_int(const RatVec& v) {
  Int den(1);
  for (int i = 0; i < v.dim(); ++i) {
    Int d = v[i].get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Int> out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
  return out;
}

int sgn_z(const Int& z) { return mpz_sgn(z.get_mpz_t()); }

// Cone membership on integer vectors (valid because membership is invariant
// under positive scaling). All state derived once from the DirectionSet.
struct ConeZ {
  DirectionSet::Kind kind = DirectionSet::Kind::FullSphere;
  bool full_arc = false;
  int orient = 1;
  int lr = 0;  // sign of cross(left, right), unoriented
  std::vector<Int> left, right;
  std::vector<Int> axis;
  Int axis2, cn2, cd2;
  int cos_sign = 0;

  static ConeZ build(const DirectionSet& d) {
    ConeZ c;
    c.kind = d.kind();
    switch (d.kind()) {
      case DirectionSet::Kind::FullSphere:
        break;
      case DirectionSet::Kind::Arc: {
        c.full_arc = d.arc_is_full();
        c.orient = d.orientation() == ArcOrientation::Ccw ? 1 : -1;
        c.left = scale_to_int(d.left_ray());
        c.right = scale_to_int(d.right_ray());
        c.lr = sgn_z(c.left[0] * c.right[1] - c.left[1] * c.right[0]);
        break;
      }
      case DirectionSet::Kind::Cap: {
        c.axis = scale_to_int(d.axis());
        c.axis2 = 0;
        for (const Int& a : c.axis) c.axis2 += a * a;
        const Rat& cs = d.cos_half_angle();
        c.cn2 = Int(cs.get_num()) * Int(cs.get_num());
        c.cd2 = Int(cs.get_den()) * Int(cs.get_den());
        c.cos_sign = sgn(cs);
        break;
      }
    }
    return c;
  }

  bool contains(const std::vector<Int>& p, const Int& p2) const {
    if (sgn_z(p2) == 0) return false;
    switch (kind) {
      case DirectionSet::Kind::FullSphere:
        return true;
      case DirectionSet::Kind::Arc: {
        if (full_arc) return true;
        const int cl = sgn_z(left[0] * p[1] - left[1] * p[0]);
        if (cl == 0 && sgn_z(left[0] * p[0] + left[1] * p[1]) > 0) return true;
        const int cr = sgn_z(p[0] * right[1] - p[1] * right[0]);
        if (cr == 0 && sgn_z(right[0] * p[0] + right[1] * p[1]) > 0) return false;
        const int lv = orient * cl;
        const int vr = orient * cr;
        const int lro = orient * lr;
        if (lro > 0) return lv > 0 && vr > 0;
        if (lro == 0) return lv > 0;
        return lv > 0 || vr > 0;
      }
      case DirectionSet::Kind::Cap: {
        Int s(0);
        for (std::size_t i = 0; i < axis.size(); ++i) s += axis[i] * p[i];
        if (cos_sign >= 0) return sgn_z(s) >= 0 && s * s * cd2 >= p2 * axis2 * cn2;
        return sgn_z(s) >= 0 || s * s * cd2 <= p2 * axis2 * cn2;
      }
    }
    return false;
  }
};

struct ScanHit {
  Int s2;                    // scaled squared length: |p*den|^2
  std::vector<long> coords;  // enumeration coordinates (lex-smallest among ties)
};

// Enumerate p = (x_num + c*w)/den over the coordinate box, keep the shortest
// cone point with |p|^2 <= r2. Depth-first in lexicographic order, partial
// sums updated one level at a time.
class BoxScan {
 public:
  BoxScan(const std::vector<Int>& x_num, const std::vector<std::vector<Int>>& w,
          const Int& den, const Rat& r2, const ConeZ& cone,
          const std::vector<long>& lo, const std::vector<long>& hi)
      : dim_(static_cast<int>(x_num.size())),
        w_(w),
        cone_(cone),
        lo_(lo),
        hi_(hi),
        partial_(x_num.size() + 1, x_num),
        coords_(x_num.size(), 0) {
    // |p|^2 <= r2  <=>  |x_num + c*w|^2 * r2.den <= r2.num * den^2
    bound_ = Int(r2.get_num()) * den * den;
    r2_den_ = r2.get_den();
  }

  std::optional<ScanHit> run() {
    descend(0);
    return best_;
  }

 private:
  void descend(int level) {
    if (level == dim_) {
      leaf();
      return;
    }
    const std::vector<Int>& base = partial_[level];
    std::vector<Int>& cur = partial_[level + 1];
    for (long c = lo_[level]; c <= hi_[level]; ++c) {
      for (int j = 0; j < dim_; ++j) cur[j] = base[j] + c * w_[level][j];
      coords_[level] = c;
      descend(level + 1);
    }
  }

  void leaf() {
    const std::vector<Int>& p = partial_[dim_];
    Int s2(0);
    for (const Int& v : p) s2 += v * v;
    if (s2 * r2_den_ > bound_) return;
    if (best_ && s2 >= best_->s2) return;  // lex order: strict improvement only
    if (!cone_.contains(p, s2)) return;
    best_ = ScanHit{s2, coords_};
  }

  int dim_;
  const std::vector<std::vector<Int>>& w_;
  const ConeZ& cone_;
  const std::vector<long>& lo_;
  const std::vector<long>& hi_;
  std::vector<std::vector<Int>> partial_;
  std::vector<long> coords_;
  Int bound_, r2_den_;
  std::optional<ScanHit> best_;
};

std::vector<long> to_long_coeffs(const RatVec& v) {
  std::vector<long> out(v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    if (v[i].get_den() != 1) throw std::logic_error("coset_min: non-integer witness coeffs");
    if (!v[i].get_num().fits_slong_p()) throw std::overflow_error("coset_min: witness overflow");
    out[i] = v[i].get_num().get_si();
  }
  return out;
}

}  // namespace

CosetMinQ coset_min(const RatVec& x, const LatticeBasis& basis, const DirectionSet& dir) {
  const int d = basis.dim();
  if (x.dim() != d || dir.dim() != d)
    throw std::invalid_argument("coset_min: dimension mismatch");
  if (basis.mode() != Mode::Exact) throw std::invalid_argument("coset_min: exact basis required");
  if (!dir.has_interior())
    throw std::invalid_argument("coset_min: direction set has empty interior");

  const bool std_lattice = basis.integer_entries();  // Z^d M0 = Z^d: enumerate standard coords

  // one common denominator for x and (in the generic path) the basis rows
  Int den(1);
  for (int i = 0; i < d; ++i) {
    Int dn = x[i].get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dn.get_mpz_t());
  }
  if (!std_lattice)
    for (const Rat& e : basis.mat().a) {
      Int dn = e.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dn.get_mpz_t());
    }

  std::vector<Int> x_num(d);
  for (int i = 0; i < d; ++i) x_num[i] = x[i].get_num() * (den / x[i].get_den());

  std::vector<std::vector<Int>> w(d, std::vector<Int>(d, Int(0)));
  if (std_lattice) {
    for (int i = 0; i < d; ++i) w[i][i] = den;
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Rat& e = basis.mat().at(i, j);
        w[i][j] = e.get_num() * (den / e.get_den());
      }
  }

  const ConeZ cone = ConeZ::build(dir);

  // Double the ball until it meets the cone. On the standard lattice the
  // covering radius sqrt(d)/2 already guarantees a full-sphere hit in the
  // first ball; skew bases start from d * max row norm.
  const double start =
      std_lattice ? std::max(1.0, 0.5 * std::sqrt(static_cast<double>(d)))
                  : d * basis.max_row_norm();
  Rat r2(start * start);

  // generic-path data
  RatVec center_q;
  std::vector<double> colnorm;
  if (!std_lattice) {
    center_q = row_times(-x, basis.inv());
    colnorm = column_norms(basis.inv());
  }

  for (int iter = 0; iter < 64; ++iter) {
    const double rf = std::sqrt(r2.get_d()) * (1.0 + 1e-9) + 1e-12;
    std::vector<long> lo(d), hi(d);
    if (std_lattice) {
      for (int i = 0; i < d; ++i) {
        const double xi = x[i].get_d();
        lo[i] = static_cast<long>(std::floor(-xi - rf)) - 1;
        hi[i] = static_cast<long>(std::ceil(-xi + rf)) + 1;
      }
    } else {
      for (int i = 0; i < d; ++i) {
        const long c = round_long(center_q[i]);
        const long w_i = static_cast<long>(std::ceil(rf * colnorm[i])) + 1;
        lo[i] = c - w_i;
        hi[i] = c + w_i;
      }
    }

    BoxScan scan(x_num, w, den, r2, cone, lo, hi);
    if (auto hit = scan.run()) {
      CosetMinQ out;
      out.len2 = Rat(hit->s2, den * den);
      out.len2.canonicalize();
      if (std_lattice) {
        // enumerated coords are the lattice point itself; map back through M0^-1
        std::vector<Rat> m(d);
        for (int i = 0; i < d; ++i) m[i] = hit->coords[i];
        out.coeffs = to_long_coeffs(row_times(RatVec(std::move(m)), basis.inv()));
      } else {
        out.coeffs = hit->coords;
      }
      return out;
    }
    r2 *= 4;
  }
  throw std::runtime_error("coset_min: no cone point found (empty-interior direction set?)");
}

CosetMinF coset_min_f(std::span<const double> x, const LatticeBasis& basis,
                      const DirectionSet& dir, double tol) {
  const int d = basis.dim();
  if (static_cast<int>(x.size()) != d || dir.dim() != d)
    throw std::invalid_argument("coset_min_f: dimension mismatch");
  if (!dir.has_interior())
    throw std::invalid_argument("coset_min_f: direction set has empty interior");

  const MatF& m0 = basis.mat_f();
  const MatF& inv = basis.inv_f();
  const std::vector<double> colnorm = column_norms(inv);

  std::vector<double> center(d, 0.0);  // -x * M0^-1
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) center[j] -= x[i] * inv.at(i, j);

  double r = d * basis.max_row_norm();
  std::vector<double> p(d);
  std::vector<long> c(d);
  for (int iter = 0; iter < 200; ++iter) {
    const double r2 = r * r * (1.0 + 1e-12);
    std::vector<long> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      const long ctr = static_cast<long>(std::llround(center[i]));
      const long w_i = static_cast<long>(std::ceil(r * colnorm[i] * (1.0 + 1e-9))) + 1;
      lo[i] = ctr - w_i;
      hi[i] = ctr + w_i;
    }
    CosetMinF best;
    bool found = false;
    bool flag = false;
    // plain odometer; boxes are small in every supported dimension
    c = lo;
    while (true) {
      for (int j = 0; j < d; ++j) {
        p[j] = x[j];
        for (int i = 0; i < d; ++i) p[j] += static_cast<double>(c[i]) * m0.at(i, j);
      }
      const double n2 = fnorm2(p);
      if (n2 > 0.0 && n2 <= r2 && (!found || n2 < best.len2)) {
        const ConeTest ct = dir.contains(p, tol);
        if (ct.near_boundary) flag = true;
        if (ct.inside) {
          best.len2 = n2;
          best.coeffs = c;
          found = true;
        }
      }
      int k = d - 1;
      while (k >= 0 && c[k] == hi[k]) {
        c[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++c[k];
    }
    if (found) {
      best.near_boundary = flag;
      return best;
    }
    r *= 2;
  }
  throw std::runtime_error("coset_min_f: no cone point found");
}

}  // namespace kron

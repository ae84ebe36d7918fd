#include "kron/lattice_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace kron {

namespace {

constexpr int kMaxDoublings = 64;

bool layered_shape(const MatF& m) {
  if (m.at(0, 0) == 0.0) return false;
  for (int i = 1; i < m.n; ++i)
    if (m.at(i, 0) != 0.0) return false;
  return true;
}

bool layered_shape(const MatQ& m) {
  if (sgn(m.at(0, 0)) == 0) return false;
  for (int i = 1; i < m.n; ++i)
    if (sgn(m.at(i, 0)) != 0) return false;
  return true;
}

MatF v_block(const MatF& m) {
  MatF b(m.n - 1);
  for (int i = 1; i < m.n; ++i)
    for (int j = 1; j < m.n; ++j) b.at(i - 1, j - 1) = m.at(i, j);
  return b;
}

MatQ v_block(const MatQ& m) {
  MatQ b(m.n - 1);
  for (int i = 1; i < m.n; ++i)
    for (int j = 1; j < m.n; ++j) b.at(i - 1, j - 1) = m.at(i, j);
  return b;
}

}  // namespace

MatF embedding_matrix(std::span<const double> alpha, const LatticeBasis& m0, double n_plus) {
  if (n_plus <= 0) throw std::invalid_argument("embedding_matrix: n_plus must be positive");
  const int d = m0.dim();
  if (static_cast<int>(alpha.size()) != d)
    throw std::invalid_argument("embedding_matrix: alpha dimension mismatch");
  MatF lat = MatF::identity(d + 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lat.at(i + 1, j + 1) = m0.mat_f().at(i, j);
  MatF shear = MatF::identity(d + 1);
  for (int j = 0; j < d; ++j) shear.at(0, j + 1) = alpha[j];
  MatF scale = MatF::identity(d + 1);
  scale.at(0, 0) = 1.0 / n_plus;
  const double s = std::pow(n_plus, 1.0 / d);
  for (int i = 1; i <= d; ++i) scale.at(i, i) = s;
  return mul(mul(lat, shear), scale);
}

MatQ embedding_matrix_affine(const RatVec& alpha, const LatticeBasis& m0, const Rat& n_plus) {
  if (sgn(n_plus) <= 0) throw std::invalid_argument("embedding_matrix_affine: n_plus must be positive");
  const int d = m0.dim();
  if (alpha.dim() != d)
    throw std::invalid_argument("embedding_matrix_affine: alpha dimension mismatch");
  MatQ shear(d + 1);
  shear.at(0, 0) = 1;
  for (int j = 0; j < d; ++j) shear.at(0, j + 1) = alpha[j];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) shear.at(i + 1, j + 1) = m0.mat().at(i, j);
  MatQ scale = MatQ::identity(d + 1);
  scale.at(0, 0) = Rat(1) / n_plus;
  return mul(shear, scale);
}

std::vector<WindowPointF> window_points(const MatF& m, double u_lo, double u_hi,
                                        const DirectionSet& dir, double radius) {
  if (radius <= 0) throw std::invalid_argument("window_points: radius must be positive");
  const int n = m.n;
  const int d = n - 1;
  if (dir.dim() != d) throw std::invalid_argument("window_points: direction dimension mismatch");
  std::vector<WindowPointF> out;
  std::vector<double> v(d);

  // Open-interval semantics, robust against rounding: a point computed onto
  // either boundary (within 1e-12) is outside, matching the exact path's
  // strict comparisons. Boundary-sitting points are common here: the sample
  // times t = n/N_+ of a configuration matrix land exactly on the
  // u-coordinate of the lattice point with time coefficient -n.
  const double u_eps = 1e-12 * std::max({1.0, std::abs(u_lo), std::abs(u_hi)});

  const auto consider = [&](double u, const std::vector<long>& c) {
    if (!(u_lo + u_eps < u && u < u_hi - u_eps)) return;
    for (int j = 0; j < d; ++j) {
      v[j] = 0.0;
      for (int i = 0; i < n; ++i) v[j] += static_cast<double>(c[i]) * m.at(i, j + 1);
    }
    const double n2 = fnorm2(v);
    if (n2 == 0.0 || n2 > radius * radius * (1 + 1e-12)) return;
    if (!dir.contains(v).inside) return;
    out.push_back({u, v, c});
  };

  if (layered_shape(m)) {
    const double m00 = m.at(0, 0);
    const MatF binv = inverse(v_block(m));
    const std::vector<double> cn = column_norms(binv);
    // u = c0 * m00 only
    const double b1 = u_lo / m00, b2 = u_hi / m00;
    const long c0_lo = static_cast<long>(std::floor(std::min(b1, b2))) - 1;
    const long c0_hi = static_cast<long>(std::ceil(std::max(b1, b2))) + 1;
    std::vector<long> c(n, 0);
    std::vector<double> base(d), ctr(d);
    for (long c0 = c0_lo; c0 <= c0_hi; ++c0) {
      const double u = c0 * m00;
      if (!(u_lo < u && u < u_hi)) continue;
      for (int j = 0; j < d; ++j) base[j] = c0 * m.at(0, j + 1);
      for (int j = 0; j < d; ++j) {
        ctr[j] = 0.0;
        for (int i = 0; i < d; ++i) ctr[j] -= base[i] * binv.at(i, j);
      }
      std::vector<long> lo(d), hi(d);
      for (int j = 0; j < d; ++j) {
        const long w = static_cast<long>(std::ceil(radius * cn[j] * (1 + 1e-9))) + 1;
        const long cc = static_cast<long>(std::llround(ctr[j]));
        lo[j] = cc - w;
        hi[j] = cc + w;
      }
      c[0] = c0;
      std::vector<long> cv = lo;
      while (true) {
        for (int j = 0; j < d; ++j) c[j + 1] = cv[j];
        consider(u, c);
        int k = d - 1;
        while (k >= 0 && cv[k] == hi[k]) {
          cv[k] = lo[k];
          --k;
        }
        if (k < 0) break;
        ++cv[k];
      }
    }
  } else {
    const MatF inv = inverse(m);
    const std::vector<double> cn = column_norms(inv);
    const double u_abs = std::max(std::abs(u_lo), std::abs(u_hi));
    const double r_tot = std::sqrt(u_abs * u_abs + radius * radius);
    std::vector<long> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      const long w = static_cast<long>(std::ceil(r_tot * cn[i] * (1 + 1e-9))) + 1;
      lo[i] = -w;
      hi[i] = w;
    }
    std::vector<long> c = lo;
    while (true) {
      double u = 0.0;
      for (int i = 0; i < n; ++i) u += static_cast<double>(c[i]) * m.at(i, 0);
      consider(u, c);
      int k = n - 1;
      while (k >= 0 && c[k] == hi[k]) {
        c[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++c[k];
    }
  }
  return out;
}

std::vector<WindowPointQ> window_points(const MatQ& m, const Rat& u_lo, const Rat& u_hi,
                                        const DirectionSet& dir, const Rat& radius2) {
  if (sgn(radius2) <= 0) throw std::invalid_argument("window_points: radius must be positive");
  const int n = m.n;
  const int d = n - 1;
  if (dir.dim() != d) throw std::invalid_argument("window_points: direction dimension mismatch");
  std::vector<WindowPointQ> out;

  const auto consider = [&](const Rat& u, const std::vector<long>& c) {
    if (!(u_lo < u && u < u_hi)) return;
    std::vector<Rat> v(d, Rat(0));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n; ++i)
        if (c[i] != 0) v[j] += c[i] * m.at(i, j + 1);
    RatVec vv{std::move(v)};
    const Rat n2 = vv.squared_norm();
    if (sgn(n2) == 0 || n2 > radius2) return;
    if (!dir.contains(vv)) return;
    out.push_back({u, std::move(vv), c});
  };

  const double rf = std::sqrt(radius2.get_d()) * (1 + 1e-9) + 1e-12;
  if (layered_shape(m)) {
    const Rat& m00 = m.at(0, 0);
    const MatQ binv = inverse(v_block(m));
    const std::vector<double> cn = column_norms(binv);
    const double b1 = Rat(u_lo / m00).get_d();
    const double b2 = Rat(u_hi / m00).get_d();
    const long c0_lo = static_cast<long>(std::floor(std::min(b1, b2))) - 1;
    const long c0_hi = static_cast<long>(std::ceil(std::max(b1, b2))) + 1;
    std::vector<long> c(n, 0);
    for (long c0 = c0_lo; c0 <= c0_hi; ++c0) {
      const Rat u = c0 * m00;
      if (!(u_lo < u && u < u_hi)) continue;
      std::vector<Rat> base(d, Rat(0));
      for (int j = 0; j < d; ++j) base[j] = c0 * m.at(0, j + 1);
      const RatVec ctr = row_times(-RatVec(std::vector<Rat>(base.begin(), base.end())), binv);
      std::vector<long> lo(d), hi(d);
      for (int j = 0; j < d; ++j) {
        const long w = static_cast<long>(std::ceil(rf * cn[j])) + 1;
        const long cc = round_long(ctr[j]);
        lo[j] = cc - w;
        hi[j] = cc + w;
      }
      c[0] = c0;
      std::vector<long> cv = lo;
      while (true) {
        for (int j = 0; j < d; ++j) c[j + 1] = cv[j];
        consider(u, c);
        int k = d - 1;
        while (k >= 0 && cv[k] == hi[k]) {
          cv[k] = lo[k];
          --k;
        }
        if (k < 0) break;
        ++cv[k];
      }
    }
  } else {
    const MatQ inv = inverse(m);
    const std::vector<double> cn = column_norms(inv);
    const double u_abs = std::max(std::abs(u_lo.get_d()), std::abs(u_hi.get_d()));
    const double r_tot = std::sqrt(u_abs * u_abs + rf * rf) * (1 + 1e-9);
    std::vector<long> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      const long w = static_cast<long>(std::ceil(r_tot * cn[i])) + 1;
      lo[i] = -w;
      hi[i] = w;
    }
    std::vector<long> c = lo;
    while (true) {
      Rat u(0);
      for (int i = 0; i < n; ++i)
        if (c[i] != 0) u += c[i] * m.at(i, 0);
      consider(u, c);
      int k = n - 1;
      while (k >= 0 && c[k] == hi[k]) {
        c[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++c[k];
    }
  }
  return out;
}

WindowMinF window_min(const MatF& m, double t, const DirectionSet& dir) {
  if (!(0 < t && t < 1)) throw std::invalid_argument("window_min: t must be in (0,1)");
  if (!dir.has_interior()) throw std::invalid_argument("window_min: empty-interior direction");
  double radius = 0.5;
  for (int iter = 0; iter < kMaxDoublings; ++iter) {
    const auto pts = window_points(m, -t, 1 - t, dir, radius);
    if (!pts.empty()) {
      const WindowPointF* best = &pts.front();
      double best2 = fnorm2(best->v);
      for (const auto& p : pts) {
        const double n2 = fnorm2(p.v);
        if (n2 < best2) {
          best2 = n2;
          best = &p;
        }
      }
      return {std::sqrt(best2), *best};
    }
    radius *= 2;
  }
  throw std::runtime_error("window_min: no cone point found");
}

WindowMinQ window_min(const MatQ& m, const Rat& t, const DirectionSet& dir) {
  if (!(sgn(t) > 0 && t < 1)) throw std::invalid_argument("window_min: t must be in (0,1)");
  if (!dir.has_interior()) throw std::invalid_argument("window_min: empty-interior direction");
  Rat radius2 = make_rat(1, 4);
  for (int iter = 0; iter < kMaxDoublings; ++iter) {
    const auto pts = window_points(m, -t, Rat(1 - t), dir, radius2);
    if (!pts.empty()) {
      const WindowPointQ* best = &pts.front();
      Rat best2 = best->v.squared_norm();
      for (const auto& p : pts) {
        const Rat n2 = p.v.squared_norm();
        if (n2 < best2) {
          best2 = n2;
          best = &p;
        }
      }
      return {best2, *best};
    }
    radius2 *= 4;
  }
  throw std::runtime_error("window_min: no cone point found");
}

int count_values_at_times(const MatF& m, const DirectionSet& dir, long n_points) {
  if (n_points < 1) throw std::invalid_argument("count_values_at_times: N < 1");
  const double np = n_points + 0.5;
  std::vector<double> vals;
  vals.reserve(n_points);
  for (long i = 1; i <= n_points; ++i) vals.push_back(window_min(m, i / np, dir).len);
  std::sort(vals.begin(), vals.end());
  int count = 0;
  double last = -1.0;
  for (const double v : vals) {
    if (count == 0 || (v - last) / std::max(last, 1e-300) >= 1e-9) {
      ++count;
      last = v;
    }
  }
  return count;
}

int count_values_at_times(const MatQ& m, const DirectionSet& dir, long n_points) {
  if (n_points < 1) throw std::invalid_argument("count_values_at_times: N < 1");
  const Rat np = Rat(2 * n_points + 1) / 2;
  std::set<Rat> vals;
  for (long i = 1; i <= n_points; ++i) vals.insert(window_min(m, Rat(i) / np, dir).len2);
  return static_cast<int>(vals.size());
}

namespace {

// breakpoints of t -> min over the window: -u and 1-u of in-cone points
// below the envelope, clipped to (0,1)
template <typename Scalar, typename Pt>
std::vector<Scalar> breakpoint_times(const std::vector<Pt>& pts) {
  std::vector<Scalar> bps;
  for (const auto& p : pts) {
    if (Scalar(0) < -p.u && -p.u < Scalar(1)) bps.push_back(-p.u);
    const Scalar one_minus = Scalar(1) - p.u;
    if (Scalar(0) < one_minus && one_minus < Scalar(1)) bps.push_back(one_minus);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

std::vector<double> value_set_f(const MatF& m, const DirectionSet& dir, double kappa) {
  const auto pts = window_points(m, -1.0, 1.0, dir, kappa);
  std::vector<double> bps = breakpoint_times<double>(pts);
  // merge float breakpoints that coincide up to rounding
  std::vector<double> grid;
  for (const double b : bps)
    if (grid.empty() || b - grid.back() > 1e-12) grid.push_back(b);
  grid.push_back(1.0);
  std::vector<double> vals;
  double prev = 0.0;
  for (const double b : grid) {
    if (b - prev > 1e-12) vals.push_back(window_min(m, (prev + b) / 2, dir).len);
    prev = b;
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> reps;
  for (const double v : vals)
    if (reps.empty() || (v - reps.back()) / std::max(reps.back(), 1e-300) >= 1e-9)
      reps.push_back(v);
  return reps;
}

std::vector<Rat> value_set_q(const MatQ& m, const DirectionSet& dir, const Rat& kappa2) {
  const auto pts = window_points(m, Rat(-1), Rat(1), dir, kappa2);
  std::vector<Rat> grid = breakpoint_times<Rat>(pts);
  grid.push_back(Rat(1));
  std::set<Rat> vals;
  Rat prev(0);
  for (const Rat& b : grid) {
    if (b > prev) vals.insert(window_min(m, (prev + b) / 2, dir).len2);
    prev = b;
  }
  return {vals.begin(), vals.end()};
}

}  // namespace

ValueCountF count_values(const MatF& m, const DirectionSet& dir) {
  double kappa = 0.0;
  for (int j = 0; j < 32; ++j)
    kappa = std::max(kappa, window_min(m, (2 * j + 1) / 64.0, dir).len);
  kappa *= 2;

  ValueCountF out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::vector<double> v1 = value_set_f(m, dir, kappa);
    const std::vector<double> v2 = value_set_f(m, dir, 2 * kappa);
    bool same = v1.size() == v2.size();
    for (std::size_t i = 0; same && i < v1.size(); ++i)
      same = std::abs(v1[i] - v2[i]) <= 1e-9 * std::max(1.0, v1[i]);
    out.values = v2;
    out.count = static_cast<int>(v2.size());
    out.kappa = kappa;
    if (same) {
      out.envelope_ok = true;
      return out;
    }
    kappa *= 2;
  }
  out.envelope_ok = false;  // unstable after 3 doublings
  return out;
}

ValueCountQ count_values(const MatQ& m, const DirectionSet& dir) {
  double kappa = 0.0;
  for (int j = 0; j < 32; ++j) {
    const Rat t = make_rat(2 * j + 1, 64);
    kappa = std::max(kappa, std::sqrt(window_min(m, t, dir).len2.get_d()));
  }
  kappa *= 2;

  ValueCountQ out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const Rat k2 = Rat(kappa) * Rat(kappa);
    const std::vector<Rat> v1 = value_set_q(m, dir, k2);
    const std::vector<Rat> v2 = value_set_q(m, dir, 4 * k2);
    out.values_len2 = v2;
    out.count = static_cast<int>(v2.size());
    out.kappa = kappa;
    if (v1 == v2) {
      out.envelope_ok = true;
      return out;
    }
    kappa *= 2;
  }
  out.envelope_ok = false;
  return out;
}

MatF staircase_matrix(std::span<const double> e0,
                      const std::vector<std::vector<double>>& frame, double epsilon) {
  const int d = static_cast<int>(frame.size());
  if (d < 2) throw std::invalid_argument("staircase_matrix: need d >= 2");
  if (static_cast<int>(e0.size()) != d)
    throw std::invalid_argument("staircase_matrix: e0 dimension mismatch");
  if (!(epsilon > 0 && epsilon < 1))
    throw std::invalid_argument("staircase_matrix: epsilon must be in (0,1)");
  constexpr double tol = 1e-9;
  if (std::abs(fnorm2(e0) - 1.0) > tol)
    throw std::invalid_argument("staircase_matrix: e0 not a unit vector");
  MatF fr(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(frame[i].size()) != d)
      throw std::invalid_argument("staircase_matrix: ragged frame");
    for (int j = 0; j < d; ++j) fr.at(i, j) = frame[i][j];
    if (std::abs(fnorm2(frame[i]) - 1.0) > tol)
      throw std::invalid_argument("staircase_matrix: frame vector not unit");
    for (int k = 0; k < i; ++k)
      if (std::abs(fdot(frame[i], frame[k])) > tol)
        throw std::invalid_argument("staircase_matrix: frame not orthogonal");
  }
  if (std::abs(det(fr) - 1.0) > tol)
    throw std::invalid_argument("staircase_matrix: frame determinant must be +1");
  if (fdot(e0, frame[0]) <= 0)
    throw std::invalid_argument("staircase_matrix: e0 . e1 must be positive");

  MatF m(d + 1);
  m.at(0, 0) = epsilon;
  for (int j = 0; j < d; ++j) m.at(0, j + 1) = -epsilon * e0[j];
  for (int j = 0; j < d; ++j) m.at(1, j + 1) = frame[0][j];
  const double blow = std::pow(epsilon, -1.0 / (d - 1));
  for (int i = 2; i <= d; ++i)
    for (int j = 0; j < d; ++j) m.at(i, j + 1) = blow * frame[i - 1][j];
  return m;
}

MatF dilation_matrix(double theta, int d) {
  if (theta <= 0) throw std::invalid_argument("dilation_matrix: theta must be positive");
  MatF m(d + 1);
  m.at(0, 0) = std::pow(theta, d);
  for (int i = 1; i <= d; ++i) m.at(i, i) = 1.0 / theta;
  return m;
}

MatF geodesic_flow_matrix(double s, int d) {
  MatF m(d + 1);
  m.at(0, 0) = std::exp(-s);
  for (int i = 1; i <= d; ++i) m.at(i, i) = std::exp(s / d);
  return m;
}

long strict_floor(double x) {
  const double f = std::floor(x);
  return static_cast<long>(f) - (f == x ? 1 : 0);
}

}  // namespace kron

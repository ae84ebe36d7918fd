#include "kron/sampling.hpp"

#include <cmath>
#include <numbers>

namespace kron {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 1e-300) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

RatVec random_alpha(int d, long max_den, Rng& rng) {
  std::vector<Rat> c(d);
  for (int i = 0; i < d; ++i) {
    const long q = rng.uniform_long(1, max_den);
    const long p = rng.uniform_long(0, q - 1);
    c[i] = make_rat(p, q);
  }
  return RatVec(std::move(c));
}

std::vector<double> random_alpha_f(int d, Rng& rng) {
  std::vector<double> c(d);
  for (int i = 0; i < d; ++i) c[i] = rng.uniform01();
  return c;
}

LatticeBasis random_recombined_basis(int d, int ops, Rng& rng) {
  MatQ m = MatQ::identity(d);
  const int count = static_cast<int>(rng.uniform_long(0, ops));
  for (int t = 0; t < count && d > 1; ++t) {
    const int kind = static_cast<int>(rng.uniform_long(0, 3));
    int i = static_cast<int>(rng.uniform_long(0, d - 1));
    int j = static_cast<int>(rng.uniform_long(0, d - 2));
    if (j >= i) ++j;  // j != i
    switch (kind) {
      case 0:
        for (int col = 0; col < d; ++col) m.at(i, col) += m.at(j, col);
        break;
      case 1:
        for (int col = 0; col < d; ++col) m.at(i, col) -= m.at(j, col);
        break;
      case 2:
        for (int col = 0; col < d; ++col) std::swap(m.at(i, col), m.at(j, col));
        break;
      default:
        for (int col = 0; col < d; ++col) m.at(i, col) = -m.at(i, col);
        break;
    }
  }
  std::vector<RatVec> rows;
  rows.reserve(d);
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> r(d);
    for (int j = 0; j < d; ++j) r[j] = m.at(i, j);
    rows.push_back(RatVec(std::move(r)));
  }
  return LatticeBasis::from_rows(std::move(rows));
}

MatF random_sl(int n, Rng& rng) {
  // rotation part
  MatF q(n);
  while (true) {
    MatF g(n);
    for (int i = 0; i < n * n; ++i) g.a[i] = rng.normal();
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int k = 0; k < i; ++k) {
        double dp = 0.0;
        for (int j = 0; j < n; ++j) dp += g.at(i, j) * q.at(k, j);
        for (int j = 0; j < n; ++j) g.at(i, j) -= dp * q.at(k, j);
      }
      double nrm = 0.0;
      for (int j = 0; j < n; ++j) nrm += g.at(i, j) * g.at(i, j);
      nrm = std::sqrt(nrm);
      if (nrm < 1e-9) {
        ok = false;
        break;
      }
      for (int j = 0; j < n; ++j) q.at(i, j) = g.at(i, j) / nrm;
    }
    if (ok) break;
  }
  if (det(q) < 0)
    for (int j = 0; j < n; ++j) q.at(n - 1, j) = -q.at(n - 1, j);

  // unit-determinant triangular part with bounded entries
  MatF t(n);
  double prod = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    const double s = rng.uniform(2.0 / 3.0, 1.5);
    t.at(i, i) = s;
    prod *= s;
  }
  t.at(n - 1, n - 1) = 1.0 / prod;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.at(i, j) = rng.uniform(-2.0, 2.0);
  return mul(q, t);
}

LatticeBasis random_basis_f(int d, Rng& rng) {
  const MatF m = random_sl(d, rng);
  std::vector<std::vector<double>> rows(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rows[i][j] = m.at(i, j);
  return LatticeBasis::from_rows(std::move(rows));
}

DirectionSet random_wide_arc(Rng& rng) {
  const double pi = std::numbers::pi;
  const double theta_l = rng.uniform(0.0, 2 * pi);
  const double tau = rng.uniform(pi + 0.05, 2 * pi - 0.05);
  const double theta_r = theta_l + tau;
  constexpr long den = 4096;
  const auto snap = [&](double ang) {
    const long x = std::lround(den * std::cos(ang));
    const long y = std::lround(den * std::sin(ang));
    return RatVec({make_rat(x, den), make_rat(y, den)});
  };
  return DirectionSet::arc(snap(theta_l), snap(theta_r), ArcOrientation::Ccw);
}

}  // namespace kron

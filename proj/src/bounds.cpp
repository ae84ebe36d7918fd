#include "kron/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kron {

namespace {

// Best known upper bounds for kissing numbers, d = 1..24; `true` marks
// entries known to be attained.
constexpr struct {
  long upper;
  bool exact;
} kKissing[24] = {
    {2, true},       {6, true},       {12, true},     {24, true},     {45, false},
    {78, false},     {134, false},    {240, true},    {364, false},   {554, false},
    {870, false},    {1357, false},   {2069, false},  {3183, false},  {4866, false},
    {7355, false},   {11072, false},  {16572, false}, {24812, false}, {36764, false},
    {54584, false},  {82340, false},  {124416, false},{196560, true},
};

}  // namespace

KissingEntry kissing_bound(int d) {
  if (d < 1 || d > 24) throw std::invalid_argument("kissing_bound: d must be in 1..24");
  return {d, kKissing[d - 1].upper, kKissing[d - 1].exact};
}

long nearest_neighbor_bound(int d) {
  if (d == 1) return 3;
  if (d == 2) return 5;
  return kissing_bound(d).upper + 1;
}

std::optional<long> arc_gap_bound(double tau) {
  constexpr double tol = 1e-12;
  const double pi = std::numbers::pi;
  if (!(tau > 0) || tau > 2 * pi + tol)
    throw std::invalid_argument("arc_gap_bound: tau must be in (0, 2pi]");
  if (tau <= pi + tol) return std::nullopt;  // no finite bound in this regime
  if (std::abs(tau - 2 * pi) <= tol) return 5;
  if (tau > 5 * pi / 3 + tol) return 9;
  if (std::abs(tau - 5 * pi / 3) <= tol) return 8;
  if (tau > 4 * pi / 3 + tol) return 9;
  if (std::abs(tau - 4 * pi / 3) <= tol) return 8;
  const double ratio = std::sin(tau / 2 + pi / 6) / std::sin(tau - pi);
  return 12 + 2 * static_cast<long>(std::floor(ratio));
}

namespace {

// min over the lattice of |x - l|_inf, exact; fast per-coordinate rounding
// when the lattice is Z^d, small Babai-centered box otherwise.
Rat sup_dist_to_lattice(const RatVec& x, const LatticeBasis& lattice) {
  const int d = lattice.dim();
  if (lattice.integer_entries()) {
    Rat sup(0);
    for (int i = 0; i < d; ++i) {
      const Rat r = x[i] - round_long(x[i]);
      const Rat a = sgn(r) < 0 ? Rat(-r) : r;
      if (a > sup) sup = a;
    }
    return sup;
  }
  const RatVec coeff = row_times(x, lattice.inv());
  std::vector<long> center(d);
  for (int i = 0; i < d; ++i) center[i] = round_long(coeff[i]);
  std::vector<Rat> res(d);
  for (int j = 0; j < d; ++j) {
    res[j] = x[j];
    for (int i = 0; i < d; ++i) res[j] -= center[i] * lattice.mat().at(i, j);
  }
  Rat best(0);
  for (int j = 0; j < d; ++j) {
    const Rat a = sgn(res[j]) < 0 ? Rat(-res[j]) : res[j];
    if (a > best) best = a;
  }
  // any better lattice point lies within euclidean sqrt(d)*best of x
  const std::vector<double> cn = column_norms(lattice.inv());
  const double rad = std::sqrt(static_cast<double>(d)) * best.get_d() * (1 + 1e-9);
  std::vector<long> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    const long w = static_cast<long>(std::ceil(rad * cn[i])) + 1;
    lo[i] = center[i] - w;
    hi[i] = center[i] + w;
  }
  std::vector<long> c = lo;
  while (true) {
    Rat sup(0);
    for (int j = 0; j < d; ++j) {
      Rat r = x[j];
      for (int i = 0; i < d; ++i)
        if (c[i] != 0) r -= c[i] * lattice.mat().at(i, j);
      if (sgn(r) < 0) r = -r;
      if (r > sup) sup = r;
    }
    if (sup < best) best = sup;
    int k = d - 1;
    while (k >= 0 && c[k] == hi[k]) {
      c[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++c[k];
  }
  return best;
}

double sup_dist_to_lattice_f(std::span<const double> x, const LatticeBasis& lattice) {
  const int d = lattice.dim();
  const MatF& m0 = lattice.mat_f();
  const MatF& inv = lattice.inv_f();
  std::vector<double> coeff(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) coeff[j] += x[i] * inv.at(i, j);
  std::vector<long> center(d);
  for (int i = 0; i < d; ++i) center[i] = static_cast<long>(std::llround(coeff[i]));
  double best = std::numeric_limits<double>::infinity();
  const std::vector<double> cn = column_norms(inv);
  // one conservative pass: the Babai sup distance bounds the search ball
  double babai = 0.0;
  for (int j = 0; j < d; ++j) {
    double r = x[j];
    for (int i = 0; i < d; ++i) r -= static_cast<double>(center[i]) * m0.at(i, j);
    babai = std::max(babai, std::abs(r));
  }
  const double rad = std::sqrt(static_cast<double>(d)) * babai * (1 + 1e-9);
  std::vector<long> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    const long w = static_cast<long>(std::ceil(rad * cn[i])) + 1;
    lo[i] = center[i] - w;
    hi[i] = center[i] + w;
  }
  std::vector<long> c = lo;
  while (true) {
    double sup = 0.0;
    for (int j = 0; j < d; ++j) {
      double r = x[j];
      for (int i = 0; i < d; ++i) r -= static_cast<double>(c[i]) * m0.at(i, j);
      sup = std::max(sup, std::abs(r));
    }
    best = std::min(best, sup);
    int k = d - 1;
    while (k >= 0 && c[k] == hi[k]) {
      c[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++c[k];
  }
  return best;
}

}  // namespace

DiophantineReport diophantine_scan(const RatVec& alpha, const LatticeBasis& lattice,
                                   double c, long n_max) {
  if (c <= 0 || n_max < 1) throw std::invalid_argument("diophantine_scan: need c > 0, n_max >= 1");
  const int d = lattice.dim();
  DiophantineReport rep;
  rep.c = c;
  rep.n_max = n_max;
  rep.min_scaled = std::numeric_limits<double>::infinity();
  for (long n = 1; n <= n_max; ++n) {
    const Rat sup = sup_dist_to_lattice(alpha.scaled(Rat(n)), lattice);
    if (sgn(sup) == 0) {
      rep.min_scaled = 0.0;
      rep.argmin_n = n;
      rep.exact_hit = true;
      rep.passes = false;
      return rep;
    }
    const double scaled = std::pow(static_cast<double>(n), 1.0 / d) * sup.get_d();
    if (scaled < rep.min_scaled) {
      rep.min_scaled = scaled;
      rep.argmin_n = n;
    }
  }
  rep.passes = rep.min_scaled > c;
  return rep;
}

DiophantineReport diophantine_scan(std::span<const double> alpha, const LatticeBasis& lattice,
                                   double c, long n_max) {
  if (c <= 0 || n_max < 1) throw std::invalid_argument("diophantine_scan: need c > 0, n_max >= 1");
  const int d = lattice.dim();
  DiophantineReport rep;
  rep.c = c;
  rep.n_max = n_max;
  rep.min_scaled = std::numeric_limits<double>::infinity();
  std::vector<double> x(d);
  for (long n = 1; n <= n_max; ++n) {
    for (int i = 0; i < d; ++i) x[i] = n * alpha[i];
    const double sup = sup_dist_to_lattice_f(x, lattice);
    const double scaled = std::pow(static_cast<double>(n), 1.0 / d) * sup;
    if (scaled < rep.min_scaled) {
      rep.min_scaled = scaled;
      rep.argmin_n = n;
    }
  }
  rep.passes = rep.min_scaled > c;
  return rep;
}

}  // namespace kron

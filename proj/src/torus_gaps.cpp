#include "kron/torus_gaps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kron {

namespace {

void validate(const KroneckerConfig& config) {
  const int d = config.dim();
  if (config.n_points < 1) throw std::invalid_argument("nearest_distances: N < 1");
  if (config.direction.dim() != d)
    throw std::invalid_argument("nearest_distances: direction dimension mismatch");
  if (!config.direction.has_interior())
    throw std::invalid_argument("nearest_distances: direction set has empty interior");
  if (config.mode == Mode::Exact && config.alpha.dim() != d)
    throw std::invalid_argument("nearest_distances: alpha dimension mismatch");
  if (config.mode == Mode::Float && static_cast<int>(config.alpha_f.size()) != d)
    throw std::invalid_argument("nearest_distances: alpha dimension mismatch");
}

long point_count_of(const KroneckerConfig& config) {
  if (config.mode == Mode::Float) return config.n_points;
  const Int q = orbit_period(config.alpha, config.lattice);
  if (q < config.n_points) return q.get_si();
  return config.n_points;
}

// --- independent per-pair enumeration for the brute-force oracle ---
// Same contract as coset_min but written as the plain double-loop companion:
// one box per pair, no shared cache, rational arithmetic straight off.

struct PairMinQ {
  Rat len2;
  std::vector<long> coeffs;
  bool found = false;
};

void pair_scan(const RatVec& x, const LatticeBasis& basis, const DirectionSet& dir,
               const Rat& r2, PairMinQ& best) {
  const int d = basis.dim();
  const bool std_lattice = basis.integer_entries();
  const double rf = std::sqrt(r2.get_d()) * (1.0 + 1e-9) + 1e-12;

  std::vector<long> lo(d), hi(d);
  RatVec center;
  if (std_lattice) {
    for (int i = 0; i < d; ++i) {
      const double xi = x[i].get_d();
      lo[i] = static_cast<long>(std::floor(-xi - rf)) - 1;
      hi[i] = static_cast<long>(std::ceil(-xi + rf)) + 1;
    }
  } else {
    center = row_times(-x, basis.inv());
    const std::vector<double> cn = column_norms(basis.inv());
    for (int i = 0; i < d; ++i) {
      const long c = round_long(center[i]);
      const long w = static_cast<long>(std::ceil(rf * cn[i])) + 1;
      lo[i] = c - w;
      hi[i] = c + w;
    }
  }

  std::vector<long> c = lo;
  std::vector<Rat> p(d);
  while (true) {
    // std_lattice: c is the lattice point itself; otherwise c holds basis
    // coefficients and the point is x + c*M0
    for (int j = 0; j < d; ++j) {
      p[j] = x[j];
      if (std_lattice) {
        p[j] += c[j];
      } else {
        for (int i = 0; i < d; ++i)
          if (c[i] != 0) p[j] += c[i] * basis.mat().at(i, j);
      }
    }
    RatVec pv{std::vector<Rat>(p.begin(), p.end())};
    const Rat n2 = pv.squared_norm();
    if (sgn(n2) > 0 && n2 <= r2 && (!best.found || n2 < best.len2) && dir.contains(pv)) {
      best.len2 = n2;
      if (std_lattice) {
        std::vector<Rat> m(d);
        for (int i = 0; i < d; ++i) m[i] = c[i];
        const RatVec cc = row_times(RatVec(std::move(m)), basis.inv());
        best.coeffs.resize(d);
        for (int i = 0; i < d; ++i) best.coeffs[i] = cc[i].get_num().get_si();
      } else {
        best.coeffs = c;
      }
      best.found = true;
    }
    int k = d - 1;
    while (k >= 0 && c[k] == hi[k]) {
      c[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    ++c[k];
  }
}

PairMinQ pair_min_q(const RatVec& x, const LatticeBasis& basis, const DirectionSet& dir) {
  const int d = basis.dim();
  const double start =
      basis.integer_entries() ? std::max(1.0, 0.5 * std::sqrt(static_cast<double>(d)))
                              : d * basis.max_row_norm();
  Rat r2(start * start);
  for (int iter = 0; iter < 64; ++iter) {
    PairMinQ best;
    pair_scan(x, basis, dir, r2, best);
    if (best.found) return best;
    r2 *= 4;
  }
  throw std::runtime_error("pair_min_q: no cone point found");
}

}  // namespace

Int orbit_period(const RatVec& alpha, const LatticeBasis& lattice) {
  if (lattice.mode() != Mode::Exact)
    throw std::invalid_argument("orbit_period: exact mode required");
  const RatVec coeff = row_times(alpha, lattice.inv());  // alpha = coeff * M0
  Int q(1);
  for (int i = 0; i < coeff.dim(); ++i) {
    Int den = coeff[i].get_den();
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
  }
  return q;
}

std::optional<Int> orbit_period(const KroneckerConfig& config) {
  if (config.mode == Mode::Float) return std::nullopt;
  return orbit_period(config.alpha, config.lattice);
}

GapReportQ nearest_distances(const KroneckerConfig& config) {
  validate(config);
  if (config.mode != Mode::Exact)
    throw std::invalid_argument("nearest_distances: exact mode required (use _f)");
  const long n_win = config.n_points;
  const long points = point_count_of(config);

  // per-k minima, k in [-points+1, n_win-1]; they depend only on k
  const long offset = points - 1;
  std::vector<CosetMinQ> mk(n_win + points - 1);
  for (long k = -points + 1; k <= n_win - 1; ++k)
    mk[k + offset] = coset_min(config.alpha.scaled(Rat(k)), config.lattice, config.direction);

  GapReportQ rep;
  rep.dim = config.dim();
  rep.n = n_win;
  rep.point_count = points;
  rep.per_point_len2.reserve(points);
  rep.witnesses.reserve(points);

  // monotone deque over k descending; window for point n is [-n+1, n_win-n].
  // Equal values pop so the smaller k (pushed later) wins ties.
  std::deque<long> dq;
  const auto val = [&](long k) -> const Rat& { return mk[k + offset].len2; };
  long next_k = n_win - 1;
  for (long n = 1; n <= points; ++n) {
    const long lo = -n + 1;
    const long hi = n_win - n;
    while (next_k >= lo) {
      while (!dq.empty() && val(dq.back()) >= val(next_k)) dq.pop_back();
      dq.push_back(next_k);
      --next_k;
    }
    while (dq.front() > hi) dq.pop_front();
    const long k_star = dq.front();
    rep.per_point_len2.push_back(val(k_star));
    rep.witnesses.push_back({k_star, mk[k_star + offset].coeffs});
  }

  std::set<Rat> dist(rep.per_point_len2.begin(), rep.per_point_len2.end());
  rep.distinct_len2.assign(dist.begin(), dist.end());
  rep.g = static_cast<int>(rep.distinct_len2.size());
  return rep;
}

GapReportF nearest_distances_f(const KroneckerConfig& config) {
  validate(config);
  if (config.mode != Mode::Float)
    throw std::invalid_argument("nearest_distances_f: float mode required");
  const long n_win = config.n_points;
  const long points = n_win;  // no period detection on floats
  const int d = config.dim();

  const long offset = points - 1;
  std::vector<CosetMinF> mk(n_win + points - 1);
  long flagged = 0;
  std::vector<double> x(d);
  for (long k = -points + 1; k <= n_win - 1; ++k) {
    for (int i = 0; i < d; ++i) x[i] = k * config.alpha_f[i];
    mk[k + offset] = coset_min_f(x, config.lattice, config.direction);
    if (mk[k + offset].near_boundary) ++flagged;
  }

  GapReportF rep;
  rep.dim = d;
  rep.n = n_win;
  rep.point_count = points;
  if (flagged > 0) {
    std::ostringstream os;
    os << "cone-boundary within tolerance for " << flagged << " of " << mk.size()
       << " per-k minimizations; distinct counts may be unreliable";
    rep.warnings.push_back(os.str());
  }

  std::deque<long> dq;
  const auto val = [&](long k) { return mk[k + offset].len2; };
  long next_k = n_win - 1;
  for (long n = 1; n <= points; ++n) {
    const long lo = -n + 1;
    const long hi = n_win - n;
    while (next_k >= lo) {
      while (!dq.empty() && val(dq.back()) >= val(next_k)) dq.pop_back();
      dq.push_back(next_k);
      --next_k;
    }
    while (dq.front() > hi) dq.pop_front();
    const long k_star = dq.front();
    rep.per_point_len2.push_back(val(k_star));
    rep.witnesses.push_back({k_star, mk[k_star + offset].coeffs});
  }

  rep.distinct_len2 = group_distinct(rep.per_point_len2, 1e-9, 1e-6, &rep.warnings);
  rep.g = static_cast<int>(rep.distinct_len2.size());
  return rep;
}

GapReportQ nearest_distances_bruteforce(const KroneckerConfig& config) {
  validate(config);
  if (config.mode != Mode::Exact)
    throw std::invalid_argument("nearest_distances_bruteforce: exact mode required");
  const long n_win = config.n_points;
  const long points = point_count_of(config);

  GapReportQ rep;
  rep.dim = config.dim();
  rep.n = n_win;
  rep.point_count = points;

  for (long n = 1; n <= points; ++n) {
    PairMinQ best;
    long best_k = 0;
    for (long m = 1; m <= n_win; ++m) {
      const long k = m - n;
      PairMinQ cand = pair_min_q(config.alpha.scaled(Rat(k)), config.lattice, config.direction);
      if (!best.found || cand.len2 < best.len2) {
        best = cand;
        best_k = k;
      }
    }
    rep.per_point_len2.push_back(best.len2);
    rep.witnesses.push_back({best_k, best.coeffs});
  }

  std::set<Rat> dist(rep.per_point_len2.begin(), rep.per_point_len2.end());
  rep.distinct_len2.assign(dist.begin(), dist.end());
  rep.g = static_cast<int>(rep.distinct_len2.size());
  return rep;
}

GapReportF nearest_distances_bruteforce_f(const KroneckerConfig& config) {
  validate(config);
  if (config.mode != Mode::Float)
    throw std::invalid_argument("nearest_distances_bruteforce_f: float mode required");
  const long n_win = config.n_points;
  const int d = config.dim();

  GapReportF rep;
  rep.dim = d;
  rep.n = n_win;
  rep.point_count = n_win;
  long flagged = 0;

  std::vector<double> x(d);
  for (long n = 1; n <= n_win; ++n) {
    bool found = false;
    CosetMinF best;
    long best_k = 0;
    for (long m = 1; m <= n_win; ++m) {
      const long k = m - n;
      for (int i = 0; i < d; ++i) x[i] = k * config.alpha_f[i];
      CosetMinF cand = coset_min_f(x, config.lattice, config.direction);
      if (cand.near_boundary) ++flagged;
      if (!found || cand.len2 < best.len2) {
        best = cand;
        best_k = k;
        found = true;
      }
    }
    rep.per_point_len2.push_back(best.len2);
    rep.witnesses.push_back({best_k, best.coeffs});
  }
  if (flagged > 0)
    rep.warnings.push_back("cone-boundary within tolerance in brute-force pass");

  rep.distinct_len2 = group_distinct(rep.per_point_len2, 1e-9, 1e-6, &rep.warnings);
  rep.g = static_cast<int>(rep.distinct_len2.size());
  return rep;
}

int distinct_distance_count(const KroneckerConfig& config) {
  return config.mode == Mode::Exact ? nearest_distances(config).g
                                    : nearest_distances_f(config).g;
}

std::vector<double> group_distinct(std::vector<double> values, double rel_tol, double warn_tol,
                                   std::vector<std::string>* warnings) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  for (const double v : values) {
    if (reps.empty() || (v - reps.back()) / std::max(reps.back(), 1e-300) >= rel_tol)
      reps.push_back(v);
  }
  if (warnings) {
    for (std::size_t i = 1; i < reps.size(); ++i) {
      const double rel = (reps[i] - reps[i - 1]) / std::max(reps[i - 1], 1e-300);
      if (rel < warn_tol) {
        std::ostringstream os;
        os << "squared distances " << reps[i - 1] << " and " << reps[i]
           << " are separated by relative " << rel << " (inside the audit band)";
        warnings->push_back(os.str());
      }
    }
  }
  return reps;
}

}  // namespace kron

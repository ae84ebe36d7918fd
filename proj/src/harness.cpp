#include "kron/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kron/bounds.hpp"
#include "kron/sampling.hpp"

namespace kron {

namespace {

struct TrialResult {
  int g = 0;
  long n = 0;
  long bound = 0;
  double tau = 0.0;  // arcs only
  bool violation = false;
};

TrialResult run_one_trial(const TrialSpec& spec, long index) {
  Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(index)));
  KroneckerConfig config;
  config.mode = spec.mode;
  config.n_points = rng.uniform_long(1, spec.n_max);

  if (spec.mode == Mode::Exact) {
    config.alpha = random_alpha(spec.d, spec.max_den, rng);
    config.lattice = random_recombined_basis(spec.d, spec.lattice_ops, rng);
  } else {
    config.alpha_f = random_alpha_f(spec.d, rng);
    config.lattice = spec.d == 1 ? LatticeBasis::identity(1, Mode::Float)
                                 : random_basis_f(spec.d, rng);
  }

  TrialResult res;
  switch (spec.direction) {
    case DirSpec::FullSphere:
      config.direction = DirectionSet::full_sphere(spec.d);
      res.bound = nearest_neighbor_bound(spec.d);
      break;
    case DirSpec::HalfLine:
      if (spec.d != 1) throw std::invalid_argument("half-line direction needs d = 1");
      config.direction = DirectionSet::half_line(1);
      res.bound = 3;
      break;
    case DirSpec::RandomArc: {
      if (spec.d != 2) throw std::invalid_argument("random arcs need d = 2");
      config.direction = random_wide_arc(rng);
      res.tau = config.direction.arc_length();
      const auto b = arc_gap_bound(res.tau);
      if (!b) throw std::logic_error("random_wide_arc produced tau <= pi");
      res.bound = *b;
      break;
    }
  }

  res.n = config.n_points;
  res.g = distinct_distance_count(config);
  res.violation = res.g > res.bound;
  return res;
}

}  // namespace

VerifyOutcome run_verify_bounds(const TrialSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("verify-bounds: trials < 1");
  if (spec.n_max < 1) throw std::invalid_argument("verify-bounds: n_max < 1");
  if (spec.d < 1 || spec.d > 24) throw std::invalid_argument("verify-bounds: d out of range");

  std::vector<TrialResult> results(spec.trials);
  const int workers = std::max(1, spec.threads);
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mu;

  const auto worker = [&]() {
    while (true) {
      const long i = next.fetch_add(1);
      if (i >= spec.trials || failed.load()) break;
      try {
        results[i] = run_one_trial(spec, i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        error = e.what();
        failed.store(true);
        break;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("verify-bounds trial failed: " + error);

  int max_g = 0;
  std::map<int, long> histogram;
  Json violations = Json::array();
  Json arc_trials = Json::array();
  for (long i = 0; i < spec.trials; ++i) {
    const TrialResult& r = results[i];
    max_g = std::max(max_g, r.g);
    ++histogram[r.g];
    if (spec.direction == DirSpec::RandomArc) {
      Json a;
      a["trial"] = i;
      a["tau"] = r.tau;
      a["bound"] = r.bound;
      a["g"] = r.g;
      arc_trials.push_back(a);
    }
    if (r.violation) {
      Json v;
      v["trial"] = i;
      v["g"] = r.g;
      v["bound"] = r.bound;
      v["N"] = r.n;
      if (spec.direction == DirSpec::RandomArc) v["tau"] = r.tau;
      violations.push_back(v);
    }
  }

  Json hist;
  for (const auto& [g, count] : histogram) hist[std::to_string(g)] = count;

  Json j;
  j["command"] = "verify-bounds";
  j["seed"] = spec.seed;
  j["d"] = spec.d;
  j["n_max"] = spec.n_max;
  j["trials"] = spec.trials;
  j["mode"] = mode_name(spec.mode);
  j["direction"] = spec.direction == DirSpec::FullSphere ? "full"
                   : spec.direction == DirSpec::HalfLine ? "plus"
                                                         : "arc";
  j["max_g"] = max_g;
  if (spec.direction == DirSpec::FullSphere) j["bound"] = nearest_neighbor_bound(spec.d);
  j["histogram"] = hist;
  j["violations"] = violations;
  if (spec.direction == DirSpec::RandomArc) j["arc_trials"] = arc_trials;

  VerifyOutcome out;
  out.summary = std::move(j);
  out.violation = !violations.empty();
  return out;
}

namespace {

struct ReproduceCase {
  KroneckerConfig config;
  int expected_g = 0;
  std::vector<std::string> expected_len2;  // exact "p/q", empty = count only
};

ReproduceCase make_case(const std::string& id) {
  ReproduceCase c;
  if (id == "fig2-left") {
    c.config.mode = Mode::Exact;
    c.config.alpha = rat_vec_from_strings({"19/50", "33/250"});
    c.config.lattice = LatticeBasis::identity(2);
    c.config.n_points = 9;
    c.config.direction = DirectionSet::full_sphere(2);
    c.expected_g = 5;
    c.expected_len2 = {"74/15625", "3793/31250", "1901/15625", "157/1250", "1989/15625"};
  } else if (id == "fig2-right") {
    c.config.mode = Mode::Exact;
    c.config.alpha = rat_vec_from_strings({"21/200", "11/40"});
    c.config.lattice = LatticeBasis::identity(2);
    c.config.n_points = 12;
    c.config.direction = DirectionSet::full_sphere(2);
    c.expected_g = 5;
  } else if (id == "fig3") {
    c.config.mode = Mode::Exact;
    c.config.alpha = rat_vec_from_strings({"46/125", "107/500", "43/500"});
    c.config.lattice = LatticeBasis::identity(3);
    c.config.n_points = 15;
    c.config.direction = DirectionSet::full_sphere(3);
    c.expected_g = 7;
    c.expected_len2 = {"2023/31250",  "13513/125000", "16317/125000", "177/1250",
                       "19237/125000", "2866/15625",   "23577/125000"};
  } else if (id == "d1-e") {
    c.config.mode = Mode::Float;
    c.config.alpha_f = {std::exp(1.0) - 2.0};  // e mod 1
    c.config.lattice = LatticeBasis::identity(1, Mode::Float);
    c.config.n_points = 5;
    c.config.direction = DirectionSet::full_sphere(1);
    c.expected_g = 3;
  } else {
    throw std::invalid_argument("reproduce: unknown example id '" + id + "'");
  }
  return c;
}

}  // namespace

ReproduceOutcome run_reproduce(const std::string& id) {
  const ReproduceCase c = make_case(id);
  ReproduceOutcome out;
  Json j;
  j["command"] = "reproduce";
  j["id"] = id;
  j["expected_g"] = c.expected_g;

  if (c.config.mode == Mode::Exact) {
    const GapReportQ rep = nearest_distances(c.config);
    bool ok = rep.g == c.expected_g;
    if (!c.expected_len2.empty()) {
      std::vector<Rat> expect;
      for (const auto& s : c.expected_len2) expect.push_back(rat_from_string(s));
      std::sort(expect.begin(), expect.end());
      ok = ok && rep.distinct_len2 == expect;  // exact rational equality
    }
    j["expected_len2"] = c.expected_len2;
    j["report"] = report_to_json(c.config, rep);
    j["match"] = ok;
    out.ok = ok;
  } else {
    const GapReportF rep = nearest_distances_f(c.config);
    const bool ok = rep.g == c.expected_g;
    j["report"] = report_to_json(c.config, rep);
    j["match"] = ok;
    out.ok = ok;
  }
  out.report = std::move(j);
  return out;
}

std::vector<ScanRecord> run_scan(const ScanSpec& spec) {
  if (spec.n_max < 1) throw std::invalid_argument("scan: n_max < 1");
  if (spec.power < 1.0) throw std::invalid_argument("scan: power must be >= 1");

  std::vector<long> ns;
  if (spec.power == 1.0) {
    for (long n = 1; n <= spec.n_max; ++n) ns.push_back(n);
  } else {
    for (long i = 1;; ++i) {
      const long n = static_cast<long>(std::floor(std::pow(static_cast<double>(i), spec.power)));
      if (n > spec.n_max) break;
      if (n >= 1 && (ns.empty() || n > ns.back())) ns.push_back(n);
    }
  }

  const KroneckerConfig& base = spec.config;
  const int d = base.dim();
  std::optional<long> bound;
  if (base.direction.kind() == DirectionSet::Kind::Arc) {
    bound = arc_gap_bound(base.direction.arc_length());
  } else if (base.direction.kind() == DirectionSet::Kind::FullSphere) {
    bound = nearest_neighbor_bound(d);
  } else if (d == 1) {
    bound = 3;  // half line: the classical case
  }

  // per-k minima are independent of N: one shared cache for the whole scan
  const long n_top = ns.back();
  std::vector<bool> have(2 * n_top - 1, false);
  std::vector<Rat> cache_q(2 * n_top - 1);
  std::vector<double> cache_f(2 * n_top - 1);
  const long off = n_top - 1;
  std::vector<double> xf(d);
  const auto len2_at = [&](long k) {
    if (!have[k + off]) {
      if (base.mode == Mode::Exact) {
        cache_q[k + off] = coset_min(base.alpha.scaled(Rat(k)), base.lattice, base.direction).len2;
      } else {
        for (int i = 0; i < d; ++i) xf[i] = k * base.alpha_f[i];
        cache_f[k + off] = coset_min_f(xf, base.lattice, base.direction).len2;
      }
      have[k + off] = true;
    }
  };

  std::optional<Int> period;
  if (base.mode == Mode::Exact) period = orbit_period(base.alpha, base.lattice);

  std::vector<ScanRecord> records;
  int max_g = 0;
  for (const long n_win : ns) {
    long points = n_win;
    if (period && *period < n_win) points = period->get_si();
    for (long k = -points + 1; k <= n_win - 1; ++k) len2_at(k);

    int g = 0;
    if (base.mode == Mode::Exact) {
      std::set<Rat> dist;
      std::deque<long> dq;
      long next_k = n_win - 1;
      for (long n = 1; n <= points; ++n) {
        const long lo = -n + 1, hi = n_win - n;
        while (next_k >= lo) {
          while (!dq.empty() && cache_q[dq.back() + off] >= cache_q[next_k + off]) dq.pop_back();
          dq.push_back(next_k);
          --next_k;
        }
        while (dq.front() > hi) dq.pop_front();
        dist.insert(cache_q[dq.front() + off]);
      }
      g = static_cast<int>(dist.size());
    } else {
      std::vector<double> vals;
      std::deque<long> dq;
      long next_k = n_win - 1;
      for (long n = 1; n <= points; ++n) {
        const long lo = -n + 1, hi = n_win - n;
        while (next_k >= lo) {
          while (!dq.empty() && cache_f[dq.back() + off] >= cache_f[next_k + off]) dq.pop_back();
          dq.push_back(next_k);
          --next_k;
        }
        while (dq.front() > hi) dq.pop_front();
        vals.push_back(cache_f[dq.front() + off]);
      }
      g = static_cast<int>(group_distinct(std::move(vals), 1e-9, 1e-6, nullptr).size());
    }

    max_g = std::max(max_g, g);
    ScanRecord rec;
    rec.n = n_win;
    rec.g = g;
    rec.max_g = max_g;
    rec.bound = bound;
    rec.at_bound = bound.has_value() && g == *bound;
    records.push_back(rec);
  }
  return records;
}

Json scan_to_json(const ScanSpec& spec, const std::vector<ScanRecord>& records) {
  Json j;
  j["command"] = "scan";
  j["mode"] = mode_name(spec.config.mode);
  if (spec.config.mode == Mode::Exact) {
    Json a = Json::array();
    for (int i = 0; i < spec.config.alpha.dim(); ++i)
      a.push_back(rat_to_string(spec.config.alpha[i]));
    j["alpha"] = a;
  } else {
    j["alpha"] = spec.config.alpha_f;
  }
  j["lattice"] = lattice_to_json(spec.config.lattice);
  j["direction"] = direction_to_json(spec.config.direction);
  j["n_max"] = spec.n_max;
  j["power"] = spec.power;
  Json rows = Json::array();
  for (const auto& r : records) {
    Json e;
    e["N"] = r.n;
    e["g"] = r.g;
    e["max_g"] = r.max_g;
    if (r.bound)
      e["bound"] = *r.bound;
    else
      e["bound"] = nullptr;
    e["at_bound"] = r.at_bound;
    rows.push_back(e);
  }
  j["records"] = rows;
  return j;
}

std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream os;
  os << "N,g,max_g,bound,at_bound\n";
  for (const auto& r : records) {
    os << r.n << ',' << r.g << ',' << r.max_g << ',';
    if (r.bound)
      os << *r.bound;
    else
      os << "NA";
    os << ',' << (r.at_bound ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace kron

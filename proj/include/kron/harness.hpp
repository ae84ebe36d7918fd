#pragma once

/// Drivers behind the CLI: reproduction of the built-in example
/// configurations, randomized bound verification, and N-scans along
/// sub-exponential sequences. All output is canonical JSON (or CSV for
/// scans): a fixed TrialSpec, including its seed, yields byte-identical
/// output regardless of the worker-thread count, because trial i draws from
/// its own generator seeded by hash(seed, i) and results are emitted in
/// trial order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kron/serialize.hpp"

namespace kron {

enum class DirSpec { FullSphere, HalfLine, RandomArc };

struct TrialSpec {
  std::uint64_t seed = 1;
  int d = 2;
  long n_max = 300;
  long trials = 100;
  Mode mode = Mode::Exact;
  DirSpec direction = DirSpec::FullSphere;
  int threads = 1;
  long max_den = 10000;  // exact-mode alpha denominators
  int lattice_ops = 6;   // exact-mode basis recombination budget
};

struct VerifyOutcome {
  Json summary;
  bool violation = false;
};

/// Runs `spec.trials` independent trials and gates each g against the
/// applicable bound (nearest_neighbor_bound, or arc_gap_bound for random
/// arcs). Exit-status semantics live in the CLI; here a violation is a flag.
VerifyOutcome run_verify_bounds(const TrialSpec& spec);

struct ReproduceOutcome {
  Json report;
  bool ok = false;
};

/// Built-in example ids: fig2-left, fig2-right, fig3, d1-e.
ReproduceOutcome run_reproduce(const std::string& id);

struct ScanRecord {
  long n = 0;
  int g = 0;
  int max_g = 0;                // running maximum
  std::optional<long> bound;    // nullopt when no finite bound applies
  bool at_bound = false;
};

struct ScanSpec {
  KroneckerConfig config;  // n_points ignored; the scan supplies N
  long n_max = 100;
  double power = 1.0;  // N_i = floor(i^power); 1 = all integers
};

/// g along the sequence, with a shared per-k cache across all N.
/// Report-only: no gating.
std::vector<ScanRecord> run_scan(const ScanSpec& spec);

Json scan_to_json(const ScanSpec& spec, const std::vector<ScanRecord>& records);
/// Header is exactly "N,g,max_g,bound,at_bound"; unbounded regimes print NA.
std::string scan_to_csv(const std::vector<ScanRecord>& records);

}  // namespace kron

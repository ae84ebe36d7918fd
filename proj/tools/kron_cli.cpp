// Command-line front end. Subcommands: reproduce, verify-bounds, scan, gaps,
// lattice-f. Exit codes: 0 success, 1 bound violation or reproduction
// mismatch, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kron/harness.hpp"

namespace {

using namespace kron;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  throw CLI::ValidationError("--mode must be exact or float");
}

// --arc lx,ly:rx,ry:orient
DirectionSet parse_arc(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw CLI::ValidationError("--arc wants lx,ly:rx,ry:orient");
  const auto l = split(parts[0], ',');
  const auto r = split(parts[1], ',');
  if (l.size() != 2 || r.size() != 2) throw CLI::ValidationError("--arc rays must be 2d");
  ArcOrientation o;
  if (parts[2] == "ccw")
    o = ArcOrientation::Ccw;
  else if (parts[2] == "cw")
    o = ArcOrientation::Cw;
  else
    throw CLI::ValidationError("--arc orientation must be ccw or cw");
  return DirectionSet::arc(rat_vec_from_strings(l), rat_vec_from_strings(r), o);
}

// --cap a1,...,ad:cos
DirectionSet parse_cap(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw CLI::ValidationError("--cap wants a1,...,ad:cos");
  return DirectionSet::cap(rat_vec_from_strings(split(parts[0], ',')),
                           rat_from_string(parts[1]));
}

struct CommonOpts {
  int d = 2;
  std::string alpha;
  std::string lattice_file;
  std::string arc;
  std::string cap;
  std::string mode = "exact";
  std::string format = "json";
};

KroneckerConfig build_config(const CommonOpts& opt, long n_points) {
  KroneckerConfig config;
  config.mode = parse_mode(opt.mode);

  int d = opt.d;
  std::vector<std::string> alpha_parts;
  if (!opt.alpha.empty()) {
    alpha_parts = split(opt.alpha, ',');
    d = static_cast<int>(alpha_parts.size());
  }

  if (!opt.lattice_file.empty()) {
    config.lattice = parse_lattice_file(opt.lattice_file, config.mode);
    d = config.lattice.dim();
  } else {
    config.lattice = LatticeBasis::identity(d, config.mode);
  }

  if (config.mode == Mode::Exact) {
    config.alpha = opt.alpha.empty() ? RatVec::zero(d) : rat_vec_from_strings(alpha_parts);
    if (config.alpha.dim() != d) throw CLI::ValidationError("--alpha dimension mismatch");
  } else {
    if (opt.alpha.empty()) {
      config.alpha_f.assign(d, 0.0);
    } else {
      for (const auto& p : alpha_parts) config.alpha_f.push_back(rat_from_string(p).get_d());
    }
    if (static_cast<int>(config.alpha_f.size()) != d)
      throw CLI::ValidationError("--alpha dimension mismatch");
  }

  if (!opt.arc.empty() && !opt.cap.empty())
    throw CLI::ValidationError("--arc and --cap are mutually exclusive");
  if (!opt.arc.empty())
    config.direction = parse_arc(opt.arc);
  else if (!opt.cap.empty())
    config.direction = parse_cap(opt.cap);
  else
    config.direction = DirectionSet::full_sphere(d);
  if (config.direction.dim() != d) throw CLI::ValidationError("direction dimension mismatch");

  config.n_points = n_points;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional nearest-neighbor gap statistics of Kronecker sequences"};
  app.set_config("--config", "", "plain key=value config file; flags override it");
  app.require_subcommand(1);

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "run a built-in example and check it exactly");
  std::string rep_id;
  rep_cmd->add_option("id", rep_id, "one of fig2-left, fig2-right, fig3, d1-e")->required();

  // verify-bounds
  auto* ver_cmd = app.add_subcommand("verify-bounds", "randomized bound verification");
  TrialSpec spec;
  std::string ver_mode = "exact", ver_dir = "full";
  ver_cmd->add_option("--d", spec.d, "dimension");
  ver_cmd->add_option("--n-max", spec.n_max, "largest N per trial");
  ver_cmd->add_option("--trials", spec.trials, "number of trials");
  ver_cmd->add_option("--seed", spec.seed, "master seed");
  ver_cmd->add_option("--mode", ver_mode, "exact|float");
  ver_cmd->add_option("--direction", ver_dir, "full|plus|arc");
  ver_cmd->add_option("--threads", spec.threads, "worker threads");
  ver_cmd->add_option("--max-den", spec.max_den, "alpha denominator cap (exact mode)");
  ver_cmd->add_option("--lattice-ops", spec.lattice_ops, "basis recombination budget");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "g along an N-sequence (report only)");
  CommonOpts scan_opt;
  long scan_n_max = 100;
  double scan_power = 1.0;
  scan_cmd->add_option("--d", scan_opt.d, "dimension");
  scan_cmd->add_option("--alpha", scan_opt.alpha, "comma-separated p/q or decimals");
  scan_cmd->add_option("--lattice", scan_opt.lattice_file, "basis file");
  scan_cmd->add_option("--arc", scan_opt.arc, "lx,ly:rx,ry:orient");
  scan_cmd->add_option("--cap", scan_opt.cap, "a1,...,ad:cos");
  scan_cmd->add_option("--n-max", scan_n_max, "scan up to this N");
  scan_cmd->add_option("--power", scan_power, "N_i = floor(i^power), 1 = all integers");
  scan_cmd->add_option("--mode", scan_opt.mode, "exact|float");
  scan_cmd->add_option("--format", scan_opt.format, "json|csv");

  // gaps
  auto* gaps_cmd = app.add_subcommand("gaps", "one-shot distance report");
  CommonOpts gaps_opt;
  long gaps_n = 1;
  gaps_cmd->add_option("--d", gaps_opt.d, "dimension");
  gaps_cmd->add_option("--alpha", gaps_opt.alpha, "comma-separated p/q or decimals");
  gaps_cmd->add_option("--lattice", gaps_opt.lattice_file, "basis file");
  gaps_cmd->add_option("--arc", gaps_opt.arc, "lx,ly:rx,ry:orient");
  gaps_cmd->add_option("--cap", gaps_opt.cap, "a1,...,ad:cos");
  gaps_cmd->add_option("--n", gaps_n, "N")->required();
  gaps_cmd->add_option("--mode", gaps_opt.mode, "exact|float");

  // lattice-f
  auto* lf_cmd = app.add_subcommand("lattice-f", "window minimum of a (d+1)-matrix at time t");
  std::string lf_matrix, lf_arc, lf_cap, lf_mode = "float";
  double lf_t = 0.5;
  lf_cmd->add_option("--lattice", lf_matrix, "matrix file, (d+1) x (d+1)")->required();
  lf_cmd->add_option("--t", lf_t, "time in (0,1)")->required();
  lf_cmd->add_option("--arc", lf_arc, "lx,ly:rx,ry:orient");
  lf_cmd->add_option("--cap", lf_cap, "a1,...,ad:cos");
  lf_cmd->add_option("--mode", lf_mode, "exact|float");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*rep_cmd) {
      const ReproduceOutcome out = run_reproduce(rep_id);
      std::cout << out.report.dump(2) << "\n";
      return out.ok ? 0 : 1;
    }

    if (*ver_cmd) {
      spec.mode = parse_mode(ver_mode);
      if (ver_dir == "full")
        spec.direction = DirSpec::FullSphere;
      else if (ver_dir == "plus")
        spec.direction = DirSpec::HalfLine;
      else if (ver_dir == "arc")
        spec.direction = DirSpec::RandomArc;
      else
        throw CLI::ValidationError("--direction must be full, plus or arc");
      const VerifyOutcome out = run_verify_bounds(spec);
      std::cout << out.summary.dump(2) << "\n";
      return out.violation ? 1 : 0;
    }

    if (*scan_cmd) {
      ScanSpec sspec;
      sspec.config = build_config(scan_opt, 1);
      sspec.n_max = scan_n_max;
      sspec.power = scan_power;
      const auto records = run_scan(sspec);
      if (scan_opt.format == "csv")
        std::cout << scan_to_csv(records);
      else
        std::cout << scan_to_json(sspec, records).dump(2) << "\n";
      return 0;
    }

    if (*gaps_cmd) {
      const KroneckerConfig config = build_config(gaps_opt, gaps_n);
      if (config.mode == Mode::Exact)
        std::cout << report_to_json(config, nearest_distances(config)).dump(2) << "\n";
      else
        std::cout << report_to_json(config, nearest_distances_f(config)).dump(2) << "\n";
      return 0;
    }

    if (*lf_cmd) {
      if (!lf_arc.empty() && !lf_cap.empty())
        throw CLI::ValidationError("--arc and --cap are mutually exclusive");
      Json j;
      j["command"] = "lattice-f";
      j["t"] = lf_t;
      if (parse_mode(lf_mode) == Mode::Exact) {
        const MatQ m = parse_matrix_file_q(lf_matrix);
        const Rat dv = det(m);
        if (sgn(dv) <= 0 || dv > 1)
          throw CLI::ValidationError("lattice-f: determinant must lie in (0, 1]");
        const int d = m.n - 1;
        DirectionSet dir = DirectionSet::full_sphere(d);
        if (!lf_arc.empty()) dir = parse_arc(lf_arc);
        if (!lf_cap.empty()) dir = parse_cap(lf_cap);
        Rat t(lf_t);
        t.canonicalize();
        const WindowMinQ wm = window_min(m, t, dir);
        j["len2"] = rat_to_string(wm.len2);
        j["len"] = std::sqrt(wm.len2.get_d());
        j["witness_u"] = rat_to_string(wm.point.u);
        j["witness_coeffs"] = wm.point.coeffs;
      } else {
        const MatF m = parse_matrix_file_f(lf_matrix);
        // accept det 1 and the affine variants (det = 1/N_+ after the
        // u-rescaling); anything else is a malformed matrix
        const double dv = det(m);
        if (!(dv > 0.0) || dv > 1.0 + 1e-6)
          throw CLI::ValidationError("lattice-f: determinant must lie in (0, 1]");
        const int d = m.n - 1;
        DirectionSet dir = DirectionSet::full_sphere(d);
        if (!lf_arc.empty()) dir = parse_arc(lf_arc);
        if (!lf_cap.empty()) dir = parse_cap(lf_cap);
        const WindowMinF wm = window_min(m, lf_t, dir);
        j["len"] = wm.len;
        j["witness_u"] = wm.point.u;
        j["witness_v"] = wm.point.v;
        j["witness_coeffs"] = wm.point.coeffs;
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

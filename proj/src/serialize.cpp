#include "kron/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kron {

namespace {

Json rat_vec_json(const RatVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(rat_to_string(v[i]));
  return a;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> row;
    std::string tok;
    while (ls >> tok) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix file: " + path);
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw std::runtime_error("matrix file is not square: " + path);
  return rows;
}

}  // namespace

Json direction_to_json(const DirectionSet& dir) {
  Json j;
  switch (dir.kind()) {
    case DirectionSet::Kind::FullSphere:
      j["type"] = "full_sphere";
      break;
    case DirectionSet::Kind::Arc:
      j["type"] = "arc";
      j["left"] = rat_vec_json(dir.left_ray());
      j["right"] = rat_vec_json(dir.right_ray());
      j["orientation"] = dir.orientation() == ArcOrientation::Ccw ? "ccw" : "cw";
      j["arc_length"] = dir.arc_length();
      break;
    case DirectionSet::Kind::Cap:
      j["type"] = "cap";
      j["axis"] = rat_vec_json(dir.axis());
      j["cos_half_angle"] = rat_to_string(dir.cos_half_angle());
      break;
  }
  return j;
}

Json lattice_to_json(const LatticeBasis& basis) {
  Json rows = Json::array();
  for (int i = 0; i < basis.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < basis.dim(); ++j) {
      if (basis.mode() == Mode::Exact)
        row.push_back(rat_to_string(basis.mat().at(i, j)));
      else
        row.push_back(basis.mat_f().at(i, j));
    }
    rows.push_back(row);
  }
  Json j;
  j["dim"] = basis.dim();
  j["mode"] = mode_name(basis.mode());
  j["rows"] = rows;
  return j;
}

namespace {

template <typename Report>
Json report_common(const KroneckerConfig& config, const Report& rep) {
  Json j;
  j["d"] = rep.dim;
  j["N"] = rep.n;
  j["mode"] = mode_name(config.mode);
  if (config.mode == Mode::Exact)
    j["alpha"] = rat_vec_json(config.alpha);
  else
    j["alpha"] = config.alpha_f;
  j["lattice"] = lattice_to_json(config.lattice);
  j["direction"] = direction_to_json(config.direction);
  j["point_count"] = rep.point_count;
  j["g"] = rep.g;
  return j;
}

}  // namespace

Json report_to_json(const KroneckerConfig& config, const GapReportQ& rep) {
  Json j = report_common(config, rep);
  Json dl = Json::array();
  for (const Rat& v : rep.distinct_len2) dl.push_back(rat_to_string(v));
  j["distinct_len2"] = dl;
  Json pp = Json::array();
  for (std::size_t i = 0; i < rep.per_point_len2.size(); ++i) {
    Json e;
    e["n"] = i + 1;
    e["len2"] = rat_to_string(rep.per_point_len2[i]);
    e["k"] = rep.witnesses[i].k;
    e["ell"] = rep.witnesses[i].ell;
    pp.push_back(e);
  }
  j["per_point"] = pp;
  return j;
}

Json report_to_json(const KroneckerConfig& config, const GapReportF& rep) {
  Json j = report_common(config, rep);
  j["distinct_len2"] = rep.distinct_len2;
  Json pp = Json::array();
  for (std::size_t i = 0; i < rep.per_point_len2.size(); ++i) {
    Json e;
    e["n"] = i + 1;
    e["len2"] = rep.per_point_len2[i];
    e["k"] = rep.witnesses[i].k;
    e["ell"] = rep.witnesses[i].ell;
    pp.push_back(e);
  }
  j["per_point"] = pp;
  j["warnings"] = rep.warnings;
  return j;
}

MatQ parse_matrix_file_q(const std::string& path) {
  const auto rows = read_rows(path);
  const int n = static_cast<int>(rows.size());
  MatQ m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rat_from_string(rows[i][j]);
  return m;
}

MatF parse_matrix_file_f(const std::string& path) {
  const auto rows = read_rows(path);
  const int n = static_cast<int>(rows.size());
  MatF m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rat_from_string(rows[i][j]).get_d();
  return m;
}

LatticeBasis parse_lattice_file(const std::string& path, Mode mode) {
  if (mode == Mode::Exact) {
    const MatQ m = parse_matrix_file_q(path);
    std::vector<RatVec> rows;
    for (int i = 0; i < m.n; ++i) {
      std::vector<Rat> r(m.n);
      for (int j = 0; j < m.n; ++j) r[j] = m.at(i, j);
      rows.push_back(RatVec(std::move(r)));
    }
    return LatticeBasis::from_rows(std::move(rows));
  }
  const MatF m = parse_matrix_file_f(path);
  std::vector<std::vector<double>> rows(m.n, std::vector<double>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  return LatticeBasis::from_rows(std::move(rows));
}

}  // namespace kron

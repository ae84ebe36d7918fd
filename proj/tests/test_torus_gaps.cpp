#include <doctest.h>

#include <cmath>

#include "kron/bounds.hpp"
#include "kron/sampling.hpp"
#include "kron/torus_gaps.hpp"

using namespace kron;

namespace {

RatVec rv(std::vector<std::string> parts) { return rat_vec_from_strings(parts); }

KroneckerConfig exact_config(std::vector<std::string> alpha, long n,
                             LatticeBasis lattice, DirectionSet dir) {
  KroneckerConfig c;
  c.mode = Mode::Exact;
  c.alpha = rv(std::move(alpha));
  c.lattice = std::move(lattice);
  c.n_points = n;
  c.direction = std::move(dir);
  return c;
}

std::vector<Rat> rats(std::vector<std::string> parts) {
  std::vector<Rat> out;
  for (const auto& p : parts) out.push_back(rat_from_string(p));
  std::sort(out.begin(), out.end());
  return out;
}

KroneckerConfig random_exact_config(Rng& rng, int max_d, long max_n) {
  const int d = 1 + static_cast<int>(rng.u64() % max_d);
  KroneckerConfig c;
  c.mode = Mode::Exact;
  c.alpha = random_alpha(d, 200, rng);
  c.lattice = random_recombined_basis(d, 6, rng);
  c.n_points = rng.uniform_long(1, max_n);
  c.direction = DirectionSet::full_sphere(d);
  return c;
}

// config invariant: every witness reproduces its per-point entry
void check_witnesses(const KroneckerConfig& config, const GapReportQ& rep) {
  const int d = config.dim();
  for (std::size_t i = 0; i < rep.per_point_len2.size(); ++i) {
    const long n = static_cast<long>(i) + 1;
    const GapWitness& w = rep.witnesses[i];
    // k in (-n, N_+ - n)
    CHECK(w.k > -n);
    CHECK(2 * w.k < 2 * (rep.n - n) + 1);
    std::vector<Rat> p(d);
    for (int j = 0; j < d; ++j) {
      p[j] = w.k * config.alpha[j];
      for (int b = 0; b < d; ++b) p[j] += w.ell[b] * config.lattice.mat().at(b, j);
    }
    RatVec pv{std::move(p)};
    CHECK(in_cone(pv, config.direction));
    CHECK(pv.squared_norm() == rep.per_point_len2[i]);
  }
}

}  // namespace

TEST_CASE("orbit period") {
  CHECK(orbit_period(rv({"1/2", "0"}), LatticeBasis::identity(2)) == 2);
  CHECK(orbit_period(rv({"19/50", "33/250"}), LatticeBasis::identity(2)) == 250);
  CHECK(orbit_period(rv({"1/3"}), LatticeBasis::identity(1)) == 3);

  KroneckerConfig c;
  c.mode = Mode::Float;
  c.alpha_f = {0.5};
  c.lattice = LatticeBasis::identity(1, Mode::Float);
  CHECK_FALSE(orbit_period(c).has_value());
}

TEST_CASE("five distinct distances at alpha=(19/50,33/250), N=9") {
  const auto config = exact_config({"19/50", "33/250"}, 9, LatticeBasis::identity(2),
                                   DirectionSet::full_sphere(2));
  const GapReportQ rep = nearest_distances(config);
  CHECK(rep.g == 5);
  CHECK(rep.point_count == 9);
  CHECK(rep.distinct_len2 ==
        rats({"74/15625", "3793/31250", "1901/15625", "157/1250", "1989/15625"}));
  // the per-point sequence is symmetric around the middle point
  const std::vector<Rat> expect = {
      rat_from_string("74/15625"),   rat_from_string("3793/31250"),
      rat_from_string("1901/15625"), rat_from_string("157/1250"),
      rat_from_string("1989/15625"), rat_from_string("157/1250"),
      rat_from_string("1901/15625"), rat_from_string("3793/31250"),
      rat_from_string("74/15625")};
  CHECK(rep.per_point_len2 == expect);
  check_witnesses(config, rep);
}

TEST_CASE("seven distinct distances at alpha=(46/125,107/500,43/500), N=15") {
  const auto config = exact_config({"46/125", "107/500", "43/500"}, 15,
                                   LatticeBasis::identity(3), DirectionSet::full_sphere(3));
  const GapReportQ rep = nearest_distances(config);
  CHECK(rep.g == 7);
  CHECK(rep.distinct_len2 ==
        rats({"2023/31250", "13513/125000", "16317/125000", "177/1250", "19237/125000",
              "2866/15625", "23577/125000"}));
  check_witnesses(config, rep);
}

TEST_CASE("window edge cases") {
  // N=1 leaves only k=0: the neighbor is the point itself through a lattice
  // translate, so the distance is the shortest nonzero vector of Z^2
  const auto one = exact_config({"1/2", "0"}, 1, LatticeBasis::identity(2),
                                DirectionSet::full_sphere(2));
  const GapReportQ rep = nearest_distances(one);
  CHECK(rep.point_count == 1);
  CHECK(rep.distinct_len2 == rats({"1"}));

  // alpha = 0: a single point after dedup for any N
  for (long n : {1L, 7L, 40L}) {
    const auto zero = exact_config({"0", "0"}, n, LatticeBasis::identity(2),
                                   DirectionSet::full_sphere(2));
    const GapReportQ r = nearest_distances(zero);
    CHECK(r.point_count == 1);
    CHECK(r.g == 1);
    CHECK(r.distinct_len2 == rats({"1"}));
  }

  CHECK_THROWS(nearest_distances(
      exact_config({"1/2", "0"}, 0, LatticeBasis::identity(2), DirectionSet::full_sphere(2))));
}

TEST_CASE("gap count examples") {
  // second nearest-neighbor graph example: alpha=(0.105, 0.275), N=12
  const auto fig_right = exact_config({"21/200", "11/40"}, 12, LatticeBasis::identity(2),
                                      DirectionSet::full_sphere(2));
  CHECK(distinct_distance_count(fig_right) == 5);

  // d=1 with alpha = e: three distinct nearest-neighbor distances at N=5
  KroneckerConfig e1;
  e1.mode = Mode::Float;
  e1.alpha_f = {std::exp(1.0) - 2.0};
  e1.lattice = LatticeBasis::identity(1, Mode::Float);
  e1.n_points = 5;
  e1.direction = DirectionSet::full_sphere(1);
  CHECK(distinct_distance_count(e1) == 3);
}

TEST_CASE("period dedup keeps the window of the original N") {
  // alpha = (1/3) has period 3; even with N = 5 only 3 points remain and all
  // right-gaps equal 1/3
  const auto c = exact_config({"1/3"}, 5, LatticeBasis::identity(1), DirectionSet::half_line(1));
  const GapReportQ rep = nearest_distances(c);
  CHECK(rep.point_count == 3);
  CHECK(rep.g == 1);
  CHECK(rep.distinct_len2 == rats({"1/9"}));
}

TEST_CASE("oracle equivalence on random configs") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const KroneckerConfig config = random_exact_config(rng, 3, 25);
    const GapReportQ fast = nearest_distances(config);
    const GapReportQ slow = nearest_distances_bruteforce(config);
    REQUIRE(fast == slow);  // field-by-field, witnesses included
  }
}

TEST_CASE("oracle on its own examples") {
  // classical three-distance behavior to the right of each point
  KroneckerConfig golden;
  golden.mode = Mode::Float;
  golden.alpha_f = {(std::sqrt(5.0) - 1.0) / 2.0};
  golden.lattice = LatticeBasis::identity(1, Mode::Float);
  golden.n_points = 100;
  golden.direction = DirectionSet::half_line(1);
  const GapReportF rep = nearest_distances_bruteforce_f(golden);
  CHECK(rep.g <= 3);

  const auto five = exact_config({"19/50", "33/250"}, 9, LatticeBasis::identity(2),
                                 DirectionSet::full_sphere(2));
  CHECK(nearest_distances_bruteforce(five).distinct_len2 ==
        rats({"74/15625", "3793/31250", "1901/15625", "157/1250", "1989/15625"}));
}

TEST_CASE("three-distance bound for d=1 half line") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    KroneckerConfig c;
    c.mode = Mode::Exact;
    c.alpha = random_alpha(1, 10000, rng);
    c.lattice = LatticeBasis::identity(1);
    c.n_points = rng.uniform_long(1, 100);
    c.direction = DirectionSet::half_line(1);
    CHECK(distinct_distance_count(c) <= 3);
  }
}

TEST_CASE("bound conformance on random runs") {
  Rng rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng.u64() % 2);
    KroneckerConfig c;
    c.mode = Mode::Exact;
    c.alpha = random_alpha(d, 5000, rng);
    c.lattice = random_recombined_basis(d, 6, rng);
    c.n_points = rng.uniform_long(1, 60);
    c.direction = DirectionSet::full_sphere(d);
    CHECK(distinct_distance_count(c) <= nearest_neighbor_bound(d));
  }
  // arcs longer than pi obey the arc table
  for (int trial = 0; trial < 25; ++trial) {
    KroneckerConfig c;
    c.mode = Mode::Exact;
    c.alpha = random_alpha(2, 5000, rng);
    c.lattice = LatticeBasis::identity(2);
    c.n_points = rng.uniform_long(1, 60);
    c.direction = random_wide_arc(rng);
    const auto bound = arc_gap_bound(c.direction.arc_length());
    REQUIRE(bound.has_value());
    CHECK(distinct_distance_count(c) <= *bound);
  }
}

TEST_CASE("enlarging N never increases a per-point distance") {
  Rng rng(606);
  for (int trial = 0; trial < 12; ++trial) {
    KroneckerConfig small = random_exact_config(rng, 3, 30);
    KroneckerConfig big = small;
    big.n_points = small.n_points + rng.uniform_long(1, 20);
    const GapReportQ a = nearest_distances(small);
    const GapReportQ b = nearest_distances(big);
    const long shared = std::min(a.point_count, b.point_count);
    for (long i = 0; i < shared; ++i) CHECK(b.per_point_len2[i] <= a.per_point_len2[i]);
  }
}

TEST_CASE("rotation invariance of the distance multiset") {
  // common exact rational rotation of alpha, lattice rows and arc rays
  const std::vector<std::string> cos_sin = {"3/5", "4/5"};
  const auto rot = [&](const RatVec&v) {
    return rv({rat_to_string(Rat(v[0] * make_rat(3, 5) - v[1] * make_rat(4, 5))),
               rat_to_string(Rat(v[0] * make_rat(4, 5) + v[1] * make_rat(3, 5)))});
  };
  Rng rng(707);
  for (int trial = 0; trial < 8; ++trial) {
    KroneckerConfig base;
    base.mode = Mode::Exact;
    base.alpha = random_alpha(2, 100, rng);
    base.lattice = LatticeBasis::identity(2);
    base.n_points = rng.uniform_long(2, 25);
    RatVec l = random_alpha(2, 9, rng) - rv({"1/2", "1/2"});
    RatVec r = random_alpha(2, 9, rng) - rv({"1/2", "1/2"});
    if (l.is_zero() || r.is_zero()) continue;
    base.direction = DirectionSet::arc(l, r, ArcOrientation::Ccw);
    if (base.direction.arc_length() < 0.5) continue;  // keep the run quick

    KroneckerConfig turned = base;
    turned.alpha = rot(base.alpha);
    turned.lattice = LatticeBasis::from_rows({rot(rv({"1", "0"})), rot(rv({"0", "1"}))});
    turned.direction = DirectionSet::arc(rot(l), rot(r), ArcOrientation::Ccw);

    const GapReportQ a = nearest_distances(base);
    const GapReportQ b = nearest_distances(turned);
    CHECK(a.per_point_len2 == b.per_point_len2);
  }
}

TEST_CASE("float mode tracks exact mode") {
  Rng rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    const KroneckerConfig config = random_exact_config(rng, 2, 30);
    KroneckerConfig fconfig = config;
    fconfig.mode = Mode::Float;
    fconfig.alpha_f = config.alpha.to_doubles();
    const GapReportQ exact = nearest_distances(config);
    const GapReportF approx = nearest_distances_f(fconfig);
    // per-point values agree when no dedup kicked in
    if (exact.point_count == approx.point_count) {
      for (std::size_t i = 0; i < exact.per_point_len2.size(); ++i)
        CHECK(approx.per_point_len2[i] ==
              doctest::Approx(exact.per_point_len2[i].get_d()).epsilon(1e-9));
    }
  }
}

TEST_CASE("float cone-boundary hits surface as warnings") {
  // alpha on the diagonal makes k*alpha land exactly on the arc's left ray
  KroneckerConfig c;
  c.mode = Mode::Float;
  c.alpha_f = {0.25, 0.25};
  c.lattice = LatticeBasis::identity(2, Mode::Float);
  c.n_points = 6;
  c.direction = DirectionSet::arc(rat_vec_from_strings({"1", "1"}),
                                  rat_vec_from_strings({"-1", "1"}), ArcOrientation::Ccw);
  const GapReportF rep = nearest_distances_f(c);
  bool flagged = false;
  for (const auto& w : rep.warnings)
    if (w.find("cone-boundary") != std::string::npos) flagged = true;
  CHECK(flagged);
}

TEST_CASE("float distinctness grouping and audit band") {
  std::vector<std::string> warnings;
  const auto reps = group_distinct({1.0, 1.0 + 1e-10, 2.0, 2.0 * (1 + 1e-8), 3.0},
                                   1e-9, 1e-6, &warnings);
  CHECK(reps.size() == 4);           // 1.0-pair merged, 2.0-pair kept apart
  CHECK(warnings.size() == 1);       // ... but flagged as suspicious
  const auto clean = group_distinct({1.0, 2.0, 3.0}, 1e-9, 1e-6, &warnings);
  CHECK(clean.size() == 3);
}

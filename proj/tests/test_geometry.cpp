#include <doctest.h>

#include <numbers>

#include "kron/coset.hpp"
#include "kron/geometry.hpp"
#include "kron/sampling.hpp"

using namespace kron;

namespace {

RatVec rv(std::vector<std::string> parts) { return rat_vec_from_strings(parts); }

// test-side oracle: min |x + c|^2 over integer c in [-box, box]^d with
// x + c in the cone (standard lattice only)
Rat brute_coset_min(const RatVec& x, const DirectionSet& dir, long box) {
  Rat best(-1);
  const int d = x.dim();
  std::vector<long> c(d, -box);
  while (true) {
    std::vector<Rat> p(d);
    for (int i = 0; i < d; ++i) p[i] = x[i] + c[i];
    RatVec pv{std::move(p)};
    if (in_cone(pv, dir)) {
      const Rat n2 = pv.squared_norm();
      if (sgn(best) < 0 || n2 < best) best = n2;
    }
    int k = d - 1;
    while (k >= 0 && c[k] == box) {
      c[k] = -box;
      --k;
    }
    if (k < 0) break;
    ++c[k];
  }
  return best;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(rat_from_string("19/50") == make_rat(19, 50));
  CHECK(rat_from_string("-3/9") == make_rat(-1, 3));
  CHECK(rat_from_string("0.38") == make_rat(19, 50));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_to_string(make_rat(74, 15625)) == "74/15625");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS(rat_from_string("1/0"));
  CHECK_THROWS(rat_from_string("abc"));
  CHECK_THROWS(make_rat(1, 0));

  CHECK(floor_long(make_rat(-3, 2)) == -2);
  CHECK(ceil_long(make_rat(-3, 2)) == -1);
  CHECK(round_long(make_rat(5, 2)) == 3);  // ties up
  CHECK(round_long(make_rat(-5, 2)) == -2);
}

TEST_CASE("in_cone basics") {
  const auto full = DirectionSet::full_sphere(2);
  CHECK(in_cone(rv({"1", "0"}), full));
  CHECK_FALSE(in_cone(rv({"0", "0"}), full));

  const auto quarter =
      DirectionSet::arc(rv({"1", "0"}), rv({"0", "1"}), ArcOrientation::Ccw);
  CHECK(in_cone(rv({"1", "0"}), quarter));        // left boundary included
  CHECK_FALSE(in_cone(rv({"0", "1"}), quarter));  // right boundary excluded
  CHECK(in_cone(rv({"1", "1"}), quarter));
  CHECK(in_cone(rv({"5", "1"}), quarter));
  CHECK_FALSE(in_cone(rv({"-1", "1"}), quarter));
  CHECK_FALSE(in_cone(rv({"1", "-1"}), quarter));

  // the complementary three-quarter arc, same half-open convention
  const auto rest = DirectionSet::arc(rv({"0", "1"}), rv({"1", "0"}), ArcOrientation::Ccw);
  CHECK(in_cone(rv({"0", "1"}), rest));
  CHECK(in_cone(rv({"-1", "0"}), rest));  // anti-parallel to the quarter's left ray
  CHECK(in_cone(rv({"0", "-1"}), rest));
  CHECK_FALSE(in_cone(rv({"1", "0"}), rest));

  CHECK_THROWS(in_cone(rv({"1", "0", "0"}), full));
}

TEST_CASE("arc_length examples") {
  const double pi = std::numbers::pi;
  const auto half = DirectionSet::arc(rv({"1", "0"}), rv({"-1", "0"}), ArcOrientation::Ccw);
  CHECK(half.arc_length() == doctest::Approx(pi).epsilon(1e-12));

  const auto long_arc = DirectionSet::arc(rv({"1", "0"}), rv({"0", "1"}), ArcOrientation::Cw);
  CHECK(long_arc.arc_length() == doctest::Approx(3 * pi / 2).epsilon(1e-12));

  const auto full_arc = DirectionSet::arc(rv({"1", "0"}), rv({"1", "0"}), ArcOrientation::Ccw);
  CHECK(full_arc.arc_length() == doctest::Approx(2 * pi).epsilon(1e-12));
  CHECK(full_arc.arc_is_full());
  CHECK(in_cone(rv({"-2", "-3"}), full_arc));
}

TEST_CASE("arc partition property") {
  // every nonzero vector belongs to exactly one of an arc and its complement
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    RatVec l = random_alpha(2, 20, rng) - rv({"1/2", "1/2"});
    RatVec r = random_alpha(2, 20, rng) - rv({"1/2", "1/2"});
    if (l.is_zero() || r.is_zero()) continue;
    const auto o = rng.u64() % 2 == 0 ? ArcOrientation::Ccw : ArcOrientation::Cw;
    const auto arc = DirectionSet::arc(l, r, o);
    const auto complement = DirectionSet::arc(r, l, o);
    for (int i = 0; i < 50; ++i) {
      RatVec v = random_alpha(2, 15, rng) - rv({"1/2", "1/2"});
      if (v.is_zero()) continue;
      CHECK(in_cone(v, arc) != in_cone(v, complement));
    }
    // boundary rays themselves
    CHECK(in_cone(l, arc) != in_cone(l, complement));
    CHECK(in_cone(r, arc) != in_cone(r, complement));
  }
}

TEST_CASE("cap membership is closed and scale invariant") {
  // half-angle with cos 3/5: (3,4,0) sits exactly on the boundary
  const auto cap = DirectionSet::cap(rv({"1", "0", "0"}), make_rat(3, 5));
  CHECK(in_cone(rv({"3", "4", "0"}), cap));
  CHECK(in_cone(rv({"6", "8", "0"}), cap));  // same direction, doubled
  CHECK(in_cone(rv({"1", "0", "0"}), cap));
  CHECK_FALSE(in_cone(rv({"2", "4", "0"}), cap));
  CHECK_FALSE(in_cone(rv({"-1", "0", "0"}), cap));
  CHECK_FALSE(in_cone(rv({"0", "0", "0"}), cap));

  // obtuse cap (negative cos): everything within 120 degrees of the axis
  const auto wide = DirectionSet::cap(rv({"1", "0"}), make_rat(-1, 2));
  CHECK(in_cone(rv({"0", "1"}), wide));
  CHECK(in_cone(rv({"-1", "2"}), wide));
  CHECK_FALSE(in_cone(rv({"-1", "0"}), wide));
  CHECK_FALSE(in_cone(rv({"-4", "1"}), wide));

  CHECK(DirectionSet::cap(rv({"1", "0"}), Rat(1)).has_interior() == false);
  CHECK(DirectionSet::half_line(1).has_interior());  // S^0 is discrete
  CHECK(DirectionSet::cap(rv({"1", "0"}), make_rat(1, 2)).has_interior());
}

TEST_CASE("float cone tests flag boundary-tolerance vectors") {
  const auto quarter =
      DirectionSet::arc(rv({"1", "0"}), rv({"0", "1"}), ArcOrientation::Ccw);
  const double v1[2] = {0.5, 0.5};
  const auto inside = in_cone(std::span<const double>(v1, 2), quarter);
  CHECK(inside.inside);
  CHECK_FALSE(inside.near_boundary);

  const double v2[2] = {1.0, 1e-12};  // within tolerance of the left ray
  const auto near = in_cone(std::span<const double>(v2, 2), quarter);
  CHECK(near.near_boundary);

  const double v3[2] = {-0.5, 0.5};
  const auto outside = in_cone(std::span<const double>(v3, 2), quarter);
  CHECK_FALSE(outside.inside);
  CHECK_FALSE(outside.near_boundary);
}

TEST_CASE("angle comparison against pi/3") {
  // exact 60-degree pair in 3d, different lengths
  CHECK(cmp_angle_pi_over_3(rv({"1", "1", "0"}), rv({"0", "1", "1"})) == 0);
  CHECK(cmp_angle_pi_over_3(rv({"1", "1", "0"}), rv({"0", "2", "2"})) == 0);
  CHECK(cmp_angle_pi_over_3(rv({"1", "0"}), rv({"1", "0"})) == -1);
  CHECK(cmp_angle_pi_over_3(rv({"1", "0"}), rv({"0", "1"})) == 1);
  CHECK(cmp_angle_pi_over_3(rv({"1", "0"}), rv({"-1", "0"})) == 1);
  CHECK_THROWS(cmp_angle_pi_over_3(rv({"0", "0"}), rv({"1", "0"})));
}

TEST_CASE("vectors within pi/3 shorten their difference") {
  // |w1 - w2| < max(|w1|, |w2|) whenever the angle is < pi/3, and also at
  // exactly pi/3 when the lengths differ; checked on squares to stay exact
  Rng rng(2024);
  int strict_cases = 0;
  while (strict_cases < 10000) {
    const int d = 2 + static_cast<int>(rng.u64() % 2);
    const RatVec half = d == 2 ? rv({"1/2", "1/2"}) : rv({"1/2", "1/2", "1/2"});
    RatVec w1 = random_alpha(d, 30, rng) - half;
    RatVec w2 = random_alpha(d, 30, rng) - half;
    if (w1.is_zero() || w2.is_zero()) continue;
    if (cmp_angle_pi_over_3(w1, w2) != -1) continue;
    ++strict_cases;
    const Rat diff2 = (w1 - w2).squared_norm();
    const Rat m2 = std::max(w1.squared_norm(), w2.squared_norm());
    CHECK(diff2 < m2);
  }

  // equality branch: scaled copies of an exact 60-degree pair
  for (int trial = 0; trial < 500; ++trial) {
    const Rat s1 = make_rat(rng.uniform_long(1, 9), rng.uniform_long(1, 9));
    const Rat s2 = make_rat(rng.uniform_long(1, 9), rng.uniform_long(1, 9));
    RatVec w1 = rv({"1", "1", "0"}).scaled(s1);
    RatVec w2 = rv({"0", "1", "1"}).scaled(s2);
    if (w1.squared_norm() == w2.squared_norm()) continue;
    REQUIRE(cmp_angle_pi_over_3(w1, w2) == 0);
    CHECK((w1 - w2).squared_norm() < std::max(w1.squared_norm(), w2.squared_norm()));
  }
}

TEST_CASE("coset_min on the standard lattice") {
  const auto z2 = LatticeBasis::identity(2);
  const auto full = DirectionSet::full_sphere(2);

  const auto origin = coset_min(RatVec::zero(2), z2, full);
  CHECK(origin.len2 == Rat(1));  // shortest nonzero vector of Z^2

  const RatVec x = rv({"19/50", "33/250"});
  const auto inner = coset_min(x, z2, full);
  CHECK(inner.len2 == rat_from_string("5057/31250"));
  CHECK(inner.len2 == brute_coset_min(x, full, 3));

  const RatVec x5 = rv({"19/10", "33/50"});
  const auto shifted = coset_min(x5, z2, full);
  CHECK(shifted.len2 == rat_from_string("157/1250"));
  CHECK(shifted.coeffs == std::vector<long>{-2, -1});
  CHECK(shifted.len2 == brute_coset_min(x5, full, 3));
}

TEST_CASE("coset_min equals the shortest vector at the origin") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + static_cast<int>(rng.u64() % 3);
    const auto basis = random_recombined_basis(d, 8, rng);
    const auto got = coset_min(RatVec::zero(d), basis, DirectionSet::full_sphere(d));
    // brute-force shortest vector over a generous coefficient box
    Rat best(-1);
    std::vector<long> c(d, -5);
    while (true) {
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (c[i] != 0) zero = false;
      if (!zero) {
        std::vector<Rat> p(d, Rat(0));
        for (int j = 0; j < d; ++j)
          for (int i = 0; i < d; ++i) p[j] += c[i] * basis.mat().at(i, j);
        const Rat n2 = RatVec(std::move(p)).squared_norm();
        if (sgn(best) < 0 || n2 < best) best = n2;
      }
      int k = d - 1;
      while (k >= 0 && c[k] == 5) {
        c[k] = -5;
        --k;
      }
      if (k < 0) break;
      ++c[k];
    }
    CHECK(got.len2 == best);
  }
}

TEST_CASE("coset_min is invariant under basis recombination") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 1 + static_cast<int>(rng.u64() % 3);
    const RatVec x = random_alpha(d, 50, rng);
    const auto id = LatticeBasis::identity(d);
    const auto rec = random_recombined_basis(d, 10, rng);
    const auto dir = DirectionSet::full_sphere(d);
    const auto a = coset_min(x, id, dir);
    const auto b = coset_min(x, rec, dir);
    CHECK(a.len2 == b.len2);
    // witnesses express the same length in different coordinates
    std::vector<Rat> pa(d), pb(d);
    for (int j = 0; j < d; ++j) {
      pa[j] = x[j];
      pb[j] = x[j];
      for (int i = 0; i < d; ++i) {
        pa[j] += a.coeffs[i] * id.mat().at(i, j);
        pb[j] += b.coeffs[i] * rec.mat().at(i, j);
      }
    }
    CHECK(RatVec(std::move(pa)).squared_norm() == a.len2);
    CHECK(RatVec(std::move(pb)).squared_norm() == b.len2);
  }
}

TEST_CASE("coset_min rejects bad inputs") {
  const auto z2 = LatticeBasis::identity(2);
  CHECK_THROWS_AS(coset_min(RatVec::zero(2), z2, DirectionSet::cap(rv({"1", "0"}), Rat(1))),
                  std::invalid_argument);  // empty interior
  CHECK_THROWS_AS(coset_min(RatVec::zero(3), z2, DirectionSet::full_sphere(2)),
                  std::invalid_argument);  // dimension mismatch
}

TEST_CASE("lattice basis validation") {
  CHECK_NOTHROW(LatticeBasis::from_rows({rv({"1", "1"}), rv({"0", "1"})}));
  CHECK_NOTHROW(LatticeBasis::from_rows({rv({"3/5", "4/5"}), rv({"-4/5", "3/5"})}));
  CHECK_THROWS(LatticeBasis::from_rows({rv({"2", "0"}), rv({"0", "1"})}));
  CHECK_THROWS(LatticeBasis::from_rows({rv({"1", "0"}), rv({"2", "0"})}));

  CHECK_NOTHROW(LatticeBasis::from_rows(std::vector<std::vector<double>>{{1.0, 0.5}, {0.0, 1.0}}));
  CHECK_THROWS(LatticeBasis::from_rows(std::vector<std::vector<double>>{{1.0001, 0.0}, {0.0, 1.0}}));

  const auto rot = LatticeBasis::from_rows({rv({"3/5", "4/5"}), rv({"-4/5", "3/5"})});
  CHECK_FALSE(rot.integer_entries());
  CHECK(LatticeBasis::identity(3).integer_entries());
}

TEST_CASE("float coset_min mirrors the exact one") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(rng.u64() % 3);
    const RatVec x = random_alpha(d, 100, rng);
    const auto basis = LatticeBasis::identity(d);
    const auto dir = DirectionSet::full_sphere(d);
    const auto exact = coset_min(x, basis, dir);
    const auto approx = coset_min_f(x.to_doubles(), basis, dir);
    CHECK(approx.len2 == doctest::Approx(exact.len2.get_d()).epsilon(1e-9));
  }
}

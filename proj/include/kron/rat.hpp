#pragma once

/// Exact rational scalars and vectors.
///
/// `Rat` is GMP's mpq_class: arbitrary-precision rationals kept in canonical
/// form (lowest terms, positive denominator). Everything that decides a
/// geometric predicate in exact mode goes through this type; doubles are
/// views, never the source of truth.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kron {

using Rat = mpq_class;
using Int = mpz_class;

/// n/d in canonical form. Throws on d == 0.
Rat make_rat(long n, long d = 1);

/// Parses "p/q", "p", or a plain decimal like "0.38" (converted exactly).
Rat rat_from_string(const std::string& s);

/// Canonical "p/q" (just "p" when q == 1).
std::string rat_to_string(const Rat& q);

inline double to_double(const Rat& q) { return q.get_d(); }

/// Largest integer <= q.
long floor_long(const Rat& q);
/// Smallest integer >= q.
long ceil_long(const Rat& q);
/// Nearest integer, ties toward +inf.
long round_long(const Rat& q);

/// Exact rational vector in R^d, d >= 1.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::vector<Rat> coords) : c_(std::move(coords)) {}
  RatVec(std::initializer_list<Rat> coords) : c_(coords) {}

  static RatVec zero(int dim) { return RatVec(std::vector<Rat>(dim, Rat(0))); }

  int dim() const { return static_cast<int>(c_.size()); }
  const Rat& operator[](int i) const { return c_[i]; }
  Rat& operator[](int i) { return c_[i]; }

  bool is_zero() const;

  RatVec operator+(const RatVec& o) const;
  RatVec operator-(const RatVec& o) const;
  RatVec operator-() const;
  RatVec scaled(const Rat& s) const;

  Rat dot(const RatVec& o) const;
  Rat squared_norm() const;

  std::vector<double> to_doubles() const;

  bool operator==(const RatVec& o) const { return c_ == o.c_; }

 private:
  std::vector<Rat> c_;
};

RatVec rat_vec_from_strings(const std::vector<std::string>& parts);

// Small helpers for the float mirror of the exact layer.
double fdot(std::span<const double> a, std::span<const double> b);
double fnorm2(std::span<const double> a);

/// splitmix64; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace kron

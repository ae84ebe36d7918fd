#include "kron/rat.hpp"

#include <cctype>

namespace kron {

Rat make_rat(long n, long d) {
  if (d == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  const auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    // decimal: sign, integer part, fractional part
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac_len = s.size() - dot - 1;
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw std::invalid_argument("rat_from_string: bad decimal '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || sgn(q.get_den()) == 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

long floor_long(const Rat& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("floor_long: out of range");
  return z.get_si();
}

long ceil_long(const Rat& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("ceil_long: out of range");
  return z.get_si();
}

long round_long(const Rat& q) { return floor_long(q + make_rat(1, 2)); }

bool RatVec::is_zero() const {
  for (const Rat& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

RatVec RatVec::operator+(const RatVec& o) const {
  std::vector<Rat> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return RatVec(std::move(r));
}

RatVec RatVec::operator-(const RatVec& o) const {
  std::vector<Rat> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return RatVec(std::move(r));
}

RatVec RatVec::operator-() const {
  std::vector<Rat> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return RatVec(std::move(r));
}

RatVec RatVec::scaled(const Rat& s) const {
  std::vector<Rat> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return RatVec(std::move(r));
}

Rat RatVec::dot(const RatVec& o) const {
  Rat acc(0);
  for (std::size_t i = 0; i < c_.size(); ++i) acc += c_[i] * o.c_[i];
  return acc;
}

Rat RatVec::squared_norm() const { return dot(*this); }

std::vector<double> RatVec::to_doubles() const {
  std::vector<double> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].get_d();
  return r;
}

RatVec rat_vec_from_strings(const std::vector<std::string>& parts) {
  std::vector<Rat> c;
  c.reserve(parts.size());
  for (const auto& p : parts) c.push_back(rat_from_string(p));
  return RatVec(std::move(c));
}

double fdot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double fnorm2(std::span<const double> a) { return fdot(a, a); }

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace kron

#pragma once

/// Dense square matrices in exact-rational and double flavors, row-major.
/// Row-vector convention throughout: a lattice is {c * M : c in Z^n}.

#include <vector>

#include "kron/rat.hpp"

namespace kron {

struct MatQ {
  int n = 0;
  std::vector<Rat> a;  // row-major, n*n

  MatQ() = default;
  explicit MatQ(int dim) : n(dim), a(dim * dim, Rat(0)) {}

  const Rat& at(int i, int j) const { return a[i * n + j]; }
  Rat& at(int i, int j) { return a[i * n + j]; }

  static MatQ identity(int dim);
};

struct MatF {
  int n = 0;
  std::vector<double> a;

  MatF() = default;
  explicit MatF(int dim) : n(dim), a(dim * dim, 0.0) {}

  const double& at(int i, int j) const { return a[i * n + j]; }
  double& at(int i, int j) { return a[i * n + j]; }

  static MatF identity(int dim);
};

MatQ mul(const MatQ& x, const MatQ& y);
MatF mul(const MatF& x, const MatF& y);

Rat det(const MatQ& m);
double det(const MatF& m);

/// Gauss-Jordan inverse. Throws std::domain_error on a singular matrix.
MatQ inverse(const MatQ& m);
MatF inverse(const MatF& m);

/// Euclidean norms of the columns (used to size enumeration boxes).
std::vector<double> column_norms(const MatQ& m);
std::vector<double> column_norms(const MatF& m);

MatF to_float(const MatQ& m);

/// row vector times matrix
RatVec row_times(const RatVec& v, const MatQ& m);
std::vector<double> row_times(std::span<const double> v, const MatF& m);

}  // namespace kron

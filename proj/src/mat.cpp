#include "kron/mat.hpp"

#include <cmath>
#include <stdexcept>

namespace kron {

MatQ MatQ::identity(int dim) {
  MatQ m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

MatF MatF::identity(int dim) {
  MatF m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

MatQ mul(const MatQ& x, const MatQ& y) {
  MatQ r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const Rat& xik = x.at(i, k);
      if (sgn(xik) == 0) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

MatF mul(const MatF& x, const MatF& y) {
  MatF r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const double xik = x.at(i, k);
      for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

Rat det(const MatQ& m) {
  MatQ w = m;
  Rat result(1);
  for (int c = 0; c < w.n; ++c) {
    int pivot = -1;
    for (int r = c; r < w.n; ++r)
      if (sgn(w.at(r, c)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != c) {
      for (int j = 0; j < w.n; ++j) std::swap(w.at(pivot, j), w.at(c, j));
      result = -result;
    }
    result *= w.at(c, c);
    const Rat inv_piv = Rat(1) / w.at(c, c);
    for (int r = c + 1; r < w.n; ++r) {
      if (sgn(w.at(r, c)) == 0) continue;
      const Rat f = w.at(r, c) * inv_piv;
      for (int j = c; j < w.n; ++j) w.at(r, j) -= f * w.at(c, j);
    }
  }
  return result;
}

double det(const MatF& m) {
  MatF w = m;
  double result = 1.0;
  for (int c = 0; c < w.n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < w.n; ++r)
      if (std::abs(w.at(r, c)) > std::abs(w.at(pivot, c))) pivot = r;
    if (w.at(pivot, c) == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = 0; j < w.n; ++j) std::swap(w.at(pivot, j), w.at(c, j));
      result = -result;
    }
    result *= w.at(c, c);
    for (int r = c + 1; r < w.n; ++r) {
      const double f = w.at(r, c) / w.at(c, c);
      for (int j = c; j < w.n; ++j) w.at(r, j) -= f * w.at(c, j);
    }
  }
  return result;
}

MatQ inverse(const MatQ& m) {
  const int n = m.n;
  MatQ w = m;
  MatQ inv = MatQ::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (sgn(w.at(r, c)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("inverse: singular matrix");
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(pivot, j), w.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    const Rat piv = w.at(c, c);
    for (int j = 0; j < n; ++j) {
      w.at(c, j) /= piv;
      inv.at(c, j) /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(w.at(r, c)) == 0) continue;
      const Rat f = w.at(r, c);
      for (int j = 0; j < n; ++j) {
        w.at(r, j) -= f * w.at(c, j);
        inv.at(r, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

MatF inverse(const MatF& m) {
  const int n = m.n;
  MatF w = m;
  MatF inv = MatF::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(w.at(r, c)) > std::abs(w.at(pivot, c))) pivot = r;
    if (w.at(pivot, c) == 0.0) throw std::domain_error("inverse: singular matrix");
    if (pivot != c)
      for (int j = 0; j < n; ++j) {
        std::swap(w.at(pivot, j), w.at(c, j));
        std::swap(inv.at(pivot, j), inv.at(c, j));
      }
    const double piv = w.at(c, c);
    for (int j = 0; j < n; ++j) {
      w.at(c, j) /= piv;
      inv.at(c, j) /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || w.at(r, c) == 0.0) continue;
      const double f = w.at(r, c);
      for (int j = 0; j < n; ++j) {
        w.at(r, j) -= f * w.at(c, j);
        inv.at(r, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

std::vector<double> column_norms(const MatQ& m) {
  std::vector<double> out(m.n, 0.0);
  for (int j = 0; j < m.n; ++j) {
    Rat acc(0);
    for (int i = 0; i < m.n; ++i) acc += m.at(i, j) * m.at(i, j);
    out[j] = std::sqrt(acc.get_d()) * (1.0 + 1e-12) + 1e-300;
  }
  return out;
}

std::vector<double> column_norms(const MatF& m) {
  std::vector<double> out(m.n, 0.0);
  for (int j = 0; j < m.n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < m.n; ++i) acc += m.at(i, j) * m.at(i, j);
    out[j] = std::sqrt(acc);
  }
  return out;
}

MatF to_float(const MatQ& m) {
  MatF r(m.n);
  for (int i = 0; i < m.n * m.n; ++i) r.a[i] = m.a[i].get_d();
  return r;
}

RatVec row_times(const RatVec& v, const MatQ& m) {
  std::vector<Rat> r(m.n, Rat(0));
  for (int i = 0; i < m.n; ++i) {
    if (sgn(v[i]) == 0) continue;
    for (int j = 0; j < m.n; ++j) r[j] += v[i] * m.at(i, j);
  }
  return RatVec(std::move(r));
}

std::vector<double> row_times(std::span<const double> v, const MatF& m) {
  std::vector<double> r(m.n, 0.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[j] += v[i] * m.at(i, j);
  return r;
}

}  // namespace kron

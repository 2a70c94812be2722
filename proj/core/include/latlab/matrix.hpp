#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "latlab/errors.hpp"
#include "latlab/rational.hpp"

namespace latlab {

template <class T>
inline T num_abs(const T& x) {
  return x < T(0) ? T(-x) : x;
}
template <>
inline double num_abs<double>(const double& x) {
  return std::fabs(x);
}

// Dense k x k matrix, row-major, value semantics. T is double or Rational.
template <class T>
class Mat {
public:
  Mat() : n_(0) {}
  explicit Mat(int n, const T& fill = T(0)) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}
  Mat(int n, std::initializer_list<T> vals) : n_(n), a_(vals) {
    if (static_cast<int>(a_.size()) != n * n)
      throw contract_error("Mat: initializer size mismatch");
  }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int n() const { return n_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  bool operator==(const Mat& o) const { return n_ == o.n_ && a_ == o.a_; }

  Mat operator*(const Mat& o) const {
    if (n_ != o.n_) throw contract_error("Mat::operator*: dimension mismatch");
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int l = 0; l < n_; ++l) {
        const T& x = (*this)(i, l);
        if (x == T(0)) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += x * o(l, j);
      }
    return r;
  }

  Mat operator-(const Mat& o) const {
    if (n_ != o.n_) throw contract_error("Mat::operator-: dimension mismatch");
    Mat r(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  Mat operator+(const Mat& o) const {
    if (n_ != o.n_) throw contract_error("Mat::operator+: dimension mismatch");
    Mat r(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  Mat transpose() const {
    Mat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  // max_{i,j} |a_ij|
  T sup_norm() const {
    T m(0);
    for (const auto& x : a_) {
      T ax = num_abs(x);
      if (ax > m) m = ax;
    }
    return m;
  }

  std::vector<T> col(int j) const {
    std::vector<T> c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(int j, const std::vector<T>& c) {
    for (int i = 0; i < n_; ++i) (*this)(i, j) = c[i];
  }

  std::vector<T> mul_vec(const std::vector<T>& x) const {
    std::vector<T> y(n_, T(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  // Determinant by Gaussian elimination with partial (magnitude) pivoting.
  T det() const {
    Mat m(*this);
    T d(1);
    for (int c = 0; c < n_; ++c) {
      int piv = -1;
      T best(0);
      for (int r = c; r < n_; ++r) {
        T a = num_abs(m(r, c));
        if (a > best) {
          best = a;
          piv = r;
        }
      }
      if (piv < 0) return T(0);
      if (piv != c) {
        for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      for (int r = c + 1; r < n_; ++r) {
        if (m(r, c) == T(0)) continue;
        T f = m(r, c) / m(c, c);
        for (int j = c; j < n_; ++j) m(r, j) -= f * m(c, j);
      }
    }
    return d;
  }

  const std::vector<T>& data() const { return a_; }

private:
  int n_;
  std::vector<T> a_;
};

using MatD = Mat<double>;
using MatQ = Mat<Rational>;

inline MatD to_float(const MatQ& m) {
  MatD r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r(i, j) = rat_to_double(m(i, j));
  return r;
}

// Solve A x = b in place for a small block; throws decomposition_error when a
// pivot falls below min_pivot. Magnitude comparisons are exact for Rational.
template <class T>
std::vector<T> solve_small(Mat<T> a, std::vector<T> b, double min_pivot) {
  const int n = a.n();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    T best(0);
    for (int r = c; r < n; ++r) {
      T m = num_abs(a(r, c));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (piv < 0 || !(best > T(0)))
      throw decomposition_error("solve_small: zero pivot");
    if constexpr (std::is_same_v<T, double>) {
      if (best < min_pivot) throw decomposition_error("solve_small: pivot below threshold");
    }
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      std::swap(b[piv], b[c]);
    }
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c) == T(0)) continue;
      T f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n, T(0));
  for (int i = n - 1; i >= 0; --i) {
    T s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Crude condition estimate: ||A||_sup * ||A^-1||_sup via k solves.
double condition_estimate(const MatD& a);

}  // namespace latlab

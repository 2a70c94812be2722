#include "latlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latlab {

namespace {

bool all_finite(const MatD& m) {
  for (double x : m.data())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

DiagParam::DiagParam(std::vector<double> v) : t(std::move(v)) {
  if (t.size() < 2) throw contract_error("DiagParam: need k >= 2");
  double s = 0.0;
  for (double x : t) {
    if (!std::isfinite(x)) throw contract_error("DiagParam: non-finite entry");
    s += x;
  }
  if (std::fabs(s) > 1e-12) throw contract_error("DiagParam: trace not zero");
}

DiagParam operator+(const DiagParam& a, const DiagParam& b) {
  if (a.k() != b.k()) throw contract_error("DiagParam: dimension mismatch");
  std::vector<double> v(a.t);
  double s = 0.0;
  for (int i = 0; i < a.k(); ++i) {
    v[i] += b.t[i];
    s += v[i];
  }
  // renormalize roundoff so the trace-zero invariant survives chained sums
  for (auto& x : v) x -= s / a.k();
  return DiagParam(v);
}

DiagParam operator*(double s, const DiagParam& a) {
  std::vector<double> v(a.t);
  for (auto& x : v) x *= s;
  return DiagParam(v);
}

DiagParam operator-(const DiagParam& a) { return -1.0 * a; }

LatticeBasis::LatticeBasis(MatD basis) : m_(std::move(basis)) {
  const MatD& b = std::get<MatD>(m_);
  if (b.n() < 2) throw contract_error("LatticeBasis: need k >= 2");
  if (!all_finite(b)) throw contract_error("LatticeBasis: non-finite entry");
  const double d = b.det();
  if (std::fabs(d - 1.0) > 1e-6)
    throw contract_error("LatticeBasis: basis not unimodular (det = " + std::to_string(d) + ")");
}

LatticeBasis::LatticeBasis(MatQ basis) : m_(std::move(basis)) {
  const MatQ& b = std::get<MatQ>(m_);
  if (b.n() < 2) throw contract_error("LatticeBasis: need k >= 2");
  if (b.det() != Rational(1)) throw contract_error("LatticeBasis: exact basis must have det 1");
}

int LatticeBasis::k() const {
  return std::holds_alternative<MatQ>(m_) ? std::get<MatQ>(m_).n() : std::get<MatD>(m_).n();
}

const MatD& LatticeBasis::float_basis() const {
  if (!std::holds_alternative<MatD>(m_)) throw contract_error("LatticeBasis: not in float mode");
  return std::get<MatD>(m_);
}

const MatQ& LatticeBasis::exact_basis() const {
  if (!std::holds_alternative<MatQ>(m_)) throw contract_error("LatticeBasis: not in exact mode");
  return std::get<MatQ>(m_);
}

MatD LatticeBasis::as_float() const {
  if (std::holds_alternative<MatD>(m_)) return std::get<MatD>(m_);
  return to_float(std::get<MatQ>(m_));
}

double LatticeBasis::det() const {
  if (std::holds_alternative<MatD>(m_)) return std::get<MatD>(m_).det();
  return rat_to_double(std::get<MatQ>(m_).det());
}

double frac_dist(double w) {
  if (!std::isfinite(w)) throw contract_error("frac_dist: non-finite input");
  double f = w - std::floor(w);
  return std::min(f, 1.0 - f);
}

long double frac_dist_l(long double w) {
  if (!std::isfinite(static_cast<double>(w))) throw contract_error("frac_dist: non-finite input");
  long double f = w - std::floor(w);
  return std::min(f, 1.0L - f);
}

LatticeBasis apply_diag(const DiagParam& t, const LatticeBasis& b) {
  if (t.k() != b.k()) throw contract_error("apply_diag: dimension mismatch");
  bool is_zero = true;
  for (double x : t.t)
    if (x != 0.0) is_zero = false;
  if (is_zero) return b;
  MatD m = b.as_float();
  for (int i = 0; i < m.n(); ++i) {
    const double s = std::exp(t.t[i]);
    for (int j = 0; j < m.n(); ++j) m(i, j) *= s;
  }
  return LatticeBasis(std::move(m));
}

double condition_estimate(const MatD& a) {
  const int n = a.n();
  double inv_norm = 0.0;
  try {
    for (int j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      const auto x = solve_small(a, e, 0.0);
      for (double v : x) inv_norm = std::max(inv_norm, std::fabs(v));
    }
  } catch (const numeric_error&) {
    return std::numeric_limits<double>::infinity();
  }
  return a.sup_norm() * inv_norm;
}

// ---------------------------------------------------------------------------
// Shortest vector: size reduction (LLL) + Fincke-Pohst style enumeration.
// The same code runs on double and on Rational; in the exact path every
// pruning comparison is exact, the loop ranges are merely a float superset.
// ---------------------------------------------------------------------------

namespace {

template <class T>
T from_ll(long long r);
template <>
double from_ll<double>(long long r) {
  return static_cast<double>(r);
}
template <>
Rational from_ll<Rational>(long long r) {
  return Rational(static_cast<long>(r));
}

template <class T>
double to_d(const T& x);
template <>
double to_d<double>(const double& x) {
  return x;
}
template <>
double to_d<Rational>(const Rational& x) {
  return x.get_d();
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
struct SvpWork {
  int k = 0;
  std::vector<std::vector<T>> b;           // reduced basis columns
  std::vector<std::vector<long long>> u;   // u[j]: coords of b[j] in the original basis
  std::vector<std::vector<T>> mu;          // mu[i][j], j < i
  std::vector<T> c;                        // ||b*_i||^2
};

template <class T>
void compute_gso(SvpWork<T>& w) {
  const int k = w.k;
  std::vector<std::vector<T>> bstar(k);
  w.mu.assign(k, std::vector<T>(k, T(0)));
  w.c.assign(k, T(0));
  for (int i = 0; i < k; ++i) {
    bstar[i] = w.b[i];
    for (int j = 0; j < i; ++j) {
      w.mu[i][j] = dot(w.b[i], bstar[j]) / w.c[j];
      for (int l = 0; l < k; ++l) bstar[i][l] -= w.mu[i][j] * bstar[j][l];
    }
    w.c[i] = dot(bstar[i], bstar[i]);
    if (!(w.c[i] > T(0))) throw numeric_error("shortest_vector: degenerate basis");
  }
}

template <class T>
long long round_to_ll(const T& x);
template <>
long long round_to_ll<double>(const double& x) {
  if (std::fabs(x) > 9.0e18) throw numeric_error("shortest_vector: coefficient overflow");
  return std::llround(x);
}
template <>
long long round_to_ll<Rational>(const Rational& x) {
  BigInt r = rat_round(x);
  if (!r.fits_slong_p()) throw numeric_error("shortest_vector: coefficient overflow");
  return static_cast<long long>(r.get_si());
}

template <class T>
void lll_reduce(SvpWork<T>& w) {
  const int k = w.k;
  const T delta = T(Rational(99, 100).get_d());
  compute_gso(w);
  int i = 1;
  int guard = 0;
  while (i < k) {
    if (++guard > 200000) throw numeric_error("shortest_vector: reduction did not converge");
    for (int j = i - 1; j >= 0; --j) {
      const long long r = round_to_ll(w.mu[i][j]);
      if (r == 0) continue;
      const T tr = from_ll<T>(r);
      for (int l = 0; l < k; ++l) w.b[i][l] -= tr * w.b[j][l];
      for (int l = 0; l < k; ++l) w.u[i][l] -= r * w.u[j][l];
      compute_gso(w);
    }
    if (w.c[i] >= (delta - w.mu[i][i - 1] * w.mu[i][i - 1]) * w.c[i - 1]) {
      ++i;
    } else {
      std::swap(w.b[i], w.b[i - 1]);
      std::swap(w.u[i], w.u[i - 1]);
      compute_gso(w);
      i = std::max(i - 1, 1);
    }
  }
}

// Sign-normalize so the first nonzero coefficient is positive.
inline void normalize_sign(std::vector<long long>& v) {
  for (long long x : v) {
    if (x > 0) break;
    if (x < 0) {
      for (auto& y : v) y = -y;
      break;
    }
  }
}

inline bool lex_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <class T>
struct EnumState {
  const SvpWork<T>* w;
  Norm norm;
  T best_val;                        // sup norm value, or squared euclidean norm
  std::vector<long long> best_orig;  // sign-normalized original coefficients
  T radius2;                         // euclidean^2 enumeration bound
  std::vector<long long> x;

  std::vector<long long> to_orig(const std::vector<long long>& xr) const {
    const int k = w->k;
    std::vector<long long> o(k, 0);
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) o[l] += xr[j] * w->u[j][l];
    normalize_sign(o);
    return o;
  }

  T value_of(const std::vector<T>& y) const {
    if (norm == Norm::Sup) {
      T m(0);
      for (const auto& v : y) {
        T a = num_abs(v);
        if (a > m) m = a;
      }
      return m;
    }
    return dot(y, y);
  }

  void update_radius() {
    radius2 = (norm == Norm::Sup) ? from_ll<T>(w->k) * best_val * best_val : best_val;
  }

  void offer(const std::vector<long long>& xr, const std::vector<T>& y) {
    const T val = value_of(y);
    if (val > best_val) return;
    auto orig = to_orig(xr);
    if (val == best_val && !lex_less(orig, best_orig)) return;
    best_val = val;
    best_orig = std::move(orig);
    update_radius();
  }

  void descend(int j, const T& partial) {
    const int k = w->k;
    if (j < 0) {
      bool zero = true;
      for (long long v : x)
        if (v != 0) zero = false;
      if (zero) return;
      std::vector<T> y(k, T(0));
      for (int col = 0; col < k; ++col) {
        if (x[col] == 0) continue;
        const T f = from_ll<T>(x[col]);
        for (int l = 0; l < k; ++l) y[l] += f * w->b[col][l];
      }
      offer(x, y);
      return;
    }
    T center(0);
    for (int i = j + 1; i < k; ++i)
      if (x[i] != 0) center += from_ll<T>(x[i]) * w->mu[i][j];
    const double rem = std::max(0.0, to_d<T>(radius2) - to_d<T>(partial));
    const double bound = std::sqrt(rem / to_d<T>(w->c[j])) * (1.0 + 1e-9) + 1e-9;
    const double cd = to_d<T>(center);
    const long long lo = static_cast<long long>(std::ceil(-cd - bound));
    const long long hi = static_cast<long long>(std::floor(-cd + bound));
    for (long long v = lo; v <= hi; ++v) {
      const T off = from_ll<T>(v) + center;
      const T term = off * off * w->c[j];
      const T p2 = partial + term;
      if (p2 > radius2) continue;  // exact prune
      x[j] = v;
      descend(j - 1, p2);
    }
    x[j] = 0;
  }
};

template <class T>
ShortVectorResult svp_impl(const Mat<T>& basis, Norm norm) {
  const int k = basis.n();
  SvpWork<T> w;
  w.k = k;
  w.b.resize(k);
  w.u.resize(k);
  for (int j = 0; j < k; ++j) {
    w.b[j] = basis.col(j);
    w.u[j].assign(k, 0);
    w.u[j][j] = 1;
  }
  lll_reduce(w);
  compute_gso(w);

  EnumState<T> st;
  st.w = &w;
  st.norm = norm;
  st.x.assign(k, 0);
  // seed with the best reduced column
  bool first = true;
  for (int j = 0; j < k; ++j) {
    std::vector<long long> xr(k, 0);
    xr[j] = 1;
    const T val = st.value_of(w.b[j]);
    auto orig = st.to_orig(xr);
    if (first || val < st.best_val || (val == st.best_val && lex_less(orig, st.best_orig))) {
      st.best_val = val;
      st.best_orig = orig;
      first = false;
    }
  }
  st.update_radius();
  st.descend(k - 1, T(0));

  ShortVectorResult res;
  res.coeffs = st.best_orig;
  res.image.assign(k, 0.0);
  std::vector<T> img(k, T(0));
  for (int j = 0; j < k; ++j) {
    if (res.coeffs[j] == 0) continue;
    const T f = from_ll<T>(res.coeffs[j]);
    for (int l = 0; l < k; ++l) img[l] += f * basis(l, j);
  }
  for (int l = 0; l < k; ++l) res.image[l] = to_d<T>(img[l]);
  if (norm == Norm::Sup) {
    double m = 0.0;
    for (double v : res.image) m = std::max(m, std::fabs(v));
    res.norm = m;
  } else {
    double s = 0.0;
    for (double v : res.image) s += v * v;
    res.norm = std::sqrt(s);
  }
  return res;
}

}  // namespace

ShortVectorResult shortest_vector(const LatticeBasis& b, Norm norm) {
  const int k = b.k();
  if (k > 6) throw contract_error("shortest_vector: k <= 6 supported");
  if (b.mode() == Mode::Exact) return svp_impl(b.exact_basis(), norm);
  const MatD& m = b.float_basis();
  if (condition_estimate(m) > 1e12)
    throw numeric_error("shortest_vector: basis condition number exceeds 1e12");
  return svp_impl(m, norm);
}

double delta(const LatticeBasis& b, Norm norm) { return shortest_vector(b, norm).norm; }

bool mahler_in_K_rho(const LatticeBasis& b, double rho) {
  if (!(rho > 0.0)) throw contract_error("mahler_in_K_rho: rho must be positive");
  return delta(b) >= rho;
}

double matrix_metric(const MatD& g, const MatD& h) {
  if (g.n() != h.n()) throw contract_error("matrix_metric: dimension mismatch");
  return (g - h).sup_norm();
}

}  // namespace latlab

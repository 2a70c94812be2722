#include "latlab/rigidity.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace latlab {

std::pair<bool, ExceptionalDiagnostics> exceptional_check(const IntegerMatrix& g) {
  ExceptionalDiagnostics d;
  const PolyQ p = charpoly(g.a);

  d.no_unit_eigenvalue = (p.eval(Rational(1)) != 0) && (p.eval(Rational(-1)) != 0);

  const auto sqf = squarefree_decomposition(p);
  // sqf[i-1] collects the multiplicity-i part of the characteristic polynomial
  bool higher = false;
  for (std::size_t i = 2; i < sqf.size(); ++i)
    if (sqf[i].degree() > 0) higher = true;
  d.one_double_rest_simple = sqf.size() >= 2 && sqf[1].degree() == 1 && !higher;

  PolyQ radical = PolyQ::constant(Rational(1));
  for (const auto& q : sqf) radical = radical * q;
  MatQ aq(g.k());
  for (int i = 0; i < g.k(); ++i)
    for (int j = 0; j < g.k(); ++j) aq(i, j) = Rational(static_cast<long>(g.a(i, j)));
  const MatQ image = radical.eval_matrix(aq);
  bool annihilates = true;
  for (int i = 0; i < g.k() && annihilates; ++i)
    for (int j = 0; j < g.k(); ++j)
      if (image(i, j) != 0) {
        annihilates = false;
        break;
      }
  const bool real_rooted = count_real_roots(radical) == radical.degree();
  d.diagonalizable_over_R = annihilates && real_rooted;

  if (!d.diagonalizable_over_R)
    d.detail = annihilates ? "complex or repeated eigenvalues beyond the minimal polynomial"
                           : "minimal polynomial is not squarefree";
  else if (!d.no_unit_eigenvalue)
    d.detail = "+-1 is an eigenvalue";
  else if (!d.one_double_rest_simple)
    d.detail = "multiplicity pattern is not (2,1,...,1)";
  else
    d.detail = "all three conditions hold";

  const bool all = d.diagonalizable_over_R && d.no_unit_eigenvalue && d.one_double_rest_simple;
  return {all, d};
}

namespace {

// Exact integer determinant via Bareiss; intermediates fit __int128 for the
// entry ranges the scan uses.
__int128 det_bareiss_i128(const Mat<long long>& a) {
  const int n = a.n();
  std::vector<__int128> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = a(i, j);
  auto at = [&](int i, int j) -> __int128& { return m[static_cast<std::size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int c = 0; c < n - 1; ++c) {
    if (at(c, c) == 0) {
      int piv = -1;
      for (int r = c + 1; r < n; ++r)
        if (at(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(c, j), at(piv, j));
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r)
      for (int j = c + 1; j < n; ++j)
        at(r, j) = (at(r, j) * at(c, c) - at(r, c) * at(c, j)) / prev;
    prev = at(c, c);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

ExceptionalScanResult exceptional_scan(int k, int bound, int threads) {
  if (k < 2 || k > 6) throw contract_error("exceptional_scan: k in [2,6]");
  if (bound < 0 || bound > 100) throw contract_error("exceptional_scan: bound in [0,100]");
  const int cells = k * k;
  const long long radix = 2LL * bound + 1;
  double total_d = 1.0;
  for (int i = 0; i < cells; ++i) total_d *= static_cast<double>(radix);
  if (total_d > 2.5e9) throw budget_error("exceptional_scan: candidate space exceeds 2.5e9");
  const long long total = static_cast<long long>(total_d);
  threads = std::clamp(threads, 1, 64);

  std::vector<ExceptionalScanResult> parts(static_cast<std::size_t>(threads));
  auto worker = [&](int tid) {
    ExceptionalScanResult& out = parts[static_cast<std::size_t>(tid)];
    const long long lo = total * tid / threads;
    const long long hi = total * (tid + 1) / threads;
    Mat<long long> cand(k);
    for (long long idx = lo; idx < hi; ++idx) {
      long long rest = idx;
      for (int c = 0; c < cells; ++c) {
        cand(c / k, c % k) = rest % radix - bound;
        rest /= radix;
      }
      ++out.candidates;
      if (det_bareiss_i128(cand) != 1) continue;
      ++out.unimodular;
      IntegerMatrix g(cand, false);
      if (exceptional_check(g).first) {
        ++out.hits;
        out.examples.push_back(cand);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();

  ExceptionalScanResult res;
  for (const auto& p : parts) {
    res.candidates += p.candidates;
    res.unimodular += p.unimodular;
    res.hits += p.hits;
    res.examples.insert(res.examples.end(), p.examples.begin(), p.examples.end());
  }
  return res;
}

PerturbedEigsResult perturbed_eigs_check(std::span<const double> lambda, const MatD& h) {
  const int m = static_cast<int>(lambda.size());
  if (m < 2 || h.n() != m) throw contract_error("perturbed_eigs_check: dimension mismatch");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::fabs(lambda[i] - lambda[j]) <= 1.0)
        throw contract_error("perturbed_eigs_check: eigenvalue gaps must exceed 1");
  if (std::fabs(h.det() - 1.0) > 1e-6)
    throw contract_error("perturbed_eigs_check: h must be unimodular");

  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = h(i, j) * std::exp(lambda[j]);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  PerturbedEigsResult res;
  if (solver.info() != Eigen::Success) {
    res.detail = "eigensolver failed to converge";
    return res;
  }
  const auto eig = solver.eigenvalues();
  res.all_real_positive = true;
  std::vector<double> mags;
  for (int i = 0; i < m; ++i) {
    const double re = eig(i).real(), im = eig(i).imag();
    if (std::fabs(im) > 1e-9 * std::max(1.0, std::fabs(re)) || re <= 0.0)
      res.all_real_positive = false;
    mags.push_back(std::hypot(re, im));
  }
  std::sort(mags.begin(), mags.end(), std::greater<>());
  std::vector<double> sorted_lambda(lambda.begin(), lambda.end());
  std::sort(sorted_lambda.begin(), sorted_lambda.end(), std::greater<>());
  res.max_dev = 0.0;
  for (int i = 0; i < m; ++i) {
    res.lambda_prime.push_back(std::log(mags[static_cast<std::size_t>(i)]));
    res.max_dev = std::max(res.max_dev,
                           std::fabs(res.lambda_prime.back() - sorted_lambda[static_cast<std::size_t>(i)]));
  }
  res.ok = res.all_real_positive && res.max_dev < 0.5;
  res.detail = res.all_real_positive ? "real positive spectrum" : "complex or nonpositive eigenvalue";
  return res;
}

// ---------------------------------------------------------------------------

template <class T>
ShearStateT<T> shear(const ShearStateT<T>& s, const T& r) {
  const int k = s.k();
  Mat<T> g = s.g;
  Mat<T> out = g;
  out(0, 0) = g(0, 0) + g(1, 0) * r;
  out(0, 1) = g(0, 1) + (g(1, 1) - g(0, 0)) * r - g(1, 0) * r * r;
  for (int j = 2; j < k; ++j) out(0, j) = g(0, j) + g(1, j) * r;
  out(1, 1) = g(1, 1) - g(1, 0) * r;
  for (int i = 2; i < k; ++i) out(i, 1) = g(i, 1) - g(i, 0) * r;
  return ShearStateT<T>(std::move(out));
}

template <class T>
ShearStateT<T> shear_direct(const ShearStateT<T>& s, const T& r) {
  const int k = s.k();
  Mat<T> u = Mat<T>::identity(k), uinv = Mat<T>::identity(k);
  u(0, 1) = r;
  uinv(0, 1) = T(0) - r;
  return ShearStateT<T>(u * s.g * uinv);
}

template ShearStateT<double> shear(const ShearStateT<double>&, const double&);
template ShearStateT<Rational> shear(const ShearStateT<Rational>&, const Rational&);
template ShearStateT<double> shear_direct(const ShearStateT<double>&, const double&);
template ShearStateT<Rational> shear_direct(const ShearStateT<Rational>&, const Rational&);

namespace {

double sup_abs_col(const MatD& g, int col, int from_row) {
  double m = 0.0;
  for (int i = from_row; i < g.n(); ++i) m = std::max(m, std::fabs(g(i, col)));
  return m;
}

double sup_abs_row(const MatD& g, int row, int from_col) {
  double m = 0.0;
  for (int j = from_col; j < g.n(); ++j) m = std::max(m, std::fabs(g(row, j)));
  return m;
}

}  // namespace

KappaResult kappa(const ShearState& s) {
  KappaResult r;
  r.kappa_a = std::fabs(s.a2() - s.a1());
  const double gs1 = sup_abs_col(s.g, 0, 2);
  const double g2s = sup_abs_row(s.g, 1, 2);
  r.kappa_u = std::max({std::sqrt(std::fabs(s.g21())), gs1, g2s});
  r.kappa = std::max(r.kappa_a, r.kappa_u);
  return r;
}

ShearState flow_conjugate_shear(const ShearState& s, double tau) {
  const double e1 = std::exp(tau), e2 = std::exp(2.0 * tau);
  MatD g = s.g;
  g(0, 1) /= e2;
  g(1, 0) *= e2;
  for (int j = 2; j < g.n(); ++j) {
    g(0, j) /= e1;  // g1*
    g(1, j) *= e1;  // g2*
  }
  for (int i = 2; i < g.n(); ++i) {
    g(i, 0) *= e1;  // g*1
    g(i, 1) /= e1;  // g*2
  }
  return ShearState(std::move(g));
}

ShearTimeResult find_shear_time(const ShearState& s, const ShearSearch& search) {
  if (!(search.rho > 0.0) || search.rho >= 0.5)
    throw contract_error("find_shear_time: rho in (0, 1/2)");
  const KappaResult kp = kappa(s);
  if (kp.kappa == 0.0)
    throw no_shear_error("find_shear_time: g lies in L (no shear displacement)");

  const double delta = (s.g - MatD::identity(s.k())).sup_norm();
  const double d38 = std::pow(std::max(delta, 1e-300), 3.0 / 8.0);
  const double da = s.a2() - s.a1();
  const double g21 = s.g21();
  const double gs1 = sup_abs_col(s.g, 0, 2);
  const double g2s = sup_abs_row(s.g, 1, 2);

  auto eval = [&](double r) {
    ShearTimeResult out;
    out.r = r;
    out.max_term = std::max({std::fabs(da * r - g21 * r * r), g2s * r, gs1 * r});
    out.g21r = std::fabs(g21 * r);
    out.delta = delta;
    out.C = std::max({out.max_term, out.max_term > 0.0
                                        ? 1.0 / out.max_term
                                        : std::numeric_limits<double>::infinity(),
                      out.g21r / d38});
    out.fallback = false;
    return out;
  };

  const double rho2 = search.rho * search.rho;
  ShearTimeResult primary = eval(1.0 / kp.kappa);
  if (primary.max_term >= rho2 && primary.C < 1.0 / rho2) return primary;

  ShearTimeResult doubled = eval(2.0 / kp.kappa);
  doubled.fallback = true;
  if (doubled.max_term >= rho2 && doubled.C < 1.0 / rho2) return doubled;

  // last resort: sweep [lo_factor/kappa, rho^-5/kappa] multiplicatively and
  // keep the best achieved constant
  ShearTimeResult best = primary.C <= doubled.C ? primary : doubled;
  const double hi = std::pow(search.rho, -5.0) / kp.kappa;
  for (double r = search.lo_factor / kp.kappa; r <= hi; r *= search.step) {
    ShearTimeResult cand = eval(r);
    cand.fallback = true;
    if (cand.C < best.C) best = cand;
  }
  return best;
}

EntropyData::EntropyData(MatD sv, DiagParam tv) : s(std::move(sv)), t(std::move(tv)) {
  if (s.n() != t.k()) throw contract_error("EntropyData: dimension mismatch");
  for (int i = 0; i < s.n(); ++i) {
    if (s(i, i) != 0.0) throw contract_error("EntropyData: diagonal of s must be zero");
    for (int j = 0; j < s.n(); ++j)
      if (s(i, j) < 0.0 || s(i, j) > 1.0)
        throw contract_error("EntropyData: s entries must lie in [0,1]");
  }
}

double entropy_formula(const EntropyData& data) {
  double h = 0.0;
  for (int i = 0; i < data.s.n(); ++i)
    for (int j = 0; j < data.s.n(); ++j) {
      if (i == j) continue;
      const double gap = data.t.t[i] - data.t.t[j];
      if (gap > 0.0) h += data.s(i, j) * gap;
    }
  return h;
}

}  // namespace latlab

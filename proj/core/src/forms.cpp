#include "latlab/forms.hpp"

#include <algorithm>
#include <cmath>

namespace latlab {

double f_m_eval(const FormsMatrix& m, std::span<const long long> x) {
  const int k = m.k();
  if (static_cast<int>(x.size()) != k) throw contract_error("f_m_eval: dimension mismatch");
  double p = 1.0;
  for (int i = 0; i < k; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) row += m.m(i, j) * static_cast<double>(x[j]);
    p *= row;
  }
  return p;
}

namespace {

void normalize_sign_vec(std::vector<long long>& v) {
  for (long long x : v) {
    if (x > 0) return;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return;
    }
  }
}

}  // namespace

FormsScanResult forms_min_scan(const FormsMatrix& m, long long N) {
  if (N < 1) throw contract_error("forms_min_scan: N >= 1");
  const int k = m.k();
  double budget = 1.0;
  for (int i = 0; i < k; ++i) budget *= static_cast<double>(N);
  if (budget > 1e9) throw budget_error("forms_min_scan: N^k exceeds 1e9");

  FormsScanResult res;
  res.min_abs = std::numeric_limits<double>::infinity();
  res.evaluations = 0;
  res.exact_zero = false;

  std::vector<long long> x(k, 0);
  auto consider = [&](const std::vector<long long>& pt) {
    ++res.evaluations;
    const double v = std::fabs(f_m_eval(m, pt));
    std::vector<long long> cand(pt);
    normalize_sign_vec(cand);
    if (v < res.min_abs ||
        (v == res.min_abs && std::lexicographical_compare(cand.begin(), cand.end(),
                                                          res.argmin.begin(), res.argmin.end()))) {
      res.min_abs = v;
      res.argmin = cand;
    }
    if (v == 0.0) res.exact_zero = true;
  };

  // shells ||x||_inf = shell; the last coordinate runs the full range only
  // when one of the leading coordinates already sits on the shell boundary
  for (long long shell = 1; shell <= N && !res.exact_zero; ++shell) {
    for (int i = 0; i < k - 1; ++i) x[i] = -shell;
    while (!res.exact_zero) {
      bool outer_on_shell = false;
      for (int i = 0; i < k - 1; ++i)
        if (x[i] == shell || x[i] == -shell) outer_on_shell = true;
      if (outer_on_shell) {
        for (long long c = -shell; c <= shell && !res.exact_zero; ++c) {
          x[k - 1] = c;
          consider(x);
        }
      } else {
        x[k - 1] = -shell;
        consider(x);
        if (!res.exact_zero) {
          x[k - 1] = shell;
          consider(x);
        }
      }
      int i = k - 2;
      while (i >= 0 && x[i] == shell) {
        x[i] = -shell;
        --i;
      }
      if (i < 0) break;
      ++x[i];
    }
  }
  return res;
}

std::optional<FormWitness> orbit_to_form_witness(const FormsMatrix& m, const DiagParam& a,
                                                 double eps) {
  if (!(eps > 0.0)) throw contract_error("orbit_to_form_witness: eps > 0");
  if (a.k() != m.k()) throw contract_error("orbit_to_form_witness: dimension mismatch");
  const LatticeBasis flowed = apply_diag(a, LatticeBasis(m.m));
  const auto sv = shortest_vector(flowed, Norm::Sup);
  if (!(sv.norm < eps)) return std::nullopt;
  FormWitness w;
  w.x = sv.coeffs;
  normalize_sign_vec(w.x);
  w.value = f_m_eval(m, w.x);
  w.bound = std::pow(eps, m.k());
  return w;
}

}  // namespace latlab

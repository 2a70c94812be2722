#include "latlab/littlewood.hpp"

#include <cmath>

#include "latlab/rng.hpp"

namespace latlab {

namespace {

long double rat_to_ld(const Rational& x) {
  // exact for numerator/denominator below 2^53, one rounding in the division
  return static_cast<long double>(x.get_num().get_d()) /
         static_cast<long double>(x.get_den().get_d());
}

}  // namespace

TargetPair TargetPair::exact(const Rational& uu, const Rational& vv) {
  TargetPair p;
  p.u = rat_to_ld(uu);
  p.v = rat_to_ld(vv);
  p.uq = uu;
  p.vq = vv;
  return p;
}

ScanResult littlewood_scan(const TargetPair& pair, long long N) {
  if (N < 1) throw contract_error("littlewood_scan: N >= 1");
  if (N > 2000000000LL) throw budget_error("littlewood_scan: N beyond 2e9 budget");
  ScanResult res;
  long double best = std::numeric_limits<long double>::infinity();
  for (long long n = 1; n <= N; ++n) {
    const long double nl = static_cast<long double>(n);
    const long double du = frac_dist_l(nl * pair.u);
    const long double dv = frac_dist_l(nl * pair.v);
    const long double p = nl * du * dv;
    if (p < best) {
      best = p;
      res.argmin = n;
      res.records.push_back({n, static_cast<double>(du), static_cast<double>(dv),
                             static_cast<double>(p), true});
      if (p == 0.0L) break;  // exact zero cannot be beaten
    }
  }
  res.min_product = static_cast<double>(best);
  return res;
}

double one_dim_value(long double u, long long n) {
  const long double nl = static_cast<long double>(n);
  return static_cast<double>(nl * frac_dist_l(nl * u));
}

Scan1DResult one_dim_scan(long double u, long long N) {
  if (N < 1) throw contract_error("one_dim_scan: N >= 1");
  Scan1DResult res;
  long double best = std::numeric_limits<long double>::infinity();
  for (long long n = 1; n <= N; ++n) {
    const long double nl = static_cast<long double>(n);
    const long double p = nl * frac_dist_l(nl * u);
    if (p < best) {
      best = p;
      res.argmin = n;
      if (p == 0.0L) break;
    }
  }
  res.min_value = static_cast<double>(best);
  return res;
}

LatticeBasis tau(const TargetPair& pair) {
  if (pair.uq && pair.vq) {
    MatQ m = MatQ::identity(3);
    m(1, 0) = *pair.uq;
    m(2, 0) = *pair.vq;
    return LatticeBasis(std::move(m));
  }
  MatD m = MatD::identity(3);
  m(1, 0) = pair.ud();
  m(2, 0) = pair.vd();
  return LatticeBasis(std::move(m));
}

namespace {

LatticeBasis flowed_tau(const TargetPair& pair, double r, double s) {
  MatD m(3);
  const double e0 = std::exp(-r - s), e1 = std::exp(r), e2 = std::exp(s);
  m(0, 0) = e0;
  m(1, 0) = e1 * pair.ud();
  m(2, 0) = e2 * pair.vd();
  m(1, 1) = e1;
  m(2, 2) = e2;
  return LatticeBasis(std::move(m));
}

long double witness_product(const TargetPair& pair, long long n, long long m1, long long m2) {
  const long double nl = static_cast<long double>(n);
  return fabsl(nl * (nl * pair.u + static_cast<long double>(m1)) *
               (nl * pair.v + static_cast<long double>(m2)));
}

}  // namespace

double tau_delta_bound(const TargetPair& pair, double r, double s, long long extra_n) {
  if (r < 0.0 || s < 0.0) throw contract_error("tau_delta_bound: r, s >= 0");
  // candidates with n = 0 are integer vectors scaled by e^r, e^s
  double best = std::min(std::exp(r), std::exp(s));
  const double a = std::exp(-r - s), er = std::exp(r), es = std::exp(s);
  auto candidate = [&](long long n) {
    const long double nl = static_cast<long double>(n);
    const double du = static_cast<double>(frac_dist_l(nl * pair.u));
    const double dv = static_cast<double>(frac_dist_l(nl * pair.v));
    const double f = std::max({a * static_cast<double>(n), du * er, dv * es});
    best = std::min(best, f);
  };
  if (extra_n >= 1) candidate(extra_n);
  // a*n is increasing, so the scan below is exhaustive once a*n >= best;
  // the cap keeps deep excursions cheap -- the result is then still a valid
  // upper bound for delta, which is all the verification needs.
  const long long cap = 100000;
  for (long long n = 1; n <= cap; ++n) {
    if (a * static_cast<double>(n) >= best) return best;
    candidate(n);
  }
  return best;
}

std::optional<Witness> orbit_to_witness(const TargetPair& pair, double r, double s, double eps) {
  if (r < 0.0 || s < 0.0) throw contract_error("orbit_to_witness: r, s >= 0");
  if (!(eps > 0.0) || eps >= 1.0) throw contract_error("orbit_to_witness: eps in (0,1)");
  const auto sv = shortest_vector(flowed_tau(pair, r, s), Norm::Sup);
  if (!(sv.norm < eps)) return std::nullopt;
  long long n = sv.coeffs[0], m1 = sv.coeffs[1], m2 = sv.coeffs[2];
  if (n == 0)
    throw numeric_error("orbit_to_witness: n == 0 (the lower entries cannot both be small)");
  if (n < 0) {
    n = -n;
    m1 = -m1;
    m2 = -m2;
  }
  Witness w{n, m1, m2, 0.0};
  w.product = static_cast<double>(witness_product(pair, n, m1, m2));
  return w;
}

std::vector<long long> continued_fraction(long double x, int max_terms) {
  std::vector<long long> a;
  for (int i = 0; i < max_terms; ++i) {
    const long double fl = floorl(x);
    if (fl > 4.0e18L || fl < -4.0e18L) break;
    a.push_back(static_cast<long long>(fl));
    const long double frac = x - fl;
    if (frac < 1e-15L) break;
    x = 1.0L / frac;
  }
  return a;
}

namespace {

// Smallest q < 1/eps with <q x> < eps, via the convergents of x; exhaustive
// fallback when the float expansion misbehaves.
long long dirichlet_q(long double x, double eps) {
  const long long qmax = static_cast<long long>(std::ceil(1.0 / eps)) - 1;
  const auto a = continued_fraction(x - floorl(x), 48);
  long long qprev = 0, q = 1;  // denominators of the convergents
  long long best = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const long long qi = a[i] * q + qprev;
    if (qi <= 0 || qi > qmax) break;
    qprev = q;
    q = qi;
    best = q;
    if (static_cast<double>(frac_dist_l(static_cast<long double>(best) * x)) < eps) return best;
  }
  if (static_cast<double>(frac_dist_l(static_cast<long double>(best) * x)) < eps) return best;
  for (long long cand = 1; cand <= qmax; ++cand)
    if (static_cast<double>(frac_dist_l(static_cast<long double>(cand) * x)) < eps) return cand;
  throw numeric_error("dirichlet_q: no q < 1/eps found (cannot happen for eps < 1)");
}

}  // namespace

Witness dirichlet_fix(const TargetPair& pair, const Witness& w, double eps) {
  if (!(eps > 0.0) || eps >= 1.0) throw contract_error("dirichlet_fix: eps in (0,1)");
  if (w.n <= 0) throw contract_error("dirichlet_fix: witness needs n >= 1");
  const long double nl = static_cast<long double>(w.n);
  const long double f1 = fabsl(nl * pair.u + static_cast<long double>(w.m1));
  const long double f2 = fabsl(nl * pair.v + static_cast<long double>(w.m2));
  const long double prod = witness_product(pair, w.n, w.m1, w.m2);
  const long double e = eps;

  if (f1 < e && f2 < e) {
    if (!(prod < e * e * e))
      throw contract_error("dirichlet_fix: nice witness but product >= eps^3");
    return w;
  }
  if (!(prod < e * e * e * e * e))
    throw contract_error("dirichlet_fix: product >= eps^5 with a large factor");
  if (f1 >= e && f2 >= e)
    throw contract_error("dirichlet_fix: both factors >= eps contradicts product < eps^5");

  Witness out{};
  if (f2 >= e) {
    // |n(nu+m1)| < eps^4; pick q < 1/eps with <q n v> < eps
    const long long q = dirichlet_q(nl * pair.v, eps);
    out.n = q * w.n;
    out.m1 = q * w.m1;
    out.m2 = -static_cast<long long>(llroundl(static_cast<long double>(out.n) * pair.v));
  } else {
    const long long q = dirichlet_q(nl * pair.u, eps);
    out.n = q * w.n;
    out.m2 = q * w.m2;
    out.m1 = -static_cast<long long>(llroundl(static_cast<long double>(out.n) * pair.u));
  }
  const long double nf1 = fabsl(static_cast<long double>(out.n) * pair.u + out.m1);
  const long double nf2 = fabsl(static_cast<long double>(out.n) * pair.v + out.m2);
  out.product = static_cast<double>(witness_product(pair, out.n, out.m1, out.m2));
  if (!(nf1 < e && nf2 < e && out.product < eps * eps * eps))
    throw numeric_error("dirichlet_fix: postcondition failed");
  return out;
}

OrbitPlacement witness_to_orbit(const TargetPair& pair, const Witness& w, double eps,
                                double r_max) {
  if (!(eps > 0.0) || eps >= 1.0) throw contract_error("witness_to_orbit: eps in (0,1)");
  if (!(r_max > 0.0)) throw contract_error("witness_to_orbit: r_max > 0");
  if (w.n <= 0) throw contract_error("witness_to_orbit: witness needs n >= 1");
  const long double nl = static_cast<long double>(w.n);
  const double f1 = static_cast<double>(fabsl(nl * pair.u + static_cast<long double>(w.m1)));
  const double f2 = static_cast<double>(fabsl(nl * pair.v + static_cast<long double>(w.m2)));
  const double prod = static_cast<double>(witness_product(pair, w.n, w.m1, w.m2));
  if (!(std::max(f1, f2) < eps) || !(prod < eps * eps * eps))
    throw contract_error("witness_to_orbit: witness does not satisfy the nice-(u,v) bounds");

  // Relative margin keeps the verified inequality strict under rounding: the
  // placed short vector then has sup norm <= (1 - margin) eps, not exactly eps.
  const double margin = 1e-9;
  const double target = (1.0 - margin) * eps;
  const double r = (f1 == 0.0) ? r_max : std::clamp(std::log(target / f1), 0.0, r_max);
  const double s = (f2 == 0.0) ? r_max : std::clamp(std::log(target / f2), 0.0, r_max);

  OrbitPlacement out;
  out.r = r;
  out.s = s;
  out.c_constant = 1.0;  // sup norm
  out.strictness_margin = margin;
  out.delta_value = tau_delta_bound(pair, r, s, w.n);
  return out;
}

long double bad_approx_generate(int bound, int length, std::uint64_t seed) {
  if (bound < 1) throw contract_error("bad_approx_generate: bound >= 1");
  if (length < 1) throw contract_error("bad_approx_generate: length >= 1");
  Rng rng(seed);
  std::vector<int> a(static_cast<std::size_t>(length));
  for (auto& q : a) q = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(bound)));
  long double x = 0.0L;
  for (int i = length - 1; i >= 0; --i) x = 1.0L / (static_cast<long double>(a[i]) + x);
  return x;
}

}  // namespace latlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latlab/lattice.hpp"

namespace latlab {

// A target pair (u, v). Values are carried at extended precision for the
// scans; exact rationals are kept when the inputs were rational.
struct TargetPair {
  long double u = 0.0L, v = 0.0L;
  std::optional<Rational> uq, vq;

  TargetPair() = default;
  TargetPair(double uu, double vv) : u(uu), v(vv) {}
  TargetPair(long double uu, long double vv) : u(uu), v(vv) {}
  static TargetPair exact(const Rational& uu, const Rational& vv);

  double ud() const { return static_cast<double>(u); }
  double vd() const { return static_cast<double>(v); }
};

struct ScanRecord {
  long long n;
  double du;      // <n u>
  double dv;      // <n v>
  double product; // n * du * dv
  bool is_record;
};

struct ScanResult {
  double min_product = 0.0;
  long long argmin = 0;
  std::vector<ScanRecord> records;  // strictly decreasing products, increasing n
};

// min over 1 <= n <= N of n <nu> <nv>, with the running-minimum records.
ScanResult littlewood_scan(const TargetPair& pair, long long N);

// One-dimensional variant: min over 1 <= n <= N of n <nu>.
struct Scan1DResult {
  double min_value = 0.0;
  long long argmin = 0;
};
Scan1DResult one_dim_scan(long double u, long long N);
double one_dim_value(long double u, long long n);  // n <nu>

// The lattice generated by (1,u,v), (0,1,0), (0,0,1); exact when the pair is.
LatticeBasis tau(const TargetPair& pair);

struct Witness {
  long long n;
  long long m1;
  long long m2;
  double product;  // |n (nu + m1) (nv + m2)|
};

// Direction A of the correspondence: a short vector of
// alpha^{(-r-s,r,s)} tau_{u,v} (sup norm < eps) gives a witness with
// product < eps^3. Returns nullopt when no such vector exists at (r, s).
std::optional<Witness> orbit_to_witness(const TargetPair& pair, double r, double s, double eps);

// The Dirichlet repair step: given product < eps^5 but
// max(|nu+m1|, |nv+m2|) >= eps, rescale by a q < 1/eps so both linear factors
// drop below eps while the product stays below eps^3. Nice witnesses pass
// through unchanged (q = 1).
Witness dirichlet_fix(const TargetPair& pair, const Witness& w, double eps);

struct OrbitPlacement {
  double r, s;
  double delta_value;       // direct delta bound at the placed orbit point
  double c_constant;        // norm-change constant (1 for sup norm)
  double strictness_margin; // relative margin keeping delta < eps strict
};

// Direct delta upper bound for alpha^{(-r-s,r,s)} tau_{u,v} from the
// component closed form; exact (equal to delta) whenever the candidate scan
// completes, always an upper bound. extra_n adds one known candidate.
double tau_delta_bound(const TargetPair& pair, double r, double s, long long extra_n = 0);

// Direction B: place the orbit so both linear factors sit just under eps;
// verifies delta < eps by a direct shortest-vector computation.
OrbitPlacement witness_to_orbit(const TargetPair& pair, const Witness& w, double eps,
                                double r_max = 40.0);

// Value of the continued fraction [0; a_1, a_2, ...] with partial quotients
// drawn deterministically from {1, ..., bound}.
long double bad_approx_generate(int bound, int length, std::uint64_t seed = 0);

// Continued fraction expansion of x (partial quotients a_0; a_1, a_2, ...).
std::vector<long long> continued_fraction(long double x, int max_terms);

}  // namespace latlab

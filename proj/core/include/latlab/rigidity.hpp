#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latlab/lattice.hpp"
#include "latlab/polyq.hpp"

namespace latlab {

// Element of SL(k,Z); determinant is checked exactly on construction.
struct IntegerMatrix {
  Mat<long long> a;

  explicit IntegerMatrix(Mat<long long> m, bool check_det = true) : a(std::move(m)) {
    if (check_det && det_exact(a) != 1)
      throw contract_error("IntegerMatrix: determinant must be exactly 1");
  }
  int k() const { return a.n(); }
};

struct ExceptionalDiagnostics {
  bool diagonalizable_over_R = false;
  bool no_unit_eigenvalue = false;
  bool one_double_rest_simple = false;
  std::string detail;
};

// The three-condition return criterion, decided in exact arithmetic:
// (1) diagonalizable over R, (2) neither +1 nor -1 is an eigenvalue,
// (3) exactly one eigenvalue of multiplicity two, all others simple.
std::pair<bool, ExceptionalDiagnostics> exceptional_check(const IntegerMatrix& g);

struct ExceptionalScanResult {
  long long candidates = 0;   // all entry assignments scanned
  long long unimodular = 0;   // det == 1
  long long hits = 0;         // passing all three conditions
  std::vector<Mat<long long>> examples;  // the hits (expected empty over SL(k,Z))
};

// Exhaustive scan over integer matrices with entries in [-bound, bound],
// restricted to det == 1; deterministic chunked parallelism.
ExceptionalScanResult exceptional_scan(int k, int bound, int threads = 1);

struct PerturbedEigsResult {
  std::vector<double> lambda_prime;  // log|eigenvalue|, descending
  bool all_real_positive = false;
  double max_dev = 0.0;              // max |lambda'_i - lambda_i| (descending order)
  bool ok = false;                   // all real positive and max_dev < 1/2
  std::string detail;
};

// Eigenvalues of h * diag(e^{lambda_i}); the gap precondition
// |lambda_i - lambda_j| > 1 is enforced, proximity of h to I is the caller's
// lookout (the result is still reported outside the contract radius).
PerturbedEigsResult perturbed_eigs_check(std::span<const double> lambda, const MatD& h);

// ---------------------------------------------------------------------------
// Shearing along u(r) = I + r E_12.
// ---------------------------------------------------------------------------

// Labeled-block view of a unimodular k x k matrix (k >= 2): scalars a1, a2,
// g12, g21, rows g1*, g2*, columns g*1, g*2 and the trailing block a*.
template <class T>
struct ShearStateT {
  Mat<T> g;

  explicit ShearStateT(Mat<T> m) : g(std::move(m)) {
    if (g.n() < 2) throw contract_error("ShearState: need k >= 2");
    if constexpr (std::is_same_v<T, Rational>) {
      if (g.det() != Rational(1)) throw contract_error("ShearState: det must be exactly 1");
    } else {
      if (std::fabs(g.det() - 1.0) > 1e-9)
        throw contract_error("ShearState: matrix must be unimodular");
    }
  }
  int k() const { return g.n(); }
  const T& a1() const { return g(0, 0); }
  const T& a2() const { return g(1, 1); }
  const T& g12() const { return g(0, 1); }
  const T& g21() const { return g(1, 0); }
};

using ShearState = ShearStateT<double>;
using ShearStateQ = ShearStateT<Rational>;

// Closed-form u(r) g u(-r).
template <class T>
ShearStateT<T> shear(const ShearStateT<T>& s, const T& r);

// Reference route: the literal triple product u(r) * g * u(-r).
template <class T>
ShearStateT<T> shear_direct(const ShearStateT<T>& s, const T& r);

struct KappaResult {
  double kappa;
  double kappa_a;  // |a2 - a1|
  double kappa_u;  // max(|g21|^{1/2}, ||g*1||, ||g2*||)
};

KappaResult kappa(const ShearState& s);

// Conjugation by alpha^{tau (1,-1,0,...)}: g12 -> e^{-2 tau} g12,
// g21 -> e^{2 tau} g21, g1* -> e^{-tau} g1*, g2* -> e^{tau} g2*,
// g*1 -> e^{tau} g*1, g*2 -> e^{-tau} g*2; a-blocks unchanged.
ShearState flow_conjugate_shear(const ShearState& s, double tau);

struct ShearSearch {
  double rho = 0.25;        // cancellation threshold parameter, in (0, 1/2)
  double step = 1.05;       // multiplicative sweep step
  double lo_factor = 0.25;  // sweep starts at lo_factor / kappa
};

struct ShearTimeResult {
  double r;
  double C;          // achieved constant: max(M, 1/M, |g21 r| / delta^{3/8})
  double max_term;   // M(r) = max(|(a2-a1)r - g21 r^2|, ||g2* r||, ||g*1 r||)
  double g21r;       // |g21 r|
  double delta;      // ||g - I||_sup of the input
  bool fallback;     // almost-cancellation fallback taken
};

// Shear time selection: r = kappa^{-1}, the 2 kappa^{-1} fallback on almost
// cancellation, and a multiplicative sweep of [lo/kappa, rho^{-5}/kappa] as
// the last resort. Throws no_shear_error when g lies in L (a2 == a1 and
// g21, g*1, g2* all zero).
ShearTimeResult find_shear_time(const ShearState& s, const ShearSearch& search = {});

struct EntropyData {
  MatD s;       // s_ij in [0,1], zero diagonal
  DiagParam t;

  EntropyData(MatD sv, DiagParam tv);
};

// Sum over ordered pairs of s_ij (t_i - t_j)^+.
double entropy_formula(const EntropyData& data);

}  // namespace latlab

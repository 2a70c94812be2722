#pragma once

#include <utility>
#include <vector>

#include "latlab/matrix.hpp"

namespace latlab {

// Exact univariate polynomial over Q, coefficients ascending. Everything here
// is exact rational arithmetic; results are bit-identical across runs.
class PolyQ {
public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static PolyQ constant(const Rational& x) { return PolyQ({x}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  const Rational& leading() const { return c_.back(); }

  PolyQ derivative() const;
  Rational eval(const Rational& x) const;
  PolyQ monic() const;

  PolyQ operator+(const PolyQ& o) const;
  PolyQ operator-(const PolyQ& o) const;
  PolyQ operator*(const PolyQ& o) const;
  bool operator==(const PolyQ& o) const { return c_ == o.c_; }

  // quotient/remainder; exact over Q
  std::pair<PolyQ, PolyQ> divmod(const PolyQ& d) const;
  PolyQ div_exact(const PolyQ& d) const;  // throws if remainder nonzero

  // matrix evaluation p(A)
  MatQ eval_matrix(const MatQ& a) const;

private:
  void normalize();
  std::vector<Rational> c_;
};

// Monic gcd over Q.
PolyQ poly_gcd(PolyQ a, PolyQ b);

// Yun's square-free decomposition: p ~ prod_i out[i-1]^i (monic factors;
// out[i-1] is the product of the irreducible factors of multiplicity i).
std::vector<PolyQ> squarefree_decomposition(const PolyQ& p);

// Number of distinct real roots of a squarefree polynomial (Sturm chain over
// the whole line).
int count_real_roots(const PolyQ& p);

// Monic characteristic polynomial of an integer matrix (Faddeev-LeVerrier,
// exact integer arithmetic), and the exact determinant.
PolyQ charpoly(const Mat<long long>& a);
BigInt det_exact(const Mat<long long>& a);

}  // namespace latlab

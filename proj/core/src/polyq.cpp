#include "latlab/polyq.hpp"

namespace latlab {

void PolyQ::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return PolyQ();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
  return PolyQ(std::move(d));
}

Rational PolyQ::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> d(c_);
  const Rational lead = c_.back();
  for (auto& x : d) x /= lead;
  return PolyQ(std::move(d));
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
  std::vector<Rational> d(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
  return PolyQ(std::move(d));
}

PolyQ PolyQ::operator-(const PolyQ& o) const {
  std::vector<Rational> d(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] -= o.c_[i];
  return PolyQ(std::move(d));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
  if (is_zero() || o.is_zero()) return PolyQ();
  std::vector<Rational> d(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
  return PolyQ(std::move(d));
}

std::pair<PolyQ, PolyQ> PolyQ::divmod(const PolyQ& d) const {
  if (d.is_zero()) throw contract_error("PolyQ: division by zero polynomial");
  std::vector<Rational> rem(c_);
  std::vector<Rational> quo;
  const int dd = d.degree();
  int rd = static_cast<int>(rem.size()) - 1;
  if (rd < dd) return {PolyQ(), *this};
  quo.assign(static_cast<std::size_t>(rd - dd + 1), Rational(0));
  while (rd >= dd) {
    if (rem[static_cast<std::size_t>(rd)] != 0) {
      const Rational f = rem[static_cast<std::size_t>(rd)] / d.leading();
      quo[static_cast<std::size_t>(rd - dd)] = f;
      for (int i = 0; i <= dd; ++i)
        rem[static_cast<std::size_t>(rd - dd + i)] -= f * d.coeff(i);
    }
    --rd;
  }
  return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

PolyQ PolyQ::div_exact(const PolyQ& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw numeric_error("PolyQ::div_exact: nonzero remainder");
  return q;
}

MatQ PolyQ::eval_matrix(const MatQ& a) const {
  const int n = a.n();
  MatQ r(n);
  if (is_zero()) return r;
  // Horner
  for (int i = 0; i < n; ++i) r(i, i) = c_.back();
  for (int ci = static_cast<int>(c_.size()) - 2; ci >= 0; --ci) {
    r = r * a;
    for (int i = 0; i < n; ++i) r(i, i) += c_[static_cast<std::size_t>(ci)];
  }
  return r;
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

std::vector<PolyQ> squarefree_decomposition(const PolyQ& p) {
  std::vector<PolyQ> out;
  if (p.degree() <= 0) return out;
  const PolyQ pm = p.monic();
  PolyQ g = poly_gcd(pm, pm.derivative());
  if (g.degree() == 0) {
    out.push_back(pm);
    return out;
  }
  PolyQ c = pm.div_exact(g);
  PolyQ d = pm.derivative().div_exact(g) - c.derivative();
  while (c.degree() > 0) {
    PolyQ q = poly_gcd(c, d);
    out.push_back(q.monic());
    c = c.div_exact(q);
    d = d.div_exact(q) - c.derivative();
  }
  return out;
}

namespace {

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int count_real_roots(const PolyQ& p) {
  if (p.degree() <= 0) return 0;
  std::vector<PolyQ> chain{p, p.derivative()};
  while (chain.back().degree() > 0) {
    PolyQ r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;  // p not squarefree; chain of the radical part
    std::vector<Rational> neg;
    for (int i = 0; i <= r.degree(); ++i) neg.push_back(-r.coeff(i));
    chain.push_back(PolyQ(std::move(neg)));
  }
  std::vector<int> at_minus, at_plus;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    const int lead = sign_of(q.leading());
    at_plus.push_back(lead);
    at_minus.push_back(q.degree() % 2 == 0 ? lead : -lead);
  }
  return variations(at_minus) - variations(at_plus);
}

PolyQ charpoly(const Mat<long long>& a) {
  const int k = a.n();
  Mat<BigInt> A(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) A(i, j) = BigInt(static_cast<long>(a(i, j)));
  // Faddeev-LeVerrier: M_{m+1} = A (M_m + c_m I), c_{m+1} = -tr(M_{m+1})/(m+1)
  Mat<BigInt> M = A;
  std::vector<BigInt> c(static_cast<std::size_t>(k) + 1);
  c[0] = 1;
  BigInt tr(0);
  for (int i = 0; i < k; ++i) tr += M(i, i);
  c[1] = -tr;
  for (int m = 1; m < k; ++m) {
    Mat<BigInt> t = M;
    for (int i = 0; i < k; ++i) t(i, i) += c[static_cast<std::size_t>(m)];
    M = A * t;
    tr = 0;
    for (int i = 0; i < k; ++i) tr += M(i, i);
    BigInt cm;
    mpz_divexact_ui(cm.get_mpz_t(), BigInt(-tr).get_mpz_t(), static_cast<unsigned long>(m + 1));
    c[static_cast<std::size_t>(m) + 1] = cm;
  }
  // p(x) = x^k + c_1 x^{k-1} + ... + c_k
  std::vector<Rational> coeffs(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) coeffs[static_cast<std::size_t>(k - i)] = Rational(c[static_cast<std::size_t>(i)]);
  return PolyQ(std::move(coeffs));
}

BigInt det_exact(const Mat<long long>& a) {
  const PolyQ p = charpoly(a);
  // det = (-1)^k * p(0)
  BigInt d(p.coeff(0).get_num());
  if (a.n() % 2 != 0) d = -d;
  return d;
}

}  // namespace latlab

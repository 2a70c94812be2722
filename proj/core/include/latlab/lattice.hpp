#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latlab/matrix.hpp"

namespace latlab {

enum class Norm { Sup, Euclidean };
enum class Mode { Float, Exact };

// Trace-zero parameter of a diagonal flow element diag(e^{t_1},...,e^{t_k}).
struct DiagParam {
  std::vector<double> t;

  DiagParam() = default;
  explicit DiagParam(std::vector<double> v);

  int k() const { return static_cast<int>(t.size()); }
  static DiagParam zero(int k) { return DiagParam(std::vector<double>(k, 0.0)); }
};

DiagParam operator+(const DiagParam& a, const DiagParam& b);
DiagParam operator*(double s, const DiagParam& a);
DiagParam operator-(const DiagParam& a);

// Columns generate the lattice; determinant 1 (to 1e-6 on construction,
// preserved to 1e-9 by the operations that claim it).
class LatticeBasis {
public:
  explicit LatticeBasis(MatD basis);
  explicit LatticeBasis(MatQ basis);

  int k() const;
  Mode mode() const { return std::holds_alternative<MatQ>(m_) ? Mode::Exact : Mode::Float; }
  const MatD& float_basis() const;   // throws if exact
  const MatQ& exact_basis() const;   // throws if float
  MatD as_float() const;             // always available
  double det() const;

private:
  std::variant<MatD, MatQ> m_;
};

struct ShortVectorResult {
  std::vector<long long> coeffs;  // integer coordinates w.r.t. the basis columns
  std::vector<double> image;      // basis * coeffs
  double norm;                    // chosen norm of image
};

// Distance of w to the nearest integer, in [0, 1/2].
double frac_dist(double w);
long double frac_dist_l(long double w);

// Left multiplication by diag(e^{t_i}): scales row i by e^{t_i}.
LatticeBasis apply_diag(const DiagParam& t, const LatticeBasis& b);

// Exact shortest nonzero vector; size reduction followed by coefficient
// enumeration inside a radius derived from the reduced basis. k <= 6.
ShortVectorResult shortest_vector(const LatticeBasis& b, Norm norm = Norm::Sup);

// delta(Lambda): norm of the shortest nonzero vector.
double delta(const LatticeBasis& b, Norm norm = Norm::Sup);

// Mahler compactness test: true iff delta(b) >= rho.
bool mahler_in_K_rho(const LatticeBasis& b, double rho);

// Sup-norm distance max_{i,j}|g_ij - h_ij| (the working metric on G).
double matrix_metric(const MatD& g, const MatD& h);

}  // namespace latlab

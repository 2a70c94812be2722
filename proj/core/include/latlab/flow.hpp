#pragma once

#include <vector>

#include "latlab/lattice.hpp"

namespace latlab {

// A fixed diagonal-flow generator together with the induced splitting of
// matrix positions: (i,j) is expanded when t_i > t_j, contracted when
// t_i < t_j, central when t_i == t_j.
struct FlowSpec {
  DiagParam a;

  explicit FlowSpec(DiagParam generator) : a(std::move(generator)) {}
  int k() const { return a.k(); }
  bool expanded(int i, int j) const { return a.t[i] > a.t[j]; }
  bool contracted(int i, int j) const { return a.t[i] < a.t[j]; }
  bool central(int i, int j) const { return a.t[i] == a.t[j]; }
};

struct CUVFactors {
  MatD c;  // fixed by conjugation
  MatD u;  // expanded part, unipotent
  MatD v;  // contracted part, unipotent
};

// alpha^t g alpha^{-t}: entry (i,j) scales by e^{t_i - t_j}.
MatD conjugate_diag(const DiagParam& t, const MatD& g);

// Unique factorization g = c u v near the identity. Throws
// decomposition_error when a pivot drops below 1e-10.
CUVFactors cuv_decompose(const FlowSpec& spec, const MatD& g);

// ||a^n f a^{-n} - I|| / ||f - I|| for f in U. Throws on f == I.
double expansion_check(const FlowSpec& spec, const MatD& f, int n);

// exp(min positive t_i - t_j): the guaranteed one-step expansion factor.
double expansion_lambda(const FlowSpec& spec);

bool in_unstable(const FlowSpec& spec, const MatD& f);

struct OrbitSample {
  std::vector<double> times;
  double delta;
  bool in_K_rho;
};

struct OrbitTrace {
  std::vector<std::string> time_names;
  std::vector<OrbitSample> samples;
  double rho;
};

struct GridSpec {
  double step = 0.05;
  double extent = 1.0;  // per direction, samples at 0, step, ..., extent
};

// delta along alpha^{s_1 t_1 + ... + s_m t_m} x0 over the full grid, with the
// in-K_rho flag per sample. Samples are emitted in lexicographic grid order.
OrbitTrace orbit_trace_cone(const LatticeBasis& x0, const std::vector<DiagParam>& dirs,
                            const GridSpec& grid, double rho);

}  // namespace latlab

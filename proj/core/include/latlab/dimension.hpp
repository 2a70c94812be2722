#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latlab/lattice.hpp"

namespace latlab {

// Finite point set with the sup metric.
struct PointCloud {
  int dim = 0;
  std::vector<std::vector<double>> pts;

  PointCloud() = default;
  PointCloud(int d, std::vector<std::vector<double>> p) : dim(d), pts(std::move(p)) {
    if (dim < 1) throw contract_error("PointCloud: dim >= 1");
    for (const auto& x : pts)
      if (static_cast<int>(x.size()) != dim) throw contract_error("PointCloud: ragged point");
  }
  std::size_t size() const { return pts.size(); }
};

// Size of the greedy maximal eps-separated subset (input order). Lower-bounds
// the maximum b_eps and upper-bounds b_{2eps}.
long long separated_count(const PointCloud& cloud, double eps);

// Indices chosen by the same greedy pass (for the maximality property).
std::vector<std::size_t> greedy_separated_subset(const PointCloud& cloud, double eps);

std::vector<double> geometric_schedule(double eps0, double ratio, int n);

struct EpsCountRow {
  double eps;
  long long count;
};

struct BoxDimFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  bool quality_warning = false;
  std::vector<EpsCountRow> table;
};

// Least-squares slope of log count against |log eps| over a geometric
// schedule (length >= 4). Residuals above 0.1 set the quality warning.
BoxDimFit box_dim_estimate(const PointCloud& cloud, const std::vector<double>& eps_schedule);

struct HausdorffNote {
  double bound;
  std::string note;
};

// Box-dimension estimates upper-bound Hausdorff dimension.
HausdorffNote hausdorff_note(double slope);

// Dynamics on points: nullopt signals escape from the sampled region.
struct DynSystem {
  std::function<std::optional<std::vector<double>>(const std::vector<double>&)> step;
};

struct EntropyRateRow {
  int n;
  double eps;
  long long count;
  double rate;      // (1/n) log count
  long long escaped;  // orbits lost before step n
};

struct TopEntropyResult {
  double rate = 0.0;        // (1/N) log s_{N,eps}
  double slope_over_n = 0.0;  // LSQ slope of log s_{n,eps} against n
  std::vector<EntropyRateRow> table;
};

// Greedy (n,eps)-separated counts under the Bowen metric
// max_{0<=m<n} d(T^m x, T^m y), for n = 1..N.
TopEntropyResult top_entropy_estimate(const DynSystem& dyn, const PointCloud& seeds, int N,
                                      double eps);

// ---------------------------------------------------------------------------
// Survivor scan for bounded A^+ tau-orbits.
// ---------------------------------------------------------------------------

struct TransversalScanResult {
  std::vector<std::pair<double, double>> survivors;
  bool has_fit = false;
  BoxDimFit fit;
  int grid = 0;
  double rho = 0.0, T = 0.0, step = 0.0;
};

// Keeps the (u,v) grid points whose sampled A^+ orbit up to parameter T stays
// in K_rho, then fits the survivor box dimension. The grid is offset by the
// golden ratio so samples behave like generic irrationals.
TransversalScanResult transversal_bad_scan(double rho, double T, int grid, double step = 0.05,
                                           int threads = 1,
                                           const std::vector<double>& eps_schedule = {});

// Single-sample version of the survivor test: is delta(alpha^{(-r-s,r,s)}
// tau_{u,v}) >= rho? Uses the component closed form (minimizing over m1, m2
// exactly); property-tested against shortest_vector.
bool tau_orbit_in_K(double u, double v, double r, double s, double rho);

}  // namespace latlab

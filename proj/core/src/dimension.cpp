#include "latlab/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

namespace latlab {

namespace {

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// Greedy selection with a uniform bucket index (cell size eps); identical
// output to the quadratic greedy, input order preserved.
std::vector<std::size_t> greedy_impl(const PointCloud& cloud, double eps) {
  std::vector<std::size_t> selected;
  if (cloud.pts.empty()) return selected;
  const int d = cloud.dim;
  if (d > 3) {
    for (std::size_t i = 0; i < cloud.pts.size(); ++i) {
      bool ok = true;
      for (std::size_t j : selected)
        if (sup_dist(cloud.pts[i], cloud.pts[j]) < eps) {
          ok = false;
          break;
        }
      if (ok) selected.push_back(i);
    }
    return selected;
  }

  auto cell_key = [&](const std::vector<double>& p) {
    std::uint64_t key = 1469598103934665603ULL;
    for (int c = 0; c < d; ++c) {
      const auto v = static_cast<std::int64_t>(std::floor(p[c] / eps));
      key ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (key << 6) + (key >> 2);
    }
    return key;
  };
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::vector<std::int64_t> base(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < cloud.pts.size(); ++i) {
    const auto& p = cloud.pts[i];
    for (int c = 0; c < d; ++c) base[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(std::floor(p[c] / eps));
    bool ok = true;
    std::vector<double> probe(static_cast<std::size_t>(d));
    const int span = 1;
    std::vector<int> off(static_cast<std::size_t>(d), -span);
    while (ok) {
      for (int c = 0; c < d; ++c)
        probe[static_cast<std::size_t>(c)] =
            (static_cast<double>(base[static_cast<std::size_t>(c)] + off[static_cast<std::size_t>(c)]) + 0.5) * eps;
      const auto it = buckets.find(cell_key(probe));
      if (it != buckets.end()) {
        for (std::size_t j : it->second)
          if (sup_dist(p, cloud.pts[j]) < eps) {
            ok = false;
            break;
          }
      }
      int c = d - 1;
      while (c >= 0 && ++off[static_cast<std::size_t>(c)] > span) {
        off[static_cast<std::size_t>(c)] = -span;
        --c;
      }
      if (c < 0) break;
    }
    if (ok) {
      selected.push_back(i);
      buckets[cell_key(p)].push_back(i);
    }
  }
  return selected;
}

}  // namespace

std::vector<std::size_t> greedy_separated_subset(const PointCloud& cloud, double eps) {
  if (!(eps > 0.0)) throw contract_error("separated_count: eps > 0");
  return greedy_impl(cloud, eps);
}

long long separated_count(const PointCloud& cloud, double eps) {
  return static_cast<long long>(greedy_separated_subset(cloud, eps).size());
}

std::vector<double> geometric_schedule(double eps0, double ratio, int n) {
  if (!(eps0 > 0.0) || !(ratio > 0.0) || ratio >= 1.0 || n < 1)
    throw contract_error("geometric_schedule: need eps0 > 0, ratio in (0,1), n >= 1");
  std::vector<double> s(static_cast<std::size_t>(n));
  double e = eps0;
  for (int i = 0; i < n; ++i) {
    s[static_cast<std::size_t>(i)] = e;
    e *= ratio;
  }
  return s;
}

BoxDimFit box_dim_estimate(const PointCloud& cloud, const std::vector<double>& eps_schedule) {
  if (cloud.pts.empty()) throw contract_error("box_dim_estimate: empty cloud");
  const int n = static_cast<int>(eps_schedule.size());
  if (n < 4) throw contract_error("box_dim_estimate: schedule length >= 4");
  for (int i = 0; i + 1 < n; ++i) {
    const double r = eps_schedule[static_cast<std::size_t>(i + 1)] / eps_schedule[static_cast<std::size_t>(i)];
    const double r0 = eps_schedule[1] / eps_schedule[0];
    if (!(r > 0.0) || r >= 1.0 || std::fabs(r - r0) > 1e-9 * r0)
      throw contract_error("box_dim_estimate: schedule must be geometric and decreasing");
  }

  BoxDimFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double eps = eps_schedule[static_cast<std::size_t>(i)];
    const long long c = separated_count(cloud, eps);
    fit.table.push_back({eps, c});
    const double x = std::fabs(std::log(eps));
    const double y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw contract_error("box_dim_estimate: degenerate schedule");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& row : fit.table) {
    const double x = std::fabs(std::log(row.eps));
    const double pred = fit.slope * x + fit.intercept;
    fit.max_residual =
        std::max(fit.max_residual, std::fabs(std::log(static_cast<double>(row.count)) - pred));
  }
  fit.quality_warning = fit.max_residual > 0.1;
  return fit;
}

HausdorffNote hausdorff_note(double slope) {
  HausdorffNote h;
  h.bound = std::max(0.0, slope);
  h.note = "upper bound for the Hausdorff dimension (box-dimension estimate dominates it)";
  return h;
}

TopEntropyResult top_entropy_estimate(const DynSystem& dyn, const PointCloud& seeds, int N,
                                      double eps) {
  if (N < 2) throw contract_error("top_entropy_estimate: N >= 2");
  if (!(eps > 0.0)) throw contract_error("top_entropy_estimate: eps > 0");
  if (seeds.pts.empty()) throw contract_error("top_entropy_estimate: empty seed cloud");

  // precompute orbits; shorter rows mean the orbit escaped
  std::vector<std::vector<std::vector<double>>> orbit(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    orbit[i].push_back(seeds.pts[i]);
    for (int m = 1; m < N; ++m) {
      auto nxt = dyn.step(orbit[i].back());
      if (!nxt) break;
      orbit[i].push_back(std::move(*nxt));
    }
  }

  auto bowen_far = [&](std::size_t i, std::size_t j, int n) {
    for (int m = 0; m < n; ++m)
      if (sup_dist(orbit[i][static_cast<std::size_t>(m)], orbit[j][static_cast<std::size_t>(m)]) >= eps)
        return true;
    return false;
  };

  TopEntropyResult res;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int fitted = 0;
  for (int n = 1; n <= N; ++n) {
    std::vector<std::size_t> sel;
    long long escaped = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (static_cast<int>(orbit[i].size()) < n) {
        ++escaped;
        continue;
      }
      bool ok = true;
      for (std::size_t j : sel)
        if (!bowen_far(i, j, n)) {
          ok = false;
          break;
        }
      if (ok) sel.push_back(i);
    }
    const auto count = static_cast<long long>(sel.size());
    // every orbit gone: nothing left to separate, rate reported as 0
    const double logc = count > 0 ? std::log(static_cast<double>(count)) : 0.0;
    res.table.push_back({n, eps, count, logc / n, escaped});
    sx += n;
    sy += logc;
    sxx += static_cast<double>(n) * n;
    sxy += n * logc;
    ++fitted;
  }
  res.rate = res.table.back().rate;
  const double denom = fitted * sxx - sx * sx;
  res.slope_over_n = denom != 0.0 ? (fitted * sxy - sx * sy) / denom : 0.0;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kGoldenOffset = 0.61803398874989484820;

// Kill test against the sampled (r,s) grid {0, h, ..., Mh}^2: some n >= 1
// needs <nu> e^r < rho, <nv> e^s < rho and n e^{-r-s} < rho simultaneously at
// a grid point. For fixed n the admissible region is down-closed in (r, s)
// against an r+s threshold, so only the extreme grid corner matters.
struct TauKillCandidate {
  long long n;
  int imax;          // largest admissible r index for the <nu> constraint
  double depth_rhs;  // ln(n / rho): required (i + j) h
};

// The <nu> filter does not depend on v, so a row of the scan shares it.
std::vector<TauKillCandidate> tau_kill_candidates(long double u, double rho, double T,
                                                  double h) {
  const int M = static_cast<int>(std::floor(T / h + 1e-9));
  const long long nmax = static_cast<long long>(std::floor(rho * std::exp(2.0 * (M * h))));
  const double lr = std::log(rho);
  std::vector<TauKillCandidate> out;
  for (long long n = 1; n <= nmax; ++n) {
    const double du = static_cast<double>(frac_dist_l(static_cast<long double>(n) * u));
    if (du >= rho) continue;
    const int imax =
        du == 0.0 ? M : std::min(M, static_cast<int>(std::ceil((lr - std::log(du)) / h)) - 1);
    if (imax < 0) continue;
    const double rhs = std::log(static_cast<double>(n) / rho);
    if (static_cast<double>(imax + M) * h <= rhs) continue;  // unkillable even at jmax = M
    out.push_back({n, imax, rhs});
  }
  return out;
}

bool survives_tau_row(const std::vector<TauKillCandidate>& cands, long double v, double rho,
                      double T, double h) {
  const int M = static_cast<int>(std::floor(T / h + 1e-9));
  const double lr = std::log(rho);
  for (const auto& c : cands) {
    const double dv = static_cast<double>(frac_dist_l(static_cast<long double>(c.n) * v));
    if (dv >= rho) continue;
    const int jmax =
        dv == 0.0 ? M : std::min(M, static_cast<int>(std::ceil((lr - std::log(dv)) / h)) - 1);
    if (jmax < 0) continue;
    if (static_cast<double>(c.imax + jmax) * h > c.depth_rhs) return false;
  }
  return true;
}

}  // namespace

bool tau_orbit_in_K(double u, double v, double r, double s, double rho) {
  if (!(rho > 0.0)) throw contract_error("tau_orbit_in_K: rho > 0");
  if (r < 0.0 || s < 0.0) throw contract_error("tau_orbit_in_K: r, s >= 0");
  if (rho > 1.0) return false;  // Minkowski: delta_sup <= det^{1/3} = 1 always
  const long long nmax = static_cast<long long>(std::floor(rho * std::exp(r + s)));
  const double lwu = rho * std::exp(-r), lwv = rho * std::exp(-s);
  for (long long n = 1; n <= nmax; ++n) {
    const long double nl = static_cast<long double>(n);
    if (static_cast<double>(frac_dist_l(nl * static_cast<long double>(u))) < lwu &&
        static_cast<double>(frac_dist_l(nl * static_cast<long double>(v))) < lwv)
      return false;
  }
  return true;
}

TransversalScanResult transversal_bad_scan(double rho, double T, int grid, double step,
                                           int threads, const std::vector<double>& eps_schedule) {
  if (!(rho > 0.0)) throw contract_error("transversal_bad_scan: rho > 0");
  if (!(T >= 0.0)) throw contract_error("transversal_bad_scan: T >= 0");
  if (grid < 2) throw contract_error("transversal_bad_scan: grid >= 2");
  if (!(step > 0.0)) throw contract_error("transversal_bad_scan: step > 0");
  threads = std::clamp(threads, 1, 64);

  TransversalScanResult res;
  res.grid = grid;
  res.rho = rho;
  res.T = T;
  res.step = step;

  if (rho > 1.0) {
    // delta(tau_{u,v}) <= 1 already at the identity time
    return res;
  }

  std::vector<std::vector<std::pair<double, double>>> parts(static_cast<std::size_t>(threads));
  auto worker = [&](int tid) {
    auto& out = parts[static_cast<std::size_t>(tid)];
    const int lo = grid * tid / threads;
    const int hi = grid * (tid + 1) / threads;
    for (int a = lo; a < hi; ++a) {
      const long double u = (static_cast<long double>(a) + kGoldenOffset) / grid;
      const auto cands = tau_kill_candidates(u, rho, T, step);
      for (int b = 0; b < grid; ++b) {
        const long double v = (static_cast<long double>(b) + kGoldenOffset) / grid;
        if (survives_tau_row(cands, v, rho, T, step))
          out.emplace_back(static_cast<double>(u), static_cast<double>(v));
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  for (const auto& p : parts) res.survivors.insert(res.survivors.end(), p.begin(), p.end());

  if (res.survivors.size() >= 2) {
    std::vector<std::vector<double>> pts;
    pts.reserve(res.survivors.size());
    for (const auto& [u, v] : res.survivors) pts.push_back({u, v});
    const auto sched = eps_schedule.empty() ? geometric_schedule(0.25, 0.5, 7) : eps_schedule;
    res.fit = box_dim_estimate(PointCloud(2, std::move(pts)), sched);
    res.has_fit = true;
  }
  return res;
}

}  // namespace latlab

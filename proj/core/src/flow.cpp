#include "latlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latlab {

MatD conjugate_diag(const DiagParam& t, const MatD& g) {
  if (t.k() != g.n()) throw contract_error("conjugate_diag: dimension mismatch");
  MatD r(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) r(i, j) = std::exp(t.t[i] - t.t[j]) * g(i, j);
  return r;
}

namespace {

// Group indices by equal t, ordered by t descending. In that frame U is
// strictly block-upper, V strictly block-lower, C block-diagonal.
struct SortedFrame {
  std::vector<int> perm;            // perm[p] = original index at sorted slot p
  std::vector<std::pair<int, int>> blocks;  // [begin, end) in sorted slots
};

SortedFrame sorted_frame(const FlowSpec& spec) {
  const int k = spec.k();
  SortedFrame f;
  f.perm.resize(k);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  std::stable_sort(f.perm.begin(), f.perm.end(),
                   [&](int a, int b) { return spec.a.t[a] > spec.a.t[b]; });
  int start = 0;
  for (int p = 1; p <= k; ++p) {
    if (p == k || spec.a.t[f.perm[p]] != spec.a.t[f.perm[start]]) {
      f.blocks.emplace_back(start, p);
      start = p;
    }
  }
  return f;
}

MatD permute(const MatD& g, const std::vector<int>& perm) {
  MatD r(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) r(i, j) = g(perm[i], perm[j]);
  return r;
}

MatD unpermute(const MatD& g, const std::vector<int>& perm) {
  MatD r(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) r(perm[i], perm[j]) = g(i, j);
  return r;
}

}  // namespace

CUVFactors cuv_decompose(const FlowSpec& spec, const MatD& g) {
  const int k = spec.k();
  if (g.n() != k) throw contract_error("cuv_decompose: dimension mismatch");
  const SortedFrame frame = sorted_frame(spec);
  const MatD gs = permute(g, frame.perm);
  const int m = static_cast<int>(frame.blocks.size());

  // Solve gs = H * v with H block-upper and v unit block-lower, processing
  // block rows bottom-up: H entries right of the diagonal first, then the v
  // entries of the same block row.
  MatD H(k), v = MatD::identity(k);
  auto blk = [&](int b) { return frame.blocks[b]; };
  for (int bi = m - 1; bi >= 0; --bi) {
    const auto [i0, i1] = blk(bi);
    for (int bj = m - 1; bj >= bi; --bj) {
      const auto [j0, j1] = blk(bj);
      for (int r = i0; r < i1; ++r)
        for (int c = j0; c < j1; ++c) {
          double s = gs(r, c);
          for (int bl = bj + 1; bl < m; ++bl) {
            const auto [l0, l1] = blk(bl);
            for (int l = l0; l < l1; ++l) s -= H(r, l) * v(l, c);
          }
          H(r, c) = s;
        }
    }
    // pivot block H_{bi,bi}
    MatD piv(i1 - i0);
    for (int r = i0; r < i1; ++r)
      for (int c = i0; c < i1; ++c) piv(r - i0, c - i0) = H(r, c);
    for (int bj = bi - 1; bj >= 0; --bj) {
      const auto [j0, j1] = blk(bj);
      for (int c = j0; c < j1; ++c) {
        std::vector<double> rhs(i1 - i0);
        for (int r = i0; r < i1; ++r) {
          double s = gs(r, c);
          for (int bl = bi + 1; bl < m; ++bl) {
            const auto [l0, l1] = blk(bl);
            for (int l = l0; l < l1; ++l) s -= H(r, l) * v(l, c);
          }
          rhs[r - i0] = s;
        }
        std::vector<double> sol;
        try {
          sol = solve_small(piv, rhs, 1e-10);
        } catch (const decomposition_error&) {
          throw decomposition_error("cuv_decompose: pivot below 1e-10 (outside U0)");
        }
        for (int r = i0; r < i1; ++r) v(r, c) = sol[r - i0];
      }
    }
  }

  // Split H = C * U with C block-diagonal, U unit block-upper.
  MatD C(k), U = MatD::identity(k);
  for (int bi = 0; bi < m; ++bi) {
    const auto [i0, i1] = blk(bi);
    MatD piv(i1 - i0);
    for (int r = i0; r < i1; ++r)
      for (int c = i0; c < i1; ++c) {
        C(r, c) = H(r, c);
        piv(r - i0, c - i0) = H(r, c);
      }
    for (int bj = bi + 1; bj < m; ++bj) {
      const auto [j0, j1] = blk(bj);
      for (int c = j0; c < j1; ++c) {
        std::vector<double> rhs(i1 - i0);
        for (int r = i0; r < i1; ++r) rhs[r - i0] = H(r, c);
        std::vector<double> sol;
        try {
          sol = solve_small(piv, rhs, 1e-10);
        } catch (const decomposition_error&) {
          throw decomposition_error("cuv_decompose: pivot below 1e-10 (outside U0)");
        }
        for (int r = i0; r < i1; ++r) U(r, c) = sol[r - i0];
      }
    }
  }

  CUVFactors out;
  out.c = unpermute(C, frame.perm);
  out.u = unpermute(U, frame.perm);
  out.v = unpermute(v, frame.perm);
  return out;
}

bool in_unstable(const FlowSpec& spec, const MatD& f) {
  const int k = spec.k();
  if (f.n() != k) return false;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      if (!spec.expanded(i, j) && f(i, j) != want) return false;
    }
  return true;
}

double expansion_check(const FlowSpec& spec, const MatD& f, int n) {
  if (n < 0) throw contract_error("expansion_check: n >= 0");
  if (!in_unstable(spec, f)) throw contract_error("expansion_check: f not in U for this flow");
  const MatD id = MatD::identity(f.n());
  const double base = (f - id).sup_norm();
  if (base == 0.0) throw contract_error("expansion_check: f == I, ratio undefined");
  const MatD fn = conjugate_diag(static_cast<double>(n) * spec.a, f);
  return (fn - id).sup_norm() / base;
}

double expansion_lambda(const FlowSpec& spec) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.k(); ++i)
    for (int j = 0; j < spec.k(); ++j)
      if (spec.expanded(i, j)) gap = std::min(gap, spec.a.t[i] - spec.a.t[j]);
  if (!std::isfinite(gap)) throw contract_error("expansion_lambda: flow has no expanded pair");
  return std::exp(gap);
}

namespace {

bool independent_directions(const std::vector<DiagParam>& dirs, int k) {
  const int m = static_cast<int>(dirs.size());
  if (m > k - 1) return false;  // Sigma has dimension k - 1
  MatD rows(k);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < k; ++j) rows(i, j) = dirs[static_cast<std::size_t>(i)].t[static_cast<std::size_t>(j)];
  // rank via elimination on the first m rows
  int rank = 0;
  for (int c = 0; c < k && rank < m; ++c) {
    int piv = -1;
    double best = 1e-12;
    for (int r = rank; r < m; ++r)
      if (std::fabs(rows(r, c)) > best) {
        best = std::fabs(rows(r, c));
        piv = r;
      }
    if (piv < 0) continue;
    for (int j = 0; j < k; ++j) std::swap(rows(piv, j), rows(rank, j));
    for (int r = rank + 1; r < m; ++r) {
      const double f = rows(r, c) / rows(rank, c);
      for (int j = c; j < k; ++j) rows(r, j) -= f * rows(rank, j);
    }
    ++rank;
  }
  return rank == m;
}

}  // namespace

OrbitTrace orbit_trace_cone(const LatticeBasis& x0, const std::vector<DiagParam>& dirs,
                            const GridSpec& grid, double rho) {
  if (dirs.empty()) throw contract_error("orbit_trace_cone: need at least one direction");
  if (!(grid.step > 0.0) || !(grid.extent >= 0.0))
    throw contract_error("orbit_trace_cone: bad grid");
  const int m = static_cast<int>(dirs.size());
  for (const auto& d : dirs)
    if (d.k() != x0.k()) throw contract_error("orbit_trace_cone: direction dimension mismatch");
  if (!independent_directions(dirs, x0.k()))
    throw contract_error("orbit_trace_cone: cone directions must be linearly independent");

  const int steps = static_cast<int>(std::floor(grid.extent / grid.step + 1e-9)) + 1;
  OrbitTrace tr;
  tr.rho = rho;
  for (int a = 0; a < m; ++a) tr.time_names.push_back("time_" + std::to_string(a + 1));

  std::vector<int> idx(m, 0);
  const MatD base = x0.as_float();
  while (true) {
    std::vector<double> times(m);
    DiagParam t = DiagParam::zero(x0.k());
    for (int a = 0; a < m; ++a) {
      times[a] = idx[a] * grid.step;
      t = t + times[a] * dirs[a];
    }
    MatD g = base;
    for (int i = 0; i < g.n(); ++i) {
      const double s = std::exp(t.t[i]);
      for (int j = 0; j < g.n(); ++j) g(i, j) *= s;
    }
    const double d = delta(LatticeBasis(g));
    tr.samples.push_back({times, d, d >= rho});

    int a = m - 1;
    while (a >= 0 && ++idx[a] >= steps) {
      idx[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return tr;
}

}  // namespace latlab

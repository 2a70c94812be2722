// latlab command line: scans, orbit traces, shear demos and estimators with
// reproducible outputs. Exit codes: 0 ok, 2 contract error, 3 numeric error,
// 64 usage.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "latlab/csv.hpp"
#include "latlab/dimension.hpp"
#include "latlab/expr.hpp"
#include "latlab/flow.hpp"
#include "latlab/forms.hpp"
#include "latlab/littlewood.hpp"
#include "latlab/manifest.hpp"
#include "latlab/rigidity.hpp"
#include "latlab/rng.hpp"
#include "latlab/serialize.hpp"

using json = nlohmann::json;
using namespace latlab;

namespace {

int default_threads() {
  if (const char* env = std::getenv("LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(parse_real_expr(cur).d());
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(parse_real_expr(cur).d());
  return out;
}

TargetPair make_pair(const std::string& u_expr, const std::string& v_expr) {
  const ParsedReal u = parse_real_expr(u_expr);
  const ParsedReal v = parse_real_expr(v_expr);
  if (u.exact && v.exact) return TargetPair::exact(*u.exact, *v.exact);
  TargetPair p(u.value, v.value);
  if (u.exact) p.uq = u.exact;
  if (v.exact) p.vq = v.exact;
  return p;
}

struct ManifestSink {
  RunManifest m;
  std::string path;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void finish() {
    if (path.empty()) return;
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(path, m.to_json());
  }
};

// ---- littlewood ----

int cmd_littlewood_scan(const std::string& u, const std::string& v, long long N,
                        const std::string& out, ManifestSink& sink) {
  const TargetPair pair = make_pair(u, v);
  const ScanResult res = littlewood_scan(pair, N);
  std::cout << "min product " << res.min_product << " at n = " << res.argmin << " ("
            << res.records.size() << " records)\n";
  if (!out.empty()) {
    CsvWriter csv({"n", "du", "dv", "product", "is_record"});
    for (const auto& r : res.records)
      csv.add_row({CsvWriter::num(r.n), CsvWriter::num(r.du), CsvWriter::num(r.dv),
                   CsvWriter::num(r.product), CsvWriter::flag(r.is_record)});
    write_file(out, csv.str());
  }
  sink.m.derived["min_product"] = CsvWriter::num(res.min_product);
  sink.m.derived["argmin"] = std::to_string(res.argmin);
  return 0;
}

int cmd_littlewood_roundtrip(const std::string& u, const std::string& v, double eps,
                             double extent, double step, double rmax, const std::string& out,
                             ManifestSink& sink) {
  const TargetPair pair = make_pair(u, v);
  json j;
  j["u"] = static_cast<double>(pair.u);
  j["v"] = static_cast<double>(pair.v);
  j["eps"] = eps;
  j["c_direction_A"] = 1.0;
  json hits = json::array();
  int checked = 0;
  for (double r = 0.0; r <= extent + 1e-12; r += step)
    for (double s = 0.0; s <= extent + 1e-12; s += step) {
      ++checked;
      const auto w = orbit_to_witness(pair, r, s, eps);
      if (!w) continue;
      json h;
      h["r"] = r;
      h["s"] = s;
      h["n"] = w->n;
      h["m1"] = w->m1;
      h["m2"] = w->m2;
      h["product"] = w->product;
      h["product_lt_eps3"] = w->product < eps * eps * eps;
      if (w->product < std::pow(eps, 5)) {
        const Witness fixed = dirichlet_fix(pair, *w, eps);
        const OrbitPlacement back = witness_to_orbit(pair, fixed, eps, rmax);
        h["back_r"] = back.r;
        h["back_s"] = back.s;
        h["back_delta"] = back.delta_value;
        h["back_delta_lt_eps"] = back.delta_value < eps;
        h["c_direction_B"] = back.c_constant;
        sink.m.derived["c_direction_B"] = CsvWriter::num(back.c_constant);
        sink.m.derived["strictness_margin"] = CsvWriter::num(back.strictness_margin);
      }
      hits.push_back(h);
    }
  j["grid_points"] = checked;
  j["witnesses"] = hits;
  std::cout << "grid points " << checked << ", witnesses " << hits.size() << "\n";
  if (!out.empty()) write_file(out, j.dump(2));
  sink.m.derived["c_direction_A"] = "1";
  return 0;
}

// ---- orbit trace ----

int cmd_orbit_trace(const std::string& basis_path, std::vector<std::string> dir_flags,
                    double step, double extent, double rho, const std::string& out,
                    ManifestSink& sink) {
  LatticeBasis x0 = basis_path.empty() ? LatticeBasis(MatD::identity(3))
                                       : lattice_from_json(read_file(basis_path));
  std::vector<DiagParam> dirs;
  if (dir_flags.empty()) {
    if (x0.k() != 3)
      throw contract_error("orbit trace: default directions are for k = 3; pass --dir");
    dirs.push_back(DiagParam({-1.0, 1.0, 0.0}));
    dirs.push_back(DiagParam({-1.0, 0.0, 1.0}));
  } else {
    for (const auto& d : dir_flags) dirs.push_back(DiagParam(parse_vector(d)));
  }
  const OrbitTrace tr = orbit_trace_cone(x0, dirs, GridSpec{step, extent}, rho);
  long long inside = 0;
  for (const auto& s : tr.samples) inside += s.in_K_rho ? 1 : 0;
  std::cout << tr.samples.size() << " samples, " << inside << " in K_rho\n";
  if (!out.empty()) {
    std::vector<std::string> header = tr.time_names;
    header.push_back("delta");
    header.push_back("in_K_rho");
    CsvWriter csv(header);
    for (const auto& s : tr.samples) {
      std::vector<std::string> row;
      for (double t : s.times) row.push_back(CsvWriter::num(t));
      row.push_back(CsvWriter::num(s.delta));
      row.push_back(CsvWriter::flag(s.in_K_rho));
      csv.add_row(row);
    }
    write_file(out, csv.str());
  }
  try {
    sink.m.derived["lambda"] = CsvWriter::num(expansion_lambda(FlowSpec(dirs[0])));
  } catch (const contract_error&) {
    // direction with no expanded pair: no lambda to report
  }
  sink.m.derived["in_K_rho"] = std::to_string(inside);
  return 0;
}

// ---- forms ----

int cmd_forms_scan(const std::string& matrix_path, long long N, const std::string& out,
                   ManifestSink& sink) {
  const FormsMatrix m(matrix_from_json(read_file(matrix_path)));
  const FormsScanResult res = forms_min_scan(m, N);
  json j;
  j["min"] = res.min_abs;
  j["argmin"] = res.argmin;
  j["evaluations"] = res.evaluations;
  j["exact_zero"] = res.exact_zero;
  std::cout << "min |f_m| = " << res.min_abs << " over " << res.evaluations << " evaluations\n";
  if (!out.empty()) write_file(out, j.dump(2));
  sink.m.derived["min"] = CsvWriter::num(res.min_abs);
  return 0;
}

// ---- shear ----

int cmd_shear_demo(const std::string& g_path, double r, const std::string& out,
                   ManifestSink& sink) {
  MatD g(3);
  if (g_path.empty()) {
    g = MatD::identity(3);
    g(0, 0) = 1.01;
    g(1, 1) = 1.0 / 1.01;
    g(0, 1) = 0.003;
    g(1, 0) = 0.002;
    g(2, 0) = 0.001;
    g(1, 2) = -0.004;
    const double corr = std::pow(g.det(), -1.0 / 3.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) *= corr;
  } else {
    g = matrix_from_json(read_file(g_path));
  }
  const ShearState s(g);
  const ShearState closed = shear(s, r);
  const ShearState direct = shear_direct(s, r);
  const double diff = (closed.g - direct.g).sup_norm();
  const KappaResult kp = kappa(s);
  json j;
  j["r"] = r;
  j["closed_vs_direct_sup_diff"] = diff;
  j["kappa"] = kp.kappa;
  j["kappa_a"] = kp.kappa_a;
  j["kappa_u"] = kp.kappa_u;
  json rows = json::array();
  for (int i = 0; i < closed.g.n(); ++i) {
    json row = json::array();
    for (int c = 0; c < closed.g.n(); ++c) row.push_back(closed.g(i, c));
    rows.push_back(row);
  }
  j["sheared"] = rows;
  std::cout << "closed-form vs direct product sup diff = " << diff << "\n";
  if (!out.empty()) write_file(out, j.dump(2));
  sink.m.derived["closed_vs_direct_sup_diff"] = CsvWriter::num(diff);
  return 0;
}

// ---- exceptional returns ----

int cmd_exceptional_scan(int k, int bound, int threads, const std::string& out,
                         ManifestSink& sink) {
  const ExceptionalScanResult res = exceptional_scan(k, bound, threads);
  json j;
  j["k"] = k;
  j["entry_bound"] = bound;
  j["candidates"] = res.candidates;
  j["unimodular"] = res.unimodular;
  j["hits"] = res.hits;
  json ex = json::array();
  for (const auto& m : res.examples) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
      json row = json::array();
      for (int c = 0; c < m.n(); ++c) row.push_back(m(i, c));
      rows.push_back(row);
    }
    ex.push_back(rows);
  }
  j["examples"] = ex;
  std::cout << "candidates " << res.candidates << ", unimodular " << res.unimodular
            << ", hits " << res.hits << "\n";
  if (!out.empty()) write_file(out, j.dump(2));
  sink.m.derived["hits"] = std::to_string(res.hits);
  return 0;
}

// ---- eigenvalue lemma ----

int cmd_eig_lemma(int m, int trials, double radius, std::uint64_t seed, const std::string& out,
                  ManifestSink& sink) {
  Rng rng(seed);
  int ok_count = 0;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> lambda(static_cast<std::size_t>(m));
    double base = rng.uniform(-1.0, 1.0);
    lambda[static_cast<std::size_t>(m) - 1] = base;
    for (int i = m - 2; i >= 0; --i)
      lambda[static_cast<std::size_t>(i)] =
          lambda[static_cast<std::size_t>(i) + 1] + rng.uniform(1.05, 2.0);
    MatD h = MatD::identity(m);
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < m; ++c) h(i, c) += radius * 0.9 * rng.uniform(-1.0, 1.0);
    const double d = h.det();
    const double corr = std::pow(std::fabs(d), -1.0 / m);
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < m; ++c) h(i, c) *= corr;
    const auto res = perturbed_eigs_check(lambda, h);
    if (res.ok) ++ok_count;
    worst = std::max(worst, res.max_dev);
  }
  json j;
  j["m"] = m;
  j["trials"] = trials;
  j["radius"] = radius;
  j["ok"] = ok_count;
  j["max_observed_deviation"] = worst;
  std::cout << ok_count << "/" << trials << " trials ok, max |lambda' - lambda| = " << worst
            << "\n";
  if (!out.empty()) write_file(out, j.dump(2));
  sink.m.derived["ok"] = std::to_string(ok_count);
  sink.m.derived["max_observed_deviation"] = CsvWriter::num(worst);
  return 0;
}

// ---- dimension / entropy ----

PointCloud cantor_endpoints(int level) {
  std::vector<std::pair<double, double>> segs{{0.0, 1.0}};
  for (int l = 0; l < level; ++l) {
    std::vector<std::pair<double, double>> next;
    next.reserve(segs.size() * 2);
    for (const auto& [a, b] : segs) {
      const double third = (b - a) / 3.0;
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    segs = std::move(next);
  }
  std::vector<std::vector<double>> pts;
  pts.reserve(segs.size() * 2);
  for (const auto& [a, b] : segs) {
    pts.push_back({a});
    pts.push_back({b});
  }
  return PointCloud(1, std::move(pts));
}

PointCloud unit_grid(int m) {
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) pts.push_back({static_cast<double>(i) / m});
  return PointCloud(1, std::move(pts));
}

PointCloud cloud_from_csv(const std::string& path) {
  const std::string body = read_file(path);
  std::vector<std::vector<double>> pts;
  std::string line;
  std::size_t i = 0;
  bool first = true;
  int dim = 0;
  while (i <= body.size()) {
    if (i == body.size() || body[i] == '\n') {
      if (!line.empty()) {
        std::vector<double> row;
        std::string cell;
        bool numeric = true;
        auto flush = [&]() {
          try {
            row.push_back(std::stod(cell));
          } catch (...) {
            numeric = false;
          }
          cell.clear();
        };
        for (char c : line) {
          if (c == ',')
            flush();
          else
            cell += c;
        }
        flush();
        if (numeric && !row.empty()) {
          if (dim == 0) dim = static_cast<int>(row.size());
          pts.push_back(std::move(row));
        } else if (!first) {
          throw contract_error("points file: non-numeric row beyond the header");
        }
        first = false;
      }
      line.clear();
      ++i;
    } else {
      line += body[i++];
    }
  }
  if (pts.empty()) throw contract_error("points file: no points");
  return PointCloud(dim, std::move(pts));
}

int cmd_dim_estimate(int cantor_level, int grid_m, const std::string& points, double eps0,
                     double ratio, int num, const std::string& out, ManifestSink& sink) {
  PointCloud cloud;
  if (cantor_level > 0)
    cloud = cantor_endpoints(cantor_level);
  else if (grid_m > 0)
    cloud = unit_grid(grid_m);
  else if (!points.empty())
    cloud = cloud_from_csv(points);
  else
    throw contract_error("dim estimate: pass one of --cantor, --grid, --points");
  const BoxDimFit fit = box_dim_estimate(cloud, geometric_schedule(eps0, ratio, num));
  const HausdorffNote note = hausdorff_note(fit.slope);
  std::cout << "slope " << fit.slope << " (max residual " << fit.max_residual << ")"
            << (fit.quality_warning ? " [quality warning]" : "") << "\n";
  std::cout << "dim_H <= " << note.bound << ": " << note.note << "\n";
  if (!out.empty()) {
    CsvWriter csv({"epsilon", "count"});
    for (const auto& row : fit.table)
      csv.add_row({CsvWriter::num(row.eps), CsvWriter::num(row.count)});
    write_file(out, csv.str());
  }
  sink.m.derived["slope"] = CsvWriter::num(fit.slope);
  return 0;
}

int cmd_dim_scan_bad(double rho, double T, int grid, double step, int threads,
                     const std::string& out, const std::string& fit_out, ManifestSink& sink) {
  const TransversalScanResult res = transversal_bad_scan(rho, T, grid, step, threads);
  std::cout << res.survivors.size() << " survivors / " << static_cast<long long>(grid) * grid
            << " grid points\n";
  if (res.has_fit)
    std::cout << "survivor slope " << res.fit.slope << "\n";
  else
    std::cout << "survivor slope undefined (survivor set too small)\n";
  if (!out.empty()) {
    CsvWriter csv({"u", "v"});
    for (const auto& [u, v] : res.survivors)
      csv.add_row({CsvWriter::num(u), CsvWriter::num(v)});
    write_file(out, csv.str());
  }
  if (!fit_out.empty() && res.has_fit) {
    CsvWriter csv({"epsilon", "count"});
    for (const auto& row : res.fit.table)
      csv.add_row({CsvWriter::num(row.eps), CsvWriter::num(row.count)});
    write_file(fit_out, csv.str());
  }
  sink.m.derived["survivors"] = std::to_string(res.survivors.size());
  if (res.has_fit) sink.m.derived["slope"] = CsvWriter::num(res.fit.slope);
  return 0;
}

int cmd_entropy_estimate(const std::string& map_name, int seeds, int N, const std::string& eps_expr,
                         const std::string& angle_expr, const std::string& out,
                         ManifestSink& sink) {
  const double eps = parse_real_expr(eps_expr).d();
  DynSystem dyn;
  PointCloud cloud;
  if (map_name == "doubling") {
    dyn.step = [](const std::vector<double>& x) -> std::optional<std::vector<double>> {
      double y = 2.0 * x[0];
      y -= std::floor(y);
      return std::vector<double>{y};
    };
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < seeds; ++i) pts.push_back({static_cast<double>(i) / seeds});
    cloud = PointCloud(1, std::move(pts));
  } else if (map_name == "rotation") {
    const double ang = parse_real_expr(angle_expr).d();
    const double ca = std::cos(ang), sa = std::sin(ang);
    dyn.step = [ca, sa](const std::vector<double>& x) -> std::optional<std::vector<double>> {
      return std::vector<double>{ca * x[0] - sa * x[1], sa * x[0] + ca * x[1]};
    };
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < seeds; ++i) {
      const double a = 6.283185307179586 * i / seeds;
      pts.push_back({std::cos(a), std::sin(a)});
    }
    cloud = PointCloud(2, std::move(pts));
  } else {
    throw contract_error("entropy estimate: map must be doubling or rotation");
  }
  const TopEntropyResult res = top_entropy_estimate(dyn, cloud, N, eps);
  std::cout << "rate " << res.rate << " (slope over n: " << res.slope_over_n << ")\n";
  if (!out.empty()) {
    CsvWriter csv({"N", "epsilon", "count", "rate"});
    for (const auto& row : res.table)
      csv.add_row({CsvWriter::num(static_cast<long long>(row.n)), CsvWriter::num(row.eps),
                   CsvWriter::num(row.count), CsvWriter::num(row.rate)});
    write_file(out, csv.str());
  }
  sink.m.derived["rate"] = CsvWriter::num(res.rate);
  return 0;
}

int cmd_entropy_formula(const std::string& s_path, const std::string& t_flag,
                        ManifestSink& sink) {
  const MatD s = matrix_from_json(read_file(s_path));
  const DiagParam t(parse_vector(t_flag));
  const double h = entropy_formula(EntropyData(s, t));
  std::cout << "h = " << h << "\n";
  sink.m.derived["h"] = CsvWriter::num(h);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latlab: lattice flows, Littlewood scans and separated-set estimators"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::uint64_t seed = 0;
  app.add_option("--manifest", manifest_path, "write a run manifest JSON here")->capture_default_str();
  app.add_option("--seed", seed, "seed for all randomized commands")->capture_default_str();

  std::function<int(ManifestSink&)> run;

  // littlewood
  auto* lw = app.add_subcommand("littlewood", "Littlewood products");
  {
    auto* scan = lw->add_subcommand("scan", "min over n <= N of n <nu> <nv>");
    auto u = std::make_shared<std::string>("0");
    auto v = std::make_shared<std::string>("0");
    auto N = std::make_shared<long long>(1000);
    auto out = std::make_shared<std::string>();
    scan->add_option("--u", *u, "u (expression)")->required();
    scan->add_option("--v", *v, "v (expression)")->required();
    scan->add_option("--N", *N, "scan horizon")->required();
    scan->add_option("--out", *out, "records CSV path");
    scan->callback([&run, u, v, N, out]() {
      run = [=](ManifestSink& sink) { return cmd_littlewood_scan(*u, *v, *N, *out, sink); };
    });

    auto* rt = lw->add_subcommand("roundtrip", "orbit excursions <-> product witnesses");
    auto ru = std::make_shared<std::string>("0");
    auto rv = std::make_shared<std::string>("0");
    auto eps = std::make_shared<double>(0.1);
    auto extent = std::make_shared<double>(8.0);
    auto step = std::make_shared<double>(0.1);
    auto rmax = std::make_shared<double>(40.0);
    auto rout = std::make_shared<std::string>();
    rt->add_option("--u", *ru)->required();
    rt->add_option("--v", *rv)->required();
    rt->add_option("--eps", *eps, "excursion threshold");
    rt->add_option("--extent", *extent, "(r,s) grid extent");
    rt->add_option("--step", *step, "(r,s) grid step");
    rt->add_option("--rmax", *rmax, "cap for vanishing factors");
    rt->add_option("--out", *rout, "witness JSON path");
    rt->callback([&run, ru, rv, eps, extent, step, rmax, rout]() {
      run = [=](ManifestSink& sink) {
        return cmd_littlewood_roundtrip(*ru, *rv, *eps, *extent, *step, *rmax, *rout, sink);
      };
    });
  }

  // orbit
  auto* orbit = app.add_subcommand("orbit", "diagonal-flow orbits");
  {
    auto* trace = orbit->add_subcommand("trace", "delta along a cone grid");
    auto basis = std::make_shared<std::string>();
    auto dirs = std::make_shared<std::vector<std::string>>();
    auto step = std::make_shared<double>(0.05);
    auto extent = std::make_shared<double>(1.0);
    auto rho = std::make_shared<double>(0.1);
    auto out = std::make_shared<std::string>();
    trace->add_option("--basis", *basis, "lattice basis JSON (default: identity)");
    trace->add_option("--dir", *dirs, "cone direction, comma-separated (repeatable)");
    trace->add_option("--step", *step, "grid step");
    trace->add_option("--extent", *extent, "grid extent per direction");
    trace->add_option("--rho", *rho, "K_rho threshold");
    trace->add_option("--out", *out, "trace CSV path");
    trace->callback([&run, basis, dirs, step, extent, rho, out]() {
      run = [=](ManifestSink& sink) {
        return cmd_orbit_trace(*basis, *dirs, *step, *extent, *rho, *out, sink);
      };
    });
  }

  // forms
  auto* forms = app.add_subcommand("forms", "products of linear forms");
  {
    auto* scan = forms->add_subcommand("scan", "min |f_m| over the coefficient box");
    auto matrix = std::make_shared<std::string>();
    auto N = std::make_shared<long long>(10);
    auto out = std::make_shared<std::string>();
    scan->add_option("--matrix", *matrix, "forms matrix JSON")->required();
    scan->add_option("--N", *N, "box radius")->required();
    scan->add_option("--out", *out, "result JSON path");
    scan->callback([&run, matrix, N, out]() {
      run = [=](ManifestSink& sink) { return cmd_forms_scan(*matrix, *N, *out, sink); };
    });
  }

  // shear
  auto* shear_cmd = app.add_subcommand("shear", "unipotent shearing");
  {
    auto* demo = shear_cmd->add_subcommand("demo", "closed form vs direct product");
    auto g = std::make_shared<std::string>();
    auto r = std::make_shared<double>(10.0);
    auto out = std::make_shared<std::string>();
    demo->add_option("--g", *g, "matrix JSON (default: bundled sample)");
    demo->add_option("--r", *r, "shear time");
    demo->add_option("--out", *out, "result JSON path");
    demo->callback([&run, g, r, out]() {
      run = [=](ManifestSink& sink) { return cmd_shear_demo(*g, *r, *out, sink); };
    });
  }

  // exceptional
  auto* exc = app.add_subcommand("exceptional", "return criterion scans");
  {
    auto* scan = exc->add_subcommand("scan", "exhaustive SL(k,Z) entry-box scan");
    auto k = std::make_shared<int>(3);
    auto bound = std::make_shared<int>(2);
    auto threads = std::make_shared<int>(default_threads());
    auto out = std::make_shared<std::string>();
    scan->add_option("--k", *k, "matrix size");
    scan->add_option("--entry-bound", *bound, "entries range over [-bound, bound]");
    scan->add_option("--threads", *threads, "worker threads");
    scan->add_option("--out", *out, "results JSON path");
    scan->callback([&run, k, bound, threads, out]() {
      run = [=](ManifestSink& sink) {
        return cmd_exceptional_scan(*k, *bound, *threads, *out, sink);
      };
    });
  }

  // eig
  auto* eig = app.add_subcommand("eig", "eigenvalue perturbation");
  {
    auto* lemma = eig->add_subcommand("lemma", "seeded perturbation trials");
    auto m = std::make_shared<int>(3);
    auto trials = std::make_shared<int>(500);
    auto radius = std::make_shared<double>(0.01);
    auto out = std::make_shared<std::string>();
    lemma->add_option("--m", *m, "matrix size");
    lemma->add_option("--trials", *trials, "number of trials");
    lemma->add_option("--radius", *radius, "sup-norm radius of h - I");
    lemma->add_option("--out", *out, "result JSON path");
    lemma->callback([&run, &seed, m, trials, radius, out]() {
      run = [=, &seed](ManifestSink& sink) {
        return cmd_eig_lemma(*m, *trials, *radius, seed, *out, sink);
      };
    });
  }

  // dim
  auto* dim = app.add_subcommand("dim", "box-dimension estimators");
  {
    auto* est = dim->add_subcommand("estimate", "separated-count slope of a point set");
    auto cantor = std::make_shared<int>(0);
    auto grid = std::make_shared<int>(0);
    auto points = std::make_shared<std::string>();
    auto eps0 = std::make_shared<double>(0.25);
    auto ratio = std::make_shared<double>(0.5);
    auto num = std::make_shared<int>(7);
    auto out = std::make_shared<std::string>();
    est->add_option("--cantor", *cantor, "middle-thirds endpoint set of this level");
    est->add_option("--grid", *grid, "uniform grid on [0,1] with this many cells");
    est->add_option("--points", *points, "CSV of points");
    est->add_option("--eps0", *eps0, "largest epsilon");
    est->add_option("--ratio", *ratio, "schedule ratio");
    est->add_option("--num", *num, "schedule length");
    est->add_option("--out", *out, "(epsilon,count) CSV path");
    est->callback([&run, cantor, grid, points, eps0, ratio, num, out]() {
      run = [=](ManifestSink& sink) {
        return cmd_dim_estimate(*cantor, *grid, *points, *eps0, *ratio, *num, *out, sink);
      };
    });

    auto* bad = dim->add_subcommand("scan-bad", "survivors of the A+ orbit constraint");
    auto rho = std::make_shared<double>(0.05);
    auto T = std::make_shared<double>(8.0);
    auto g = std::make_shared<int>(512);
    auto step = std::make_shared<double>(0.05);
    auto threads = std::make_shared<int>(default_threads());
    auto bad_out = std::make_shared<std::string>();
    auto fit_out = std::make_shared<std::string>();
    bad->add_option("--rho", *rho, "K_rho threshold");
    bad->add_option("--T", *T, "orbit horizon");
    bad->add_option("--grid", *g, "grid resolution per axis");
    bad->add_option("--step", *step, "(r,s) sampling step");
    bad->add_option("--threads", *threads, "worker threads");
    bad->add_option("--out", *bad_out, "survivors CSV path");
    bad->add_option("--fit-out", *fit_out, "(epsilon,count) CSV path");
    bad->callback([&run, rho, T, g, step, threads, bad_out, fit_out]() {
      run = [=](ManifestSink& sink) {
        return cmd_dim_scan_bad(*rho, *T, *g, *step, *threads, *bad_out, *fit_out, sink);
      };
    });
  }

  // entropy
  auto* ent = app.add_subcommand("entropy", "entropy estimators and the formula");
  {
    auto* est = ent->add_subcommand("estimate", "(N,eps)-separated growth rate");
    auto map = std::make_shared<std::string>("doubling");
    auto seeds_n = std::make_shared<int>(4096);
    auto N = std::make_shared<int>(12);
    auto eps = std::make_shared<std::string>("1/64");
    auto angle = std::make_shared<std::string>("1/2");
    auto out = std::make_shared<std::string>();
    est->add_option("--map", *map, "doubling | rotation");
    est->add_option("--seeds", *seeds_n, "seed cloud size");
    est->add_option("--N", *N, "Bowen horizon");
    est->add_option("--eps", *eps, "separation scale (expression)");
    est->add_option("--angle", *angle, "rotation angle (expression)");
    est->add_option("--out", *out, "(N,epsilon,count,rate) CSV path");
    est->callback([&run, map, seeds_n, N, eps, angle, out]() {
      run = [=](ManifestSink& sink) {
        return cmd_entropy_estimate(*map, *seeds_n, *N, *eps, *angle, *out, sink);
      };
    });

    auto* formula = ent->add_subcommand("formula", "sum of s_ij (t_i - t_j)^+");
    auto s_path = std::make_shared<std::string>();
    auto t_flag = std::make_shared<std::string>();
    formula->add_option("--s", *s_path, "s matrix JSON")->required();
    formula->add_option("--t", *t_flag, "trace-zero t, comma-separated")->required();
    formula->callback([&run, s_path, t_flag]() {
      run = [=](ManifestSink& sink) { return cmd_entropy_formula(*s_path, *t_flag, sink); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  if (!run) {
    std::cerr << app.help() << "\n";
    return 64;
  }

  ManifestSink sink;
  sink.path = manifest_path;
  sink.m.seed = seed;
  for (int i = 1; i < argc; ++i) {
    char key[16];
    std::snprintf(key, sizeof(key), "arg%02d", i);
    sink.m.config[key] = argv[i];
  }
  const CLI::App* cur = &app;
  while (!cur->get_subcommands().empty()) {
    const CLI::App* sub = cur->get_subcommands().front();
    sink.m.command += (sink.m.command.empty() ? "" : " ") + sub->get_name();
    cur = sub;
  }

  try {
    const int rc = run(sink);
    sink.finish();
    return rc;
  } catch (const contract_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "latlab/serialize.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = LATLAB_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "latlab_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("littlewood scan finds the trivial zero and writes records") {
  const fs::path csv = tmp("lw_records.csv");
  const auto r = run_cli("littlewood scan --u 0 --v 0 --N 10 --out " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("min product 0 at n = 1") != std::string::npos);
  const std::string body = slurp(csv);
  CHECK(body.rfind("n,du,dv,product,is_record\n", 0) == 0);
  CHECK(body.find("\n1,0,0,0,1\n") != std::string::npos);
}

TEST_CASE("expression flags parse") {
  const auto r = run_cli("littlewood scan --u 'cbrt(2)' --v 'cbrt(4)' --N 1000");
  CHECK(r.exit_code == 0);
  const auto r2 = run_cli("littlewood scan --u 1/3 --v 1/3 --N 10");
  CHECK(r2.exit_code == 0);
  CHECK(r2.stdout_text.find("at n = 3") != std::string::npos);
}

TEST_CASE("exceptional scan with entry bound 1 reports zero hits") {
  const fs::path out = tmp("exc.json");
  const auto r = run_cli("exceptional scan --k 3 --entry-bound 1 --threads 2 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("hits 0") != std::string::npos);
  CHECK(slurp(out).find("\"hits\": 0") != std::string::npos);
}

TEST_CASE("shear demo reports a tiny closed-form vs direct diff") {
  const auto r = run_cli("shear demo --r 7.5");
  CHECK(r.exit_code == 0);
  const auto pos = r.stdout_text.find("sup diff = ");
  REQUIRE(pos != std::string::npos);
  const double diff = std::stod(r.stdout_text.substr(pos + 11));
  CHECK(diff < 1e-12);
}

TEST_CASE("exit codes: usage, contract, numeric") {
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("littlewood scan --u 0 --v 0 --N 0").exit_code == 2);   // N >= 1
  CHECK(run_cli("littlewood scan --u 0 --v 0").exit_code == 64);        // missing flag
  // orbit trace on a wildly scaled basis: rejected as numeric
  const fs::path bad = tmp("bad_basis.json");
  latlab::MatD m(3);
  m(0, 0) = 1e9;
  m(1, 1) = 1e-9;
  m(2, 2) = 1.0;
  latlab::write_file(bad.string(), latlab::lattice_to_json(latlab::LatticeBasis(m)));
  const auto r = run_cli("orbit trace --basis " + bad.string() + " --extent 0.1 --step 0.1");
  CHECK(r.exit_code == 3);
}

TEST_CASE("orbit trace CSV has the mandated header") {
  const fs::path csv = tmp("trace.csv");
  const auto r =
      run_cli("orbit trace --step 0.5 --extent 1 --rho 0.1 --out " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(csv).rfind("time_1,time_2,delta,in_K_rho\n", 0) == 0);
}

TEST_CASE("forms scan consumes a matrix file") {
  const fs::path mj = tmp("forms_m.json");
  latlab::write_file(mj.string(), latlab::matrix_to_json(latlab::MatD::identity(3)));
  const fs::path out = tmp("forms_out.json");
  const auto r = run_cli("forms scan --matrix " + mj.string() + " --N 2 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(out).find("\"min\": 0.0") != std::string::npos);
}

TEST_CASE("dim estimate emits the epsilon,count table and the slope") {
  const fs::path csv = tmp("dim_cantor.csv");
  const auto r = run_cli("dim estimate --cantor 10 --eps0 0.25 --num 8 --out " + csv.string());
  CHECK(r.exit_code == 0);
  const auto pos = r.stdout_text.find("slope ");
  REQUIRE(pos != std::string::npos);
  const double slope = std::stod(r.stdout_text.substr(pos + 6));
  CHECK(std::fabs(slope - 0.6309) < 0.05);
  CHECK(r.stdout_text.find("dim_H <= ") != std::string::npos);
  CHECK(slurp(csv).rfind("epsilon,count\n", 0) == 0);
}

TEST_CASE("orbit trace accepts explicit cone directions") {
  const auto r = run_cli("orbit trace --dir -1,1,0 --step 0.5 --extent 1 --rho 0.1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("3 samples") != std::string::npos);
  CHECK(run_cli("orbit trace --dir 1,1,0 --step 0.5 --extent 1").exit_code == 2);  // not trace zero
}

TEST_CASE("entropy formula evaluates from files") {
  const fs::path sj = tmp("s.json");
  latlab::MatD s(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s(i, j) = i == j ? 0.0 : 1.0;
  latlab::write_file(sj.string(), latlab::matrix_to_json(s));
  const auto r = run_cli("entropy formula --s " + sj.string() + " --t 1,0,-1");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("h = 4") != std::string::npos);
}

TEST_CASE("manifest echoes config and derived constants") {
  const fs::path man = tmp("manifest.json");
  const auto r =
      run_cli("--manifest " + man.string() + " littlewood scan --u 0.3 --v 0.7 --N 100");
  CHECK(r.exit_code == 0);
  const std::string body = slurp(man);
  CHECK(body.find("\"command\": \"littlewood scan\"") != std::string::npos);
  CHECK(body.find("\"version\": \"0.1.0\"") != std::string::npos);
  CHECK(body.find("min_product") != std::string::npos);
  CHECK(body.find("wall_time_s") != std::string::npos);
}

TEST_CASE("manifests agree on everything but the timing field") {
  const fs::path mp = tmp("man_rerun.json");
  REQUIRE(run_cli("--manifest " + mp.string() + " --seed 4 eig lemma --trials 30").exit_code == 0);
  const std::string a = slurp(mp);
  REQUIRE(run_cli("--manifest " + mp.string() + " --seed 4 eig lemma --trials 30").exit_code == 0);
  const std::string b = slurp(mp);
  auto strip_timing = [](std::string body) {
    const auto pos = body.find("\"wall_time_s\"");
    REQUIRE(pos != std::string::npos);
    const auto end = body.find('\n', pos);
    body.erase(pos, end - pos);
    return body;
  };
  CHECK(strip_timing(a) == strip_timing(b));
}

TEST_CASE("roundtrip JSON certifies the product bound on every witness") {
  const fs::path out = tmp("rt_check.json");
  REQUIRE(run_cli("littlewood roundtrip --u 0.125 --v 0.375 --extent 6 --step 0.5 --out " +
                  out.string())
              .exit_code == 0);
  const std::string body = slurp(out);
  CHECK(body.find("\"product_lt_eps3\": true") != std::string::npos);
  CHECK(body.find("\"product_lt_eps3\": false") == std::string::npos);
  CHECK(body.find("\"back_delta_lt_eps\": false") == std::string::npos);
}

TEST_CASE("reruns with identical config produce byte-identical data files") {
  const fs::path a = tmp("det_a.csv"), b = tmp("det_b.csv");
  REQUIRE(run_cli("littlewood scan --u 'sqrt(2)' --v 'sqrt(3)' --N 5000 --out " + a.string())
              .exit_code == 0);
  REQUIRE(run_cli("littlewood scan --u 'sqrt(2)' --v 'sqrt(3)' --N 5000 --out " + b.string())
              .exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  const fs::path ea = tmp("eig_a.json"), eb = tmp("eig_b.json");
  REQUIRE(run_cli("--seed 9 eig lemma --trials 50 --out " + ea.string()).exit_code == 0);
  REQUIRE(run_cli("--seed 9 eig lemma --trials 50 --out " + eb.string()).exit_code == 0);
  CHECK(slurp(ea) == slurp(eb));

  const fs::path da = tmp("dim_a.csv"), db = tmp("dim_b.csv");
  REQUIRE(run_cli("dim scan-bad --rho 0.05 --T 2 --grid 48 --threads 2 --out " + da.string())
              .exit_code == 0);
  REQUIRE(run_cli("dim scan-bad --rho 0.05 --T 2 --grid 48 --threads 1 --out " + db.string())
              .exit_code == 0);
  CHECK(slurp(da) == slurp(db));  // thread count must not change the bytes
}

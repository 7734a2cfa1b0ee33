// End-to-end checks of the command-line tool: exit codes, file outputs,
// and document shape. The binary path comes in through JETPH_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string cli = JETPH_CLI_PATH;

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / ("jetph_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
  }
};

int run(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = cli + " " + args;
  cmd += capture.empty() ? " >/dev/null 2>/dev/null"
                         : " >" + capture.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const fs::path& p) {
  std::ostringstream ss;
  ss << std::ifstream(p).rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("derive emits parseable documents in all three forms") {
  Sandbox sb;
  const fs::path out = sb.dir / "doc.json";

  CHECK(run("derive mindlin --format json", out) == 0);
  json lag = json::parse(slurp(out));
  CHECK(lag["model"] == "mindlin");
  CHECK(lag["residuals"].size() == 3);
  CHECK(lag["boundary_coefficients"]["X"].contains("w"));
  CHECK(lag["facets"].size() == 4);

  CHECK(run("derive mindlin --form geometric --format json", out) == 0);
  json geo = json::parse(slurp(out));
  CHECK(geo["states"].size() == 6);
  CHECK(geo["J"].size() == 6);
  CHECK(geo["facet_power_integrand"].contains("Y"));

  CHECK(run("derive mindlin --form dirac --format json", out) == 0);
  json sd = json::parse(slurp(out));
  CHECK(sd["chi"].size() == 8);
  CHECK(sd["J"].size() == 8);
  CHECK(sd["J"][0].size() == 8);
  CHECK(sd["compatibility_residuals"].size() == 5);

  CHECK(run("derive wave1d --form dirac --format json", out) == 0);
  json w = json::parse(slurp(out));
  CHECK(w["chi"].size() == 2);

  CHECK(run("derive mindlin", out) == 0);
  CHECK(slurp(out).find("field equations") != std::string::npos);
}

TEST_CASE("check passes the presets and exposes tampering") {
  Sandbox sb;
  const fs::path out = sb.dir / "check.json";
  CHECK(run("check mindlin") == 0);
  CHECK(run("check wave1d --format json", out) == 0);
  json rep = json::parse(slurp(out));
  CHECK(rep["ok"] == true);
  for (const auto& c : rep["checks"]) CHECK(c["outcome"] == "pass");

  // same constitutive data except one cross coupling bumped in the
  // quadratic energy: assembly must refuse it
  const fs::path bad = sb.file("tampered.json", R"({
    "name": "tampered",
    "independent": ["t", "X", "Y"],
    "fields": ["w", "psi", "phi"],
    "lagrangian": "1/2*h*rho*w_t^2 + 1/24*h^3*rho*psi_t^2 + 1/24*h^3*rho*phi_t^2 - 1/2*G*h*k*(w_X - psi)^2 - 1/2*G*h*k*(w_Y - phi)^2 - 1/2*D*(psi_X^2 + phi_Y^2 + 2*nu*psi_X*phi_Y) - 1/4*D*(1 - nu)*(psi_Y + phi_X)^2",
    "strains": [["Gxz", "w_X - psi"], ["Gyz", "w_Y - phi"], ["Gx", "-psi_X"], ["Gy", "-phi_Y"], ["Gxy", "-psi_Y - phi_X"]],
    "chi": ["p_w", "Gxz", "Gyz", "p_psi", "p_phi", "Gx", "Gy", "Gxy"],
    "strain_potential": "1/2*G*h*k*Gxz^2 + 1/2*G*h*k*Gyz^2 + 1/2*D*(Gx^2 + Gy^2 + 3*nu*Gx*Gy) + 1/4*D*(1 - nu)*Gxy^2"
  })");
  const fs::path bad_out = sb.dir / "bad.json.out";
  CHECK(run("check " + bad.string() + " --format json", bad_out) == 1);
  json bad_rep = json::parse(slurp(bad_out));
  CHECK(bad_rep["ok"] == false);
  bool resultant_failed = false;
  for (const auto& c : bad_rep["checks"])
    if (c["name"] == "boundary coefficients match the strain efforts")
      resultant_failed = c["outcome"] == "fail";
  CHECK(resultant_failed);
}

TEST_CASE("simulate writes series files and honors steps and form") {
  Sandbox sb;
  const fs::path out_dir = sb.dir / "run";
  CHECK(run("simulate --grid 8,8 --steps 0 --form dirac --out " + out_dir.string()) == 0);
  const std::string csv = slurp(out_dir / "dirac.csv");
  CHECK(csv.rfind("t,H,P_boundary,balance_residual", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header plus the initial record
  CHECK(!fs::exists(out_dir / "geometric.csv"));

  CHECK(run("simulate --grid 8,8 --steps 6 --form geometric --out " + out_dir.string()) == 0);
  CHECK(fs::exists(out_dir / "geometric.csv"));
}

TEST_CASE("compare runs both forms and reports their gap") {
  Sandbox sb;
  const fs::path out_dir = sb.dir / "cmp";
  const fs::path summary = sb.dir / "summary.json";
  CHECK(run("compare --grid 8,8 --steps 5 --format json --out " + out_dir.string(), summary) ==
        0);
  json rep = json::parse(slurp(summary));
  CHECK(rep.contains("geometric"));
  CHECK(rep.contains("dirac"));
  CHECK(rep["dirac"]["max_discrepancy"].get<double>() >= 0.0);
  const std::string csv = slurp(out_dir / "dirac.csv");
  CHECK(csv.rfind("t,H,P_boundary,balance_residual,discrepancy", 0) == 0);
  CHECK(fs::exists(out_dir / "geometric.csv"));
}

TEST_CASE("balance tolerance gates the exit code") {
  Sandbox sb;
  const fs::path ok = sb.file("ok.json", R"({
    "grid": {"nx": 12, "ny": 12}, "form": "dirac", "steps": 30,
    "balance_tolerance": 1e-3
  })");
  CHECK(run("simulate " + ok.string() + " --out " + (sb.dir / "a").string()) == 0);
  const fs::path tight = sb.file("tight.json", R"({
    "grid": {"nx": 12, "ny": 12}, "form": "dirac", "steps": 30,
    "balance_tolerance": 1e-13
  })");
  CHECK(run("simulate " + tight.string() + " --out " + (sb.dir / "b").string()) == 1);
}

TEST_CASE("usage and configuration errors exit with code 2") {
  Sandbox sb;
  CHECK(run("derive nosuchpreset") == 2);
  CHECK(run("derive mindlin --format csv") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("simulate --bc X1=forced --out " + (sb.dir / "x").string()) == 2);
  CHECK(run("simulate --grid 3,3 --out " + (sb.dir / "x").string()) == 2);
  const fs::path bad = sb.file("bad.json", "{ not json");
  CHECK(run("simulate " + bad.string()) == 2);
  const fs::path wrong = sb.file("wrong.json", R"({"model": "wave1d"})");
  CHECK(run("simulate " + wrong.string()) == 2);
}

TEST_CASE("numerical failures exit with code 1") {
  Sandbox sb;
  // the explicit form refuses a step beyond its stability limit
  CHECK(run("simulate --grid 12,12 --dt 5e-6 --steps 5 --form geometric --out " +
            (sb.dir / "y").string()) == 1);
  // the same step is accepted when forced
  CHECK(run("simulate --grid 12,12 --dt 5e-6 --steps 5 --form dirac --out " +
            (sb.dir / "z").string()) == 0);
}

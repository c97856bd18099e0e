#include "cli.hpp"

#include "vk/oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "vk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = vk::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh output directory through VK_OUTPUT_DIR, removed on exit.
struct OutDir {
  fs::path path;
  explicit OutDir(const std::string& name) : path(fs::temp_directory_path() / ("vk_test_cli_" + name)) {
    fs::remove_all(path);
    setenv("VK_OUTPUT_DIR", path.c_str(), 1);
  }
  ~OutDir() {
    unsetenv("VK_OUTPUT_DIR");
    fs::remove_all(path);
  }
};

}  // namespace

TEST_CASE("eval on the square") {
  const OutDir dir("eval");
  const Result r = run({"--body", "square", "eval", "--point", "2,0,0,0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["V"].get<double>() == Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-10));
  CHECK(j["command"] == "eval");
  CHECK(slurp(dir.path / "eval.json") == r.out);
  CHECK(r.out.find("1.31695789692481") != std::string::npos);
}

TEST_CASE("oracle, ellipse, robin and classify records") {
  const OutDir dir("records");
  Result r = run({"oracle", "--name", "disk", "--point", "1.25,0,0,-0.75"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["V"].get<double>() == Approx(std::log(2.0)).epsilon(1e-14));

  r = run({"--body", "disk", "ellipse", "--gamma", "1", "--psi", "0"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rho"].get<double>() == Approx(0.5).epsilon(1e-9));
  CHECK(j["contact_class"] == "continuum");

  r = run({"--body", "disk", "robin", "--point", "0.5,0,0,-0.5"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["rho"].get<double>()) < 1e-8);
  CHECK(std::abs(j["rho_limit"].get<double>()) < 1e-4);

  r = run({"--body", "square", "classify", "--gamma", "1", "--psi", "0"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["leaf_case"] == "four_plus");
  CHECK(fs::exists(dir.path / "classify.json"));
}

TEST_CASE("grid commands write csv") {
  const OutDir dir("grids");
  Result r = run({"--body", "disk", "levelset", "--lambda", "1.5", "--resolution", "32"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const std::string csv = slurp(dir.path / "levelset.csv");
  CHECK(csv.rfind("gamma,psi,chart,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == j["rows"].get<int>() + 1);

  r = run({"--body", "superellipse", "scan", "--grids", "32", "-o", "s.csv"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir.path / "s.csv"));
  CHECK(fs::exists(dir.path / "scan_summary.json"));

  r = run({"--body", "disk", "indicatrix", "--resolution", "32", "--theta-samples", "4"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir.path / "indicatrix.csv"));
}

TEST_CASE("measure reports the total mass") {
  const OutDir dir("measure");
  const Result r = run({"--body", "disk", "measure", "--phi", "1", "--resolution", "64", "--theta-samples", "16"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double mass = 4.0 * vk::kPi * vk::kPi;
  CHECK(j["mass"].get<double>() == Approx(mass).epsilon(1e-2));
  CHECK(j["lhs"].get<double>() == Approx(mass).epsilon(2e-2));
  CHECK(j["rhs"].get<double>() == Approx(mass).epsilon(1e-2));
}

TEST_CASE("plots are svg") {
  const OutDir dir("plot");
  for (const std::string kind : {"foliation", "levelset", "indicatrix"}) {
    const Result r = run({"--body", "superellipse", "plot", kind, "--resolution", "32", "--count", "4"});
    REQUIRE(r.code == 0);
    const std::string svg = slurp(dir.path / ("plot_" + kind + ".svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
  }
}

TEST_CASE("config file, overrides and output directory") {
  const fs::path base = fs::temp_directory_path() / "vk_test_cli_cfg";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path cfg = base / "run.cfg";
  std::ofstream(cfg) << "[run]\noutput_dir = " << (base / "from_config").string()
                     << "\nworkers = 2\n[body]\nkind = disk\n[eval]\npoint = 0, 1, 0, 0\n";
  Result r = run({"-c", cfg.string(), "eval"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(base / "from_config" / "eval.json"));
  CHECK(nlohmann::json::parse(r.out)["V"].get<double>() == Approx(vk::V_disk({vk::cplx(0, 1), 0.0})).epsilon(1e-10));

  // flags win over the file, the environment wins over [run]
  setenv("VK_OUTPUT_DIR", (base / "from_env").c_str(), 1);
  r = run({"-c", cfg.string(), "--body", "square", "eval"});
  unsetenv("VK_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(base / "from_env" / "eval.json"));
  CHECK(nlohmann::json::parse(r.out)["body"] == "square");
  fs::remove_all(base);
}

TEST_CASE("output is deterministic across worker counts") {
  const OutDir dir("det");
  setenv("VK_WORKERS", "1", 1);
  REQUIRE(run({"--body", "superellipse", "levelset", "--resolution", "32", "-o", "a.csv"}).code == 0);
  setenv("VK_WORKERS", "3", 1);
  REQUIRE(run({"--body", "superellipse", "levelset", "--resolution", "32", "-o", "b.csv"}).code == 0);
  REQUIRE(run({"--body", "superellipse", "measure", "--resolution", "32", "-o", "b.json"}).code == 0);
  setenv("VK_WORKERS", "1", 1);
  REQUIRE(run({"--body", "superellipse", "measure", "--resolution", "32", "-o", "a.json"}).code == 0);
  unsetenv("VK_WORKERS");
  CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));
  CHECK(slurp(dir.path / "a.json") == slurp(dir.path / "b.json"));
  setenv("VK_WORKERS", "many", 1);
  CHECK(run({"--body", "disk", "eval", "--point", "2,0,0,0"}).code == 2);
  unsetenv("VK_WORKERS");
}

TEST_CASE("exit codes") {
  const OutDir dir("codes");
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"-c", "/nonexistent/vk.cfg", "eval"}).code == 2);
  CHECK(run({"-s", "nodot=1", "eval"}).code == 2);
  CHECK(run({"-s", "bogus.key=1", "--body", "disk", "eval", "--point", "2,0,0,0"}).code == 2);
  CHECK(run({"-s", "eval.bogus=1", "--body", "disk", "eval", "--point", "2,0,0,0"}).code == 2);
  CHECK(run({"--body", "blob", "eval", "--point", "2,0,0,0"}).code == 2);
  CHECK(run({"--body", "disk", "eval", "--point", "2,0,0"}).code == 2);
  CHECK(run({"--body", "disk", "levelset", "--resolution", "100"}).code == 2);
  CHECK(run({"--body", "disk", "measure", "--phi", "sin"}).code == 2);
  CHECK(run({"--body", "disk", "plot", "pie"}).code == 2);

  const Result in_k = run({"--body", "disk", "classify", "--point", "0.2,0,0.1,0"});
  CHECK(in_k.code == 2);
  CHECK(in_k.err.rfind("error: smoothness::", 0) == 0);

  // a needle-thin body defeats the cutting-plane solver
  const Result thin = run({"-s", "body.kind=ellipse", "-s", "body.ax=1", "-s", "body.ay=1e-9", "ellipse", "--gamma",
                           "0.5", "--psi", "0.3"});
  CHECK(thin.code == 3);
  CHECK(thin.err.rfind("error: extremal_solver::", 0) == 0);
}

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wenoshep/point_set.hpp"
#include "wenoshep/test_functions.hpp"

namespace fs = std::filesystem;
using namespace wenoshep;

namespace {

fs::path work_dir(const std::string& name) {
  const fs::path d = fs::path(WENOSHEP_TEST_TMP) / "cli" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + WENOSHEP_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("cli: help and bad flags") {
  const fs::path d = work_dir("help");
  CHECK(run_cli("--help", d / "log") == 0);
  CHECK(slurp(d / "log").find("converge") != std::string::npos);
  CHECK(run_cli("converge --no-such-flag", d / "log") == 3);
  CHECK(run_cli("converge --kernel w9 --out " + d.string(), d / "log") == 3);
  CHECK(run_cli("", d / "log") == 3);
}

TEST_CASE("cli: converge writes csv and json") {
  const fs::path d = work_dir("converge");
  REQUIRE(run_cli("converge --levels 3..4 --eval-grid-n 21 --probe-resolution 64 --out " +
                      d.string(),
                  d / "log") == 0);
  const std::string csv = slurp(d / "convergence.csv");
  CHECK(csv.rfind("l,h,MAE,rate_inf,RMSE,rate_2,method\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(slurp(d / "log") == csv);
  const auto j = nlohmann::json::parse(slurp(d / "convergence.json"));
  CHECK(j["config"]["eval_grid_n"] == 21);
}

TEST_CASE("cli: config file with flag override") {
  const fs::path d = work_dir("config");
  write_text(d / "run.cfg",
             "kernel = w4\nlevels = 3..4\neval_grid_n = 11\nprobe_resolution = 64\nstencil_c = 3\n");
  REQUIRE(run_cli("--config " + (d / "run.cfg").string() + " converge --out " + (d / "a").string(),
                  d / "log") == 0);
  auto j = nlohmann::json::parse(slurp(d / "a" / "convergence.json"));
  CHECK(j["config"]["kernel"] == "w4");
  CHECK(j["config"]["levels"] == nlohmann::json({3, 4}));
  CHECK(j["config"]["stencil_c"] == 3.0);

  REQUIRE(run_cli("--config " + (d / "run.cfg").string() + " converge --kernel w2 --out " +
                      (d / "b").string(),
                  d / "log") == 0);
  j = nlohmann::json::parse(slurp(d / "b" / "convergence.json"));
  CHECK(j["config"]["kernel"] == "w2");
  CHECK(j["config"]["eval_grid_n"] == 11);
}

TEST_CASE("cli: discont outputs") {
  const fs::path d = work_dir("discont");
  REQUIRE(run_cli("discont --gamma square --level 4 --mode both --eval-grid-n 21 "
                  "--probe-resolution 64 --dump-indicators --out " + d.string(),
                  d / "log") == 0);
  CHECK(fs::exists(d / "discont_linear.csv"));
  CHECK(fs::exists(d / "discont_weno.csv"));
  CHECK(fs::exists(d / "indicators.csv"));
  const auto j = nlohmann::json::parse(slurp(d / "discont_summary.json"));
  CHECK(j["config"]["gamma"] == "square");
  CHECK(j["summaries"].size() == 2);
  CHECK(slurp(d / "discont_weno.csv").rfind("x,y,value,error,dist_gamma\n", 0) == 0);
}

TEST_CASE("cli: eval") {
  const fs::path d = work_dir("eval");
  write_point_set_csv(regular_grid(5, TestField{}.as_field()), (d / "data.csv").string());
  write_text(d / "q.csv", "x,y\n0.3,0.3\n0.71,0.12\n");

  SUBCASE("covered queries") {
    REQUIRE(run_cli("eval --data " + (d / "data.csv").string() + " --query " +
                        (d / "q.csv").string() + " --out " + (d / "r.csv").string(),
                    d / "log") == 0);
    std::istringstream in(slurp(d / "r.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,value");
    int rows = 0;
    while (std::getline(in, line)) {
      double x = 0, y = 0, v = 0;
      char c1 = 0, c2 = 0;
      std::istringstream ls(line);
      ls >> x >> c1 >> y >> c2 >> v;
      CHECK(std::abs(v - franke(x, y)) < 0.05);
      ++rows;
    }
    CHECK(rows == 2);
  }
  SUBCASE("uncovered query aborts with code 2") {
    write_text(d / "far.csv", "x,y\n0.5,0.5\n5,5\n");
    CHECK(run_cli("eval --data " + (d / "data.csv").string() + " --query " +
                      (d / "far.csv").string() + " --out " + (d / "r2.csv").string(),
                  d / "log") == 2);
    CHECK(slurp(d / "log").find("5") != std::string::npos);
    CHECK(run_cli("eval --allow-uncovered --data " + (d / "data.csv").string() + " --query " +
                      (d / "far.csv").string() + " --out " + (d / "r3.csv").string(),
                  d / "log") == 0);
    CHECK(slurp(d / "r3.csv").find("nan") != std::string::npos);
  }
  SUBCASE("malformed data aborts with code 3") {
    write_text(d / "bad.csv", "x,y,f\n0.1,0.2,oops\n");
    CHECK(run_cli("eval --data " + (d / "bad.csv").string() + " --query " +
                      (d / "q.csv").string() + " --out " + (d / "r4.csv").string(),
                  d / "log") == 3);
    write_text(d / "hdr.csv", "a,b\n0.1,0.2\n");
    CHECK(run_cli("eval --data " + (d / "data.csv").string() + " --query " +
                      (d / "hdr.csv").string() + " --out " + (d / "r5.csv").string(),
                  d / "log") == 3);
  }
}

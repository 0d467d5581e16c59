#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(TRAITFRONT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("traitfront_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("verify --out /nonexistent/traitfront/dir") == 2);
  CHECK(run("spectral --set bogus=1 --out /tmp") == 2);
  CHECK(run("spectral --set theta_min=3 --out /tmp") == 2);
  CHECK(run("spectral --config /nonexistent.cfg --out /tmp") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("spectral output schema and determinism") {
  const fs::path d = fresh_dir("spectral");
  REQUIRE(run("spectral --out " + d.string()) == 0);
  const std::string disp = slurp(d / "dispersion.csv");
  const std::string cs = slurp(d / "cstar.csv");
  CHECK(disp.rfind("lambda,c,H,gamma\n", 0) == 0);
  CHECK(disp.find("\n0,") == std::string::npos);
  CHECK(std::count(disp.begin(), disp.end(), '\n') == 51);
  REQUIRE(cs.rfind("# H(0)=", 0) == 0);
  CHECK(std::fabs(std::stod(cs.substr(7)) - 1.0) < 1e-10);
  CHECK(cs.find("\nc_star,lambda_star,lower_bound,upper_bound\n") != std::string::npos);
  REQUIRE(run("spectral --out " + d.string()) == 0);
  CHECK(slurp(d / "dispersion.csv") == disp);
  CHECK(slurp(d / "cstar.csv") == cs);
  CHECK_FALSE(fs::exists(d / "cstar.csv.tmp"));
}

TEST_CASE("simulate writes snapshots and tracks") {
  const fs::path d = fresh_dir("simulate");
  REQUIRE(run("simulate --set horizon=0 --set x_max=20 --out " + d.string()) == 0);
  CHECK(fs::exists(d / "snapshot_0.csv"));
  CHECK_FALSE(fs::exists(d / "snapshot_1.csv"));
  const std::string snap = slurp(d / "snapshot_0.csv");
  CHECK(snap.rfind("# t=0\nx,1,1.025,", 0) == 0);

  const fs::path e = fresh_dir("simulate2");
  const std::string args =
      "simulate --set horizon=0.5 --set x_max=20 --set track_stride=50 --out " + e.string();
  REQUIRE(run(args) == 0);
  const std::string front = slurp(e / "front_track.csv");
  CHECK(front.rfind("t,x_front\n", 0) == 0);
  // 500 steps recorded every 50 plus the initial state; the front row is
  // dropped once the density falls below the front level.
  CHECK(std::count(front.begin(), front.end(), '\n') <= 1 + 11);
  const std::string sup = slurp(e / "sup_track.csv");
  CHECK(sup.rfind("t,sup_n\n", 0) == 0);
  CHECK(std::count(sup.begin(), sup.end(), '\n') == 1 + 11);
  CHECK(fs::exists(e / "snapshot_1.csv"));
  const std::string first = slurp(e / "snapshot_1.csv");
  REQUIRE(run(args) == 0);
  CHECK(slurp(e / "snapshot_1.csv") == first);
}

TEST_CASE("hj writes fronts and profiles") {
  const fs::path d = fresh_dir("hj");
  REQUIRE(run("hj --set hj_horizon=0.5 --out " + d.string()) == 0);
  CHECK(slurp(d / "hj_fronts.csv").rfind("mu,t,zero_lo,zero_hi,exact_lo,exact_hi\n", 0) == 0);
  CHECK(slurp(d / "hj_profile.csv").find("x,u_mu10,u_mu40,u_mu160\n") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  const fs::path d = fresh_dir("verify");
  CHECK(run("verify --set checks=cstar_bounds,spectral_zero --out " + d.string()) == 0);
  const std::string report = slurp(d / "report.csv");
  CHECK(report.find("check,passed,measured,expected,tolerance,notes\n") != std::string::npos);
  CHECK(report.find("cstar_bounds,true,") != std::string::npos);
  CHECK(run("verify --set checks=cstar_bounds --set verify_cstar_shift=5 --out " + d.string()) == 1);
  CHECK(slurp(d / "report.csv").find("cstar_bounds,false,") != std::string::npos);
  // No front: inconclusive, still exit 0.
  CHECK(run("verify --set checks=front_speed --set amplitude=0 --set horizon=1 --set x_max=20 --out " +
            d.string()) == 0);
  CHECK(slurp(d / "report.csv").find("front_speed,inconclusive,") != std::string::npos);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "anosov/cli.hpp"

namespace fs = std::filesystem;
using namespace anosov;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "anosov");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  auto p = fs::temp_directory_path() / ("anosov_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}
}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"orbits", "--max-period", "x"}).code == cli::kExitUsage);
}

TEST_CASE("orbits to zeta pipeline") {
  auto dir = scratch();
  auto cat = (dir / "cat.tsv").string();
  auto r = run({"orbits", "--catmap", "2,1,1,1", "--max-period", "12", "--out", cat});
  REQUIRE(r.code == cli::kExitOk);
  auto z = run({"zeta", "--catalog", cat, "--s", "2.5,0", "--s", "3,1", "--factor"});
  CHECK(z.code == cli::kExitOk);
  CHECK(z.out.find("s_re,s_im,value_re,value_im,err_bound") != std::string::npos);
  auto low = run({"zeta", "--catalog", cat, "--s", "0,0"});
  CHECK(low.code == cli::kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("output does not depend on the job count") {
  auto a = run({"--jobs", "1", "orbits", "--group", "bolza", "--cutoff", "3.2"});
  auto b = run({"--jobs", "2", "orbits", "--group", "bolza", "--cutoff", "3.2"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("classify and spectrum") {
  auto c = run({"classify", "--family", "catmap-suspension", "--matrix", "2,1,1,1"});
  CHECK(c.code == cli::kExitOk);
  CHECK(c.out.find("n=2") != std::string::npos);
  auto dir = scratch();
  auto eigs = dir / "eigs.txt";
  std::ofstream(eigs) << "# small sample\n0 2.0 0.25\n";
  auto s = run({"spectrum", "--eigs", eigs.string(), "--genus", "2", "--eps", "0.1", "--winding", "1"});
  CHECK(s.code == cli::kExitOk);
  CHECK(s.out.find("splitting") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("config file and command line precedence") {
  auto dir = scratch();
  auto ini = dir / "run.ini";
  std::ofstream(ini) << "[orbits]\nmax-period=3\ncatmap=2,1,1,1\n";
  auto a = run({"--config", ini.string(), "orbits"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out.find("count=8") != std::string::npos);
  auto b = run({"--config", ini.string(), "orbits", "--max-period", "2"});
  REQUIRE(b.code == cli::kExitOk);
  CHECK(b.out.find("count=3") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("global options after the subcommand") {
  auto r = run({"orbits", "--catmap", "2,1,1,1", "--max-period", "2", "--dump-config", "--jobs", "1"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("# config orbits.max-period=2") != std::string::npos);
  CHECK(r.out.find("# config jobs=1") != std::string::npos);
}

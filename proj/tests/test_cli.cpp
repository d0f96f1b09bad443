#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace {

const std::filesystem::path kTestDir = RESNET_TEST_DIR;

std::string data(const std::string& name) { return (kTestDir / "data" / name).string(); }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = resnet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("golden outputs") {
  CHECK(run({"bracket", "grid1", "--radii", "0..10"}).out == slurp(kTestDir / "golden" / "bracket_grid1.csv"));
  CHECK(run({"treeprob", data("triangle.txt")}).out == slurp(kTestDir / "golden" / "treeprob_triangle.csv"));
  CHECK(run({"treeprob", data("diamond.txt")}).out == slurp(kTestDir / "golden" / "treeprob_diamond.csv"));
  CHECK(run({"foster", "--edges", data("triangle.txt")}).out == slurp(kTestDir / "golden" / "foster_triangle.csv"));
}

TEST_CASE("reruns are byte-identical on stdout") {
  const std::vector<std::vector<std::string>> commands{
      {"bracket", "grid2", "--radii", "1..4"},
      {"walk", "grid2", "--steps", "200", "--trials", "300", "--seed", "17", "--ladder", "10,100,200"},
      {"rinf", "grid3", "--radii", "2..5"},
      {"foster", "hex", "--radius", "2"},
      {"resistance", data("diamond.txt"), "--p", "1", "--q", "3"},
  };
  for (const auto& cmd : commands) {
    CAPTURE(cmd.front());
    Run a = run(cmd), b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("manifest") {
  Run r = run({"walk", "grid1", "--steps", "10", "--trials", "5", "--seed", "3"});
  REQUIRE(r.code == 0);
  const std::string prefix = "# manifest ";
  REQUIRE(r.err.rfind(prefix, 0) == 0);
  auto manifest = nlohmann::json::parse(r.err.substr(prefix.size()));
  CHECK(manifest["command"] == "walk");
  CHECK(manifest["seed"] == 3);
  CHECK(manifest["tool_version"] == resnet::cli::kToolVersion);
  CHECK(manifest["csv_schema"] == resnet::cli::kCsvSchemaVersion);
  CHECK(manifest.contains("timestamp"));

  const auto path = std::filesystem::temp_directory_path() / "resnet_manifest_test.json";
  Run f = run({"bracket", "grid1", "--radii", "1", "--manifest", path.string()});
  CHECK(f.code == 0);
  CHECK(f.err.empty());
  auto from_file = nlohmann::json::parse(slurp(path));
  CHECK(from_file["parameters"]["radii"] == "1");
  std::filesystem::remove(path);
}

TEST_CASE("json output") {
  Run r = run({"resistance", data("triangle.txt"), "--p", "0", "--q", "1", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["resistance"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("tables carry the expected values") {
  Run res = run({"resistance", data("diamond.txt"), "--p", "1", "--q", "3"});
  REQUIRE(res.code == 0);
  // Two 2-ohm paths in parallel; the chord carries nothing by symmetry.
  CHECK(res.out.find("\n1,3,1,") != std::string::npos);

  Run rinf = run({"rinf", "grid1", "--radii", "1..6"});
  REQUIRE(rinf.code == 0);
  CHECK(rinf.out.find("# trend diverging-linear") != std::string::npos);
  CHECK(rinf.out.find("# escape diverging") != std::string::npos);

  Run walk = run({"walk", "grid2", "--steps", "100", "--trials", "50", "--seed", "1", "--ladder", "10,100"});
  REQUIRE(walk.code == 0);
  std::istringstream lines(walk.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == resnet::cli::kUsage);
  CHECK(run({"nonsense"}).code == resnet::cli::kUsage);
  CHECK(run({"bracket", "grid9"}).code == resnet::cli::kUsage);
  CHECK(run({"bracket", "grid2", "--radii", "x"}).code == resnet::cli::kUsage);
  CHECK(run({"bracket", "grid2", "--radii", "1", "--tol", "2"}).code == resnet::cli::kUsage);
  CHECK(run({"foster", "--edges", data("missing.txt")}).code == resnet::cli::kUsage);
  CHECK(run({"walk", "tree3"}).code == resnet::cli::kUsage);
  CHECK(run({"treeprob", data("split.txt")}).code != resnet::cli::kOk);

  Run split = run({"foster", "--edges", data("split.txt")});
  CHECK(split.code == resnet::cli::kNumerical);
  CHECK(split.err.find("disconnected") != std::string::npos);

  Run starved = run({"resistance", data("triangle.txt"), "--p", "0", "--q", "2", "--max-iter", "1", "--precond", "none"});
  CHECK(starved.code == resnet::cli::kNumerical);
  CHECK(starved.err.find("did not reach") != std::string::npos);

  CHECK(run({"--version"}).code == resnet::cli::kOk);
}

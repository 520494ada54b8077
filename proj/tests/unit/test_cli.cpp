#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "graphlim/edge_list.hpp"
#include "graphlim/sequence.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = graphlim::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "graphlim_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

nlohmann::json results_of(const Result& r) { return nlohmann::json::parse(r.out).at("results"); }

}  // namespace

TEST_CASE("gen writes edge lists") {
  const auto dir = scratch();
  const auto path = dir / "p100.edges";
  const auto r = run({"gen", "--family", "path", "--n", "100", "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(graphlim::read_edge_list(path.string()) == graphlim::gen_path(100));
  const auto s = run({"gen", "--family", "cycle", "--n", "4"});
  CHECK(s.out == graphlim::to_edge_list(graphlim::gen_cycle(4)));
  CHECK(run({"gen", "--family", "torus", "--b", "2"}).code == 1);
}

TEST_CASE("dist on a path and a triangle") {
  const auto dir = scratch();
  write(dir / "p3.edges", "3 2\n0 1\n1 2\n");
  write(dir / "k3.edges", "3 2\n0 1\n1 2\n0 2\n");
  const auto r = run({"dist", "--metric", "deltaS", "--exact-limit", "8", (dir / "p3.edges").string(),
                      (dir / "k3.edges").string()});
  REQUIRE(r.code == 0);
  const auto res = results_of(r);
  CHECK(res.at("value").get<double>() == 1.0);
  CHECK(res.at("kind").get<std::string>() == "exact");
  const auto full = nlohmann::json::parse(r.out);
  CHECK(full.at("command") == "dist");
  CHECK(full.at("config").at("exact_limit") == 8);
  CHECK(full.contains("wall_time_s"));
  CHECK(full.at("version").contains("graphlim"));
}

TEST_CASE("fekete on a linear sequence") {
  const auto dir = scratch();
  std::string text = "n,a\n";
  for (int n = 1; n <= 50; ++n) text += std::to_string(n) + "," + std::to_string(n) + "\n";
  write(dir / "a.csv", text);
  const auto r = run({"fekete", "--input", (dir / "a.csv").string()});
  REQUIRE(r.code == 0);
  const auto res = results_of(r);
  CHECK(res.at("infimum").get<double>() == 1.0);
  CHECK(res.at("violation_count").get<int>() == 0);
  write(dir / "bad.csv", "1\nx\n");
  const auto bad = run({"fekete", "--input", (dir / "bad.csv").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("bad.csv:2") != std::string::npos);
}

TEST_CASE("ids writes CSV reports") {
  const auto dir = scratch();
  write(dir / "paths.json", R"({"d": 2, "members": [{"family": "path", "params": {"n": 100}},
                                                    {"family": "path", "params": {"n": 200}}]})");
  const auto out = dir / "ids_out";
  fs::remove_all(out);
  const auto r = run({"--out", out.string(), "ids", "--kernel", "laplacian", "--seq", (dir / "paths.json").string(),
                      "--reference", "arccos-1d"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "report.json"));
  std::istringstream csv(slurp(out / "sup_distance.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,sup_distance");
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double n = std::stod(line.substr(0, comma));
    const double d = std::stod(line.substr(comma + 1));
    CHECK(d <= 1.5 / n);
    ++rows;
  }
  CHECK(rows == 2);
  CHECK(fs::exists(out / "cdf_0_n100.csv"));
  for (const auto& entry : fs::directory_iterator(out)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("reports are deterministic apart from timing") {
  const auto dir = scratch();
  write(dir / "c.edges", graphlim::to_edge_list(graphlim::gen_random_regular(30, 3, 5)));
  auto strip = [](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("wall_time_s");
    return j.dump();
  };
  const auto a = run({"--seed", "3", "partition", "--strategy", "carve", "--eps", "0.3", (dir / "c.edges").string()});
  const auto b = run({"--seed", "3", "partition", "--strategy", "carve", "--eps", "0.3", (dir / "c.edges").string()});
  REQUIRE(a.code == 0);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("stats, limit and subadd subcommands") {
  const auto dir = scratch();
  write(dir / "seq.json", R"({"d": 2, "members": [{"family": "path", "params": {"n": 10}},
      {"family": "path", "params": {"n": 20}}, {"family": "path", "params": {"n": 40}}]})");
  const auto s = run({"stats", "--radius", "2", "--seq", (dir / "seq.json").string()});
  REQUIRE(s.code == 0);
  CHECK(results_of(s).contains("tail_sup"));
  const auto l = run({"limit", "--functional", "log-indep-sets", "--seq", (dir / "seq.json").string()});
  REQUIRE(l.code == 0);
  CHECK(results_of(l).at("kind") == "subadditive");
  const auto sub = run({"subadd", "--samples", (dir / "seq.json").string()});
  REQUIRE(sub.code == 0);
  CHECK(results_of(sub).at("passed").get<bool>());
  const auto csv = run({"--format", "csv", "stats", "--radius", "1", "--seq", (dir / "seq.json").string()});
  CHECK(csv.out.rfind("index,n,consecutive,tail_sup", 0) == 0);
}

TEST_CASE("invalid input exits with code one and names the problem") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"dist", "--metric", "cosine", "a", "b"}).code == 1);
  const auto missing = run({"stats", "/nonexistent/x.edges"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("/nonexistent/x.edges") != std::string::npos);
  const auto dir = scratch();
  write(dir / "bad.json", R"({"d": 2, "members": [], "extra": 1})");
  const auto bad = run({"stats", "--seq", (dir / "bad.json").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("extra") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

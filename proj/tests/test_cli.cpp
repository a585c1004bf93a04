#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "tmlab/json_io.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/seqgen.hpp"

using namespace tmlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tmlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("tmlab_cli_" + std::to_string(getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// CSV rows after the comment and header lines
std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  REQUIRE(line.rfind("# tmlab ", 0) == 0);
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> r;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) r.push_back(std::stod(tok));
    rows.push_back(r);
  }
  return rows;
}

std::string body(const fs::path& p) {
  std::ifstream in(p);
  std::string rest((std::istreambuf_iterator<char>(in)), {});
  return rest.substr(rest.find('\n') + 1);
}

}  // namespace

TEST_CASE("index parsing") {
  auto a = cli::parse_index("inf,2,-0.5");
  CHECK(std::isinf(a.p));
  CHECK(a.q == 2.0);
  CHECK(a.alpha == -0.5);
  CHECK_THROWS(cli::parse_index("1,2"));
  CHECK_THROWS(cli::parse_index("1,x,3"));
}

TEST_CASE("defaults") {
  auto c = cli::default_config();
  CHECK(c.grid_nr == 128);
  CHECK(c.eps_stop == 0.05);
  CHECK(c.L_list == std::vector<double>{5, 10, 20, 40});
  CHECK(c.indices.size() == 4);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code != 0);
  CHECK(run({"frobnicate"}).code != 0);
}

TEST_CASE("verify") {
  auto dir = scratch("verify");
  auto r = run({"verify", "--out", dir.string()});
  // the Moser J monotonicity invariant fails on the computed values
  CHECK(r.code == 0);
  CHECK(r.err.find("seqgen.moser_J_increasing") != std::string::npos);
  auto rep = read_json(dir / "verify_report.json");
  for (const char* s : {"radial", "functional", "rearrangement", "disc2d", "profiles", "seqgen"})
    CHECK(rep.at("suites").contains(s));
  CHECK(rep.at("suites").size() == 6);
  for (auto& [name, suite] : rep.at("suites").items()) {
    if (name != "seqgen") CHECK_MESSAGE(suite.at("passed").get<bool>(), name);
  }
}

TEST_CASE("verify rejects a corrupted profile") {
  auto dir = scratch("corrupt");
  auto bad = dir / "bad_profile.json";
  std::ofstream(bad) << R"({"nodes": [0, 2, 1], "values": [0, 1, 1]})";
  auto r = run({"verify", "--out", dir.string(), "--input", bad.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("load error") != std::string::npos);
  CHECK(r.err.find("bad_profile.json") != std::string::npos);

  auto good = dir / "good.json";
  write_json(good, to_json(make_moser(0.3)));
  CHECK(run({"verify", "--out", dir.string(), "--input", good.string()}).err.find("load error") ==
        std::string::npos);
}

TEST_CASE("moser-limit") {
  auto dir = scratch("ml");
  auto r = run({"moser-limit", "--out", dir.string()});
  REQUIRE(r.code == 0);
  std::string header;
  auto rows = read_csv(dir / "moser_limit.csv", &header);
  CHECK(header == "L,s,J_direct,J_repr,plateau,ramp");
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(std::abs(row[2] - row[3]) <= 1e-6 * row[2]);
  auto js = read_json(dir / "moser_limit.json");
  CHECK(js.size() == 4);
  // J column increasing: fails, J falls from about 8.05 towards 2 pi
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] > rows[i - 1][2]);

  CHECK(run({"moser-limit", "--out", dir.string(), "--L", "5,1"}).code != 0);
}

TEST_CASE("counterexample table") {
  auto dir = scratch("ce");
  REQUIRE(run({"counterexample", "--out", dir.string()}).code == 0);
  auto rows = read_csv(dir / "counterexample.csv");
  REQUIRE(rows.size() == 32);
  for (const auto& r : rows) {
    CHECK(r[1] == doctest::Approx(rows[0][1]).epsilon(1e-12));
    CHECK(r[2] == doctest::Approx(rows[0][2]).epsilon(1e-12));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] < rows[i - 1][3]);
  CHECK(rows.back()[3] < 0.3 * rows.front()[3]);
}

TEST_CASE("norms") {
  auto dir = scratch("norms");
  auto zero = dir / "zero.json";
  write_json(zero, to_json(RadialProfile()));
  REQUIRE(run({"norms", "--out", dir.string(), "--input", zero.string()}).code == 0);
  auto rows = read_csv(dir / "norms.csv");
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r[3] == 0.0);
    CHECK(r[4] == 0.0);
  }

  auto m = dir / "moser.json";
  write_json(m, to_json(make_moser(std::exp(-3.0))));
  REQUIRE(run({"norms", "--out", dir.string(), "--input", m.string(), "--index", "inf,inf,-0.5",
               "--index", "2,2,0"})
              .code == 0);
  rows = read_csv(dir / "norms.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][3] == doctest::Approx(expl2_quasinorm(rearrange_radial(make_moser(std::exp(-3.0))))));

  // a stored rearrangement with offsets reads back to the same function
  auto f = rearrange_radial(make_moser_sub(2.0, 0.8) + make_moser_sub(3.0, 0.4).scaled(-0.5));
  auto back = rearranged_from_json(json::parse(to_json(f).dump()));
  for (double tau : {1e-6, 1e-3, 0.01, 0.2, 0.5, 0.9})
    CHECK(back(tau) == doctest::Approx(f(tau)).epsilon(1e-15));
  auto rf = dir / "rearranged.json";
  write_json(rf, to_json(f));
  REQUIRE(run({"norms", "--out", dir.string(), "--input", rf.string(), "--index", "2,2,0"}).code == 0);
  CHECK(read_csv(dir / "norms.csv")[0][3] == doctest::Approx(lz_quasinorm(f, {2, 2, 0}).value));

  CHECK(run({"norms", "--out", dir.string(), "--input", (dir / "missing.json").string()}).code != 0);
  CHECK(run({"norms", "--out", dir.string(), "--input", zero.string(), "--index", "1,2"}).code != 0);
}

TEST_CASE("generate and decompose are reproducible") {
  auto a = scratch("gen_a"), b = scratch("gen_b");
  for (const auto& d : {a, b}) {
    REQUIRE(run({"generate", "--out", d.string(), "--kind", "superposition", "--k-max", "4",
                 "--grid-nr", "64", "--grid-ntheta", "64"})
                .code == 0);
    REQUIRE(run({"decompose", "--out", d.string(), "--input",
                 (d / "superposition" / "manifest.json").string(), "--grid-nr", "64",
                 "--grid-ntheta", "64"})
                .code == 0);
  }
  CHECK(body(a / "decomposition.csv") == body(b / "decomposition.csv"));
  auto da = read_json(a / "decomposition.json"), db = read_json(b / "decomposition.json");
  CHECK(da.dump() == db.dump());
  for (const char* kind : {"moser", "counterexample", "vanishing"})
    CHECK(run({"generate", "--out", a.string(), "--kind", kind, "--k-max", "3", "--grid-nr", "64",
               "--grid-ntheta", "64"})
              .code == 0);
  auto seq = load_sequence(a / "counterexample" / "manifest.json");
  CHECK(seq.size() == 3);
  CHECK(run({"generate", "--out", a.string(), "--kind", "nope"}).code != 0);
}

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ppx/json_io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace ppx;
using ppx::test::fixture;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("PPX_BIN");
  return b && *b ? b : PPX_BIN_DEFAULT;
}

Run run(const std::string& args) {
  Run r;
  const std::string cmd = bin() + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("ppx_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check exit codes") {
    Run r = run("check " + fixture("ce1_Y.json") + " --regular");
    CHECK(r.code == 1);
    CHECK(r.out.find("plex Omega lacks spherical boundary") != std::string::npos);

    CHECK(run("check " + fixture("globes/d3.json") + " --regular --spherical").code == 0);
    CHECK(run("check " + fixture("globes/d3.json") + " --polyplex").code == 0);
    CHECK(run("check " + fixture("ce1_Y.json") + " --polyplex").code == 0);

    const fs::path d = scratch("bad");
    std::ofstream(d / "bad.json") << "{\"cells\": [";
    CHECK(run("check " + (d / "bad.json").string()).code == 2);
    std::ofstream(d / "dangling.json") << R"({"cells": [{"id": 0, "dim": 1, "src": {"gen": 5}, "tgt": {"gen": 5}}]})";
    CHECK(run("check " + (d / "dangling.json").string()).code == 2);
    CHECK(run("check " + (d / "missing.json").string()).code == 2);
    fs::remove_all(d);
  }

  TEST_CASE("check reports the sigma defect") {
    const Run r = run("--json check " + fixture("ce1_Yprime.json") + " --polyplex");
    const json j = json::parse(r.out);
    const json meta = read_json(fixture("ce1_Yprime.json"));
    CHECK(j["sigma_test"] == meta["expect"]["sigma_test"]);
    CHECK(r.code == (j["polyplex"].get<bool>() ? 0 : 1));
  }

  TEST_CASE("classify") {
    const Run r = run("--json classify " + fixture("orientals/o2.json"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["dim"] == 2);
    CHECK(j[0]["cells"] == 7);
    CHECK(j[0]["plex"] == true);
    CHECK(j[0]["regular"] == true);
  }

  TEST_CASE("constructions regenerate the fixtures") {
    const fs::path d = scratch("fixtures");
    for (int n = 0; n <= 5; ++n) {
      const std::string g = "d" + std::to_string(n) + ".json", o = "o" + std::to_string(n) + ".json";
      REQUIRE(run("--out " + (d / g).string() + " globe " + std::to_string(n)).code == 0);
      CHECK(slurp(d / g) == slurp(fixture("globes/" + g)));
      REQUIRE(run("--out " + (d / o).string() + " oriental " + std::to_string(n)).code == 0);
      CHECK(slurp(d / o) == slurp(fixture("orientals/" + o)));
      if (n == 0) continue;
      const std::string b = "bd" + std::to_string(n) + ".json";
      REQUIRE(run("--out " + (d / b).string() + " globe --boundary " + std::to_string(n)).code == 0);
      CHECK(slurp(d / b) == slurp(fixture("globes/" + b)));
    }
    fs::remove_all(d);
  }

  TEST_CASE("tensor, cone and cube output") {
    const json sq = json::parse(run("tensor " + fixture("globes/d1.json") + " " + fixture("globes/d1.json")).out);
    CHECK(sq["complex"]["grades"] == json::array({4, 4, 1}));
    CHECK(sq.contains("universal"));
    const json c2 = json::parse(run("cube 2").out);
    CHECK(c2["complex"]["grades"] == sq["complex"]["grades"]);
    const json c = json::parse(run("cone " + fixture("orientals/o1.json")).out);
    CHECK(c["complex"]["grades"] == json::array({3, 3, 1}));
    // d squares to zero
    const json& dd = sq["complex"]["d"];
    for (std::size_t i = 0; i < dd[1].size(); ++i) {
      long s = 0;
      for (std::size_t j = 0; j < dd[1][i].size(); ++j) s += dd[1][i][j].get<long>() * dd[2][j][0].get<long>();
      CHECK(s == 0);
    }
    CHECK(run("oriental 9").code == 1);
  }

  TEST_CASE("realize and embed") {
    Run r = run("--json realize " + fixture("globes/bd2.json") + " --homology --max-deg 2");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["homology"][0]["rank"] == 1);
    CHECK(j["homology"][1]["rank"] == 1);
    CHECK(j["homology"][2]["rank"] == 0);

    r = run("realize " + fixture("ce1_Y.json"));
    CHECK(r.code == 1);

    const fs::path d = scratch("embed");
    std::ofstream(d / "tri.json") << R"({"simplices": [[0,1,2],[0,1,2]], "faces": [[[],[],[]], [[1,0],[2,0],[2,1]]]})";
    r = run("embed " + (d / "tri.json").string());
    REQUIRE(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["complex"]["grades"] == json::array({3, 3}));
    fs::remove_all(d);
  }

  TEST_CASE("enumerate writes a manifest and reruns identically") {
    const fs::path a = scratch("enum_a"), b = scratch("enum_b");
    const std::string args = " --dim 2 --max-cells 7 --kind plex --regular ";
    REQUIRE(run("enumerate" + args + a.string()).code == 0);
    REQUIRE(run("enumerate" + args + b.string()).code == 0);
    json ma = read_json((a / "manifest.json").string()), mb = read_json((b / "manifest.json").string());
    CHECK(ma["counts"]["items"].get<std::size_t>() == ma["outputs"].size());
    for (const auto& f : ma["outputs"]) CHECK(slurp(a / f.get<std::string>()) == slurp(b / f.get<std::string>()));
    ma.erase("elapsed_ms");
    mb.erase("elapsed_ms");
    CHECK(ma == mb);
    fs::remove_all(a);
    fs::remove_all(b);
    CHECK(run("enumerate --dim 9").code == 1);
  }

  TEST_CASE("verify-paper") {
    Run r = run("--json verify-paper cone");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["pass"] == true);
    CHECK(run("verify-paper sigma").code == 0);
    CHECK(run("verify-paper nonsense").code != 0);
  }
}

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "augcat/cli.hpp"
#include "augcat/serialize.hpp"

using namespace augcat;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "augcat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "augcat_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

int count(const std::string& s, const std::string& needle) {
  int c = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("shape build then verify") {
  const auto f = temp("simplex3.json");
  REQUIRE(run({"shape", "build", "--kind", "simplex", "--max", "3", "-o", f}).code == 0);
  const auto r = run({"shape", "verify", f});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "pass");
}

TEST_CASE("Kan check on the capped monoid nerve exits 1 with a witness") {
  const auto f = temp("monoid.json");
  const auto n = run({"nerve", "--group", "monoid:2", "--cap", "3"});
  REQUIRE(n.code == 0);
  write(f, n.out);
  const auto r = run({"check", "kan", f, "--cap", "2"});
  CHECK(r.code == 1);
  const auto j = json::parse(r.out);
  CHECK(j["verdict"] == "fail");
  CHECK(j["report"]["violations"].size() > 0);
}

TEST_CASE("hom-count with an empty source is 1") {
  const auto a = temp("empty.json"), b = temp("d2.json");
  write(a, R"({"shape": {"kind": "simplex", "max": 2}, "truncation": 2, "levels": {}, "action": {}})");
  write(b, run({"presheaf", "representable", "--kind", "simplex", "--max", "2", "--object", "[2]"}).out);
  const auto r = run({"presheaf", "hom-count", a, b});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 1);
}

TEST_CASE("diagnostics and exit codes") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"frobnicate"}).err.find("unknown subcommand") != std::string::npos);
  const auto bad = temp("bad.json");
  write(bad, "{not json");
  const auto r = run({"check", "kan", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("malformed JSON") != std::string::npos);
  const auto t = temp("trunc.json");
  write(t, R"({"shape": {"kind": "simplex", "max": 2}, "truncation": 5, "levels": {}})");
  const auto u = run({"check", "kan", t});
  CHECK(u.code == 2);
  CHECK(u.err.find("truncation mismatch") != std::string::npos);
  CHECK(run({"amalgamate", "--max", "2"}).code == 1);
}

TEST_CASE("reports are deterministic") {
  const auto f = temp("z2.json");
  write(f, run({"nerve", "--group", "Z/2"}).out);
  const auto a = run({"pi", "--object", "[1]", "--basepoint", "*", f});
  const auto b = run({"pi", "--object", "[1]", "--basepoint", "*", f});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["class_count"] == 2);
}

TEST_CASE("DOT export") {
  const auto tree = run({"export", "--tree", "(||)"});
  CHECK(tree.code == 0);
  CHECK(count(tree.out, " -> ") == 3);
  const auto f = temp("simplex2.json");
  run({"shape", "build", "--kind", "simplex", "--max", "2", "-o", f});
  const auto d = run({"export", f});
  CHECK(count(d.out, "\" -> \"") == 8);
  const auto e = temp("emptycat.json");
  write(e, R"({"objects": [], "morphisms": []})");
  const auto g = run({"export", e});
  CHECK(g.out == "digraph category {\n}\n");
}

TEST_CASE("nerve output round-trips through the reader") {
  const auto n = run({"nerve", "--cyclic", "--group", "Z/2", "--cap", "2"});
  REQUIRE(n.code == 0);
  const auto j = json::parse(n.out);
  ShapeRegistry reg;
  CHECK(presheaf_to_json(*presheaf_from_json(j, reg)) == j);
}

TEST_CASE("adjoint check over the cyclic shape") {
  const auto x = temp("pt.json"), y = temp("cz2.json");
  write(x, run({"presheaf", "representable", "--kind", "simplex", "--max", "2", "--object", "[0]"}).out);
  write(y, run({"nerve", "--cyclic", "--group", "Z/2", "--cap", "2"}).out);
  const auto r = run({"adjoint", "check", "--shape", "cyclic", x, y});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["bijection"] == true);
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "supamal/canonical.hpp"
#include "supamal/cli.hpp"
#include "supamal/io.hpp"

using namespace supamal;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "supamal_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("emit then load keeps the canonical form") {
  auto s = load_structure(fixture("diamond_involutions.json"));
  auto back = structure_from_json(nlohmann::ordered_json::parse(dump(to_json(s))));
  CHECK(canonical_form(back).signature == canonical_form(s).signature);
  CHECK(back == s);
  CHECK(dump(to_json(back)) == dump(to_json(s)));
}

TEST_CASE("check accepts every fixture") {
  for (const auto& e : fs::directory_iterator(FIXTURE_DIR)) CHECK(cli({"check", e.path().string()}).code == kOk);
}

TEST_CASE("extend writes the largest closure") {
  auto out = (scratch() / "extended.json").string();
  REQUIRE(cli({"extend", fixture("chain_dpq.json"), "-o", out}).code == kOk);
  auto s = load_structure(out);
  CHECK(s.names[static_cast<std::size_t>((*s.op("K"))(s.element("p")))] == "q");
}

TEST_CASE("input errors exit with 2") {
  auto cyclic = write("cyclic.json", R"({"kind": "poset", "elements": ["a", "b"], "order": [["a", "b"], ["b", "a"]]})");
  auto r = cli({"check", cyclic});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("a") != std::string::npos);
  CHECK(r.err.find("b") != std::string::npos);
  auto off = write("off.json", R"({"kind": "poset", "elements": ["a"], "order": [],
    "partial_ops": [{"name": "G", "property": "B1", "arity": 1, "values": {"a": "z"}}]})");
  CHECK(cli({"check", off}).code == kUsage);
  CHECK(cli({"check", (scratch() / "missing.json").string()}).code == kUsage);
  CHECK(cli({"decide", "--theory", "poset", "--ops", "K:B3", "forall x . K(y) = x"}).code == kUsage);
  CHECK(cli({"no-such-command"}).code == kUsage);
}

TEST_CASE("decide reports verdicts through the exit code") {
  CHECK(cli({"decide", "--theory", "poset", "--ops", "K:B3", "forall x . x <= K(x)"}).code == kOk);
  auto r = cli({"decide", "--theory", "jsl", "--ops", "K:B3", "forall x y . K(x) \\/ K(y) = K(x \\/ y)"});
  CHECK(r.code == kInvalid);
  CHECK(r.out.find("invalid") != std::string::npos);
}

TEST_CASE("bounds exit with 3") {
  CHECK(cli({"free", "--gens", "4"}).code == kBound);
  CHECK(cli({"decide", "--theory", "jsl", "--ops", "K:B3", "forall a b c d e f . a <= b \\/ c \\/ d \\/ e \\/ f"})
            .code == kBound);
  // general lattices lack a generator bound and are refused outright
  CHECK(cli({"decide", "--theory", "lattice", "--ops", "K:B3", "forall x . x <= K(x)"}).code == kUsage);
}

TEST_CASE("word problem and enumeration") {
  CHECK(cli({"eq", "K(K(x))", "K(x)"}).code == kOk);
  CHECK(cli({"eq", "K(x) \\/ K(y)", "K(x \\/ y)"}).code == kInvalid);
  auto r = cli({"enumerate", "--kind", "poset", "--size", "4", "--count"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("16") != std::string::npos);
}

TEST_CASE("outputs are reproducible") {
  auto a = cli({"free", "--gens", "2"});
  auto b = cli({"free", "--gens", "2"});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
}

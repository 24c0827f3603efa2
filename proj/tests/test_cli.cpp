#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "fourneg/cli.hpp"
#include "fourneg/errors.hpp"
#include "fourneg/report.hpp"
#include "json.hpp"

using namespace fourneg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& body)
      : path_(std::filesystem::temp_directory_path() / ("fourneg_test_" + name)) {
    std::ofstream(path_) << body;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

const char* kO6 =
    "lattice O6\n"
    "elements 0 x y yp xp 1\n"
    "covers 0<x x<y y<1 0<yp yp<xp xp<1\n"
    "ortho x:xp y:yp 0:1\n";

}  // namespace

TEST_CASE("full battery on O6") {
  const Run r = run({"all", "catalog:O6"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(has(r.out, "orthomodular: false"));
  CHECK(has(r.out, "internal iso to L: present"));
  CHECK(has(r.out, "violations: 0"));
}

TEST_CASE("no-go on B2") {
  const Run r = run({"nogo", "catalog:B2"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "De Morgan: true; boolean: true; no-go: degenerate case"));
  const Run o6 = run({"nogo", "catalog:O6"});
  CHECK(o6.code == 0);
  CHECK(has(o6.out, "De Morgan: false; boolean: false"));
}

TEST_CASE("malformed lattice file reports the line") {
  const TempFile bad("bad.txt", std::string(kO6) + "bogus 1 2\n");
  const Run r = run({"check", bad.path()});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(has(r.err, "line 5"));
  CHECK(has(r.err, "bogus"));

  const TempFile cyclic("cyclic.txt", "lattice C\nelements 0 a 1\ncovers 0<a a<0 a<1\n");
  CHECK(run({"check", cyclic.path()}).code == 2);
}

TEST_CASE("lattice file and negation map") {
  const TempFile o6("o6.txt", kO6);
  const Run r = run({"check", o6.path()});
  CHECK(r.code == 0);
  CHECK(has(r.out, "orthomodular: false"));
  CHECK(has(r.out, "[negation.profile]"));

  const TempFile neg("neg.txt",
                     "negmap O6\nmap 0:1\nmap x:1\nmap y:xp\nmap yp:1\nmap xp:yp\nmap 1:0\n");
  const Run n = run({"check", o6.path(), "--negmap", neg.path()});
  CHECK(n.code == 0);
  CHECK(has(n.out, "[negation.n1]"));
  CHECK(run({"check", o6.path(), "--negmap", "/nonexistent/neg.txt"}).code == 2);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check", "catalog:NOPE"}).code == 2);
  CHECK(run({"check", "subclop:O6"}).code == 2);
  CHECK(run({"daseinise", "catalog:O6", "zz"}).code == 2);
  const Run s = run({"logic", "check", "--model", "catalog:B2", "--sequent", "p & |- q"});
  CHECK(s.code == 2);
  CHECK(has(s.err, "position 4"));
  CHECK(run({"logic", "check", "--model", "chain:1", "--sequent", "p |- p"}).code == 2);
  CHECK(run({"logic", "saturate", "--logic", "int"}).code == 2);
  CHECK(run({"logic", "check", "--model", "catalog:B2", "--sequent", "@p |- p"}).code == 0);
  const Run missing = run({"logic", "check", "--model", "chain:3", "--sequent", "p -< q |- p"});
  CHECK(missing.code == 0);
  const Run too_many = run({"--max-assignments", "10", "logic", "check", "--model", "subclop:O6",
                            "--sequent", "p |- q"});
  CHECK(too_many.code == 2);
  CHECK(has(too_many.err, "exceeds the bound 10"));
}

TEST_CASE("size guard turns into a skipped claim") {
  const Run r = run({"--max-subclop", "3", "all", "catalog:O6"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "skipped"));
  CHECK(run({"--max-subclop", "3", "starsuite", "catalog:O6"}).code == 2);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"all", "catalog:MO2"},
        std::vector<std::string>{"--json", "internal", "catalog:B3"},
        std::vector<std::string>{"logic", "countermodel", "--sequent", "p |- **p"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json report") {
  const Run r = run({"--json", "bridge", "catalog:MO2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "--json bridge catalog:MO2");
  CHECK(j["version"] == kVersion);
  CHECK(std::regex_match(j["input_digest"].get<std::string>(), std::regex("fnv1a64:[0-9a-f]{16}")));
  CHECK(j["violations"] == 0);
  const Run text = run({"bridge", "catalog:MO2"});
  std::size_t claims = 0;
  for (const auto& s : j["sections"])
    for (const auto& c : s["claims"]) {
      ++claims;
      CHECK(has(text.out, "[" + c["id"].get<std::string>() + "]"));
    }
  CHECK(claims > 0);

  // The digest covers file contents, not only the path.
  const TempFile f("digest.txt", kO6);
  const auto d1 = nlohmann::json::parse(run({"--json", "check", f.path()}).out)["input_digest"];
  std::ofstream(f.path(), std::ios::app) << "# comment\n";
  const auto d2 = nlohmann::json::parse(run({"--json", "check", f.path()}).out)["input_digest"];
  CHECK(d1 != d2);
}

TEST_CASE("violations drive exit status") {
  Report R("test", 0);
  Section& s = R.section("s");
  s.check("s.ok", "ok", true, "holds", "");
  CHECK(R.violations() == 0);
  s.check("s.bad", "bad", false, "fails", "x=1");
  s.fact("s.info", "info", false, "not a violation", "");
  CHECK(R.violations() == 1);
  CHECK(has(R.to_text(), "bad: VIOLATED  [s.bad]  witness: x=1"));
  CHECK(R.to_json()["violations"] == 1);
}

TEST_CASE("catalog listing and model URIs") {
  const Run r = run({"catalog"});
  CHECK(r.code == 0);
  for (const char* name : {"B1", "B2", "B3", "B4", "O6", "MO2", "MO3"})
    CHECK(has(r.out, std::string("[catalog.") + name + "]"));
  const Run one = run({"catalog", "O6"});
  CHECK(has(one.out, "elements"));
  CHECK(load_model("chain:4", 20).lattice->size() == 4);
  CHECK(load_model("subclop:B2", 20).lattice->size() == 4);
  CHECK(load_model("catalog:MO2", 20).qneg.has_value());
  CHECK_THROWS_AS(load_model("chain:x", 20), Error);
  CHECK_THROWS_AS(load_lattice("subclop:O6"), Error);
}

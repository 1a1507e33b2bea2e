#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cpk/cli.hpp"

using namespace cpk;
using namespace cpk::cli;

namespace {

const std::vector<std::string> kCmd{"test"};

struct Run {
  int code;
  std::string out;
};

Run run_exe(const std::string& args) {
  std::string cmd = std::string(CPK_EXE) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("cpk_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv("CPK_EXT_BOUND", value, 1); }
  ~EnvGuard() { unsetenv("CPK_EXT_BOUND"); }
};

const Json& final_of(const Report& r) { return r.results.at("final"); }

}  // namespace

TEST_CASE("fnv1a_digest") {
  CHECK(fnv1a_digest("") == "cbf29ce484222325");
  CHECK(fnv1a_digest("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_digest("foobar") == "85944171f73967e8");
}

TEST_CASE("every fixture round-trips through JSON") {
  for (const auto& f : fixtures()) {
    const std::string text = dump_document(f.document);
    auto doc = parse_document(text);
    CHECK(doc.kind() == f.document.kind());
    CHECK(dump_document(doc) == text);
  }
}

TEST_CASE("parse_document rejects malformed input") {
  const std::string flip = dump_document(fixture("ex3.5-flip-2-2").document);
  CHECK_THROWS_AS(parse_document(flip.substr(0, flip.size() / 2)), MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"vertices": []})"), MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "torus"})"), MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "graph", "vertices": ["v"], "edges": [{"id": "e", "src": "v", "rng": "w"}]})"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "graph", "vertices": ["v"], "edges": [{"id": "e", "src": "v"}]})"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "graph", "vertices": "v", "edges": []})"), MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "two_graph", "vertices": ["v"],
      "edges1": [{"id": "e", "src": "v", "rng": "v"}], "edges2": [{"id": "f", "src": "v", "rng": "v"}],
      "chi": [[["e", "g"], ["f", "e"]]]})"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "abstract_kdata", "K0": {"rank": 0, "torsion": [4, 2]},
      "K1": {"rank": 0, "torsion": []}, "action1": {"K0": [[1, 0], [0, 1]], "K1": []},
      "action2": {"K0": [[1, 0], [0, 1]], "K1": []}})"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "abstract_kdata", "K0": {"rank": 1, "torsion": []},
      "K1": {"rank": 1, "torsion": []}, "action1": {"K0": [[1, 0]], "K1": [[1]]},
      "action2": {"K0": [[1]], "K1": [[1]]}})"),
                  MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "unitary_chi", "m": 1, "n": 1, "matrix": [[1]]})"), MalformedInput);
  CHECK_THROWS_AS(parse_document(R"({"kind": "permutation", "vertices": ["v", "w"], "perm1": ["v"]})"),
                  MalformedInput);
}

TEST_CASE("abstract documents keep large integers exact") {
  auto doc = parse_document(R"({"kind": "abstract_kdata", "K0": {"rank": 1, "torsion": []},
      "K1": {"rank": 1, "torsion": []}, "action1": {"K0": [["123456789012345678901234567890"]], "K1": [[1]]},
      "action2": {"K0": [[1]], "K1": [[1]]}})");
  const auto& d = std::get<AbstractKData>(doc.payload);
  CHECK(d.action1_k0.matrix()(0, 0) == Integer("123456789012345678901234567890"));
  CHECK(parse_document(dump_document(doc)).kind() == DocKind::AbstractKData);
}

TEST_CASE("validate command") {
  CHECK(run_validate(kCmd, "fixture:ex3.5-flip-2-2", true).exit_code == kOk);

  auto sink = temp_file("sink.json", R"({"kind": "graph", "vertices": ["v", "w"],
      "edges": [{"id": "e", "src": "v", "rng": "w"}, {"id": "l", "src": "v", "rng": "v"}]})");
  auto r = run_validate(kCmd, sink, true);
  CHECK(r.exit_code == kInvalid);
  REQUIRE(r.results["violations"].size() == 1);
  CHECK(r.results["violations"][0].get<std::string>().find("'w' is a sink") != std::string::npos);
  CHECK(run_validate(kCmd, sink, false).exit_code == kOk);

  auto truncated = temp_file("truncated.json", R"({"kind": "graph", "vertices": ["v"], "edg)");
  auto t = run_validate(kCmd, truncated, true);
  CHECK(t.exit_code == kMalformed);
  CHECK_FALSE(t.error.empty());

  CHECK(run_validate(kCmd, "/nonexistent/doc.json", true).exit_code == kMalformed);
  CHECK(run_validate(kCmd, "fixture:no-such-fixture", true).exit_code == kMalformed);

  auto bad_chi = temp_file("badchi.json", R"({"kind": "two_graph", "vertices": ["v"],
      "edges1": [{"id": "e1", "src": "v", "rng": "v"}, {"id": "e2", "src": "v", "rng": "v"}],
      "edges2": [{"id": "f1", "src": "v", "rng": "v"}],
      "chi": [[["e1", "f1"], ["f1", "e1"]], [["e2", "f1"], ["f1", "e1"]]]})");
  auto c = run_validate(kCmd, bad_chi, true);
  CHECK(c.exit_code == kInvalid);
  CHECK(c.results["violations"].size() >= 2);

  auto noncommuting = temp_file("noncommuting.json", R"({"kind": "permutation", "vertices": ["a", "b", "c"],
      "perm1": ["b", "a", "c"], "perm2": ["a", "c", "b"]})");
  CHECK(run_validate(kCmd, noncommuting, true).exit_code == kInvalid);

  auto nonunitary = temp_file("nonunitary.json", R"({"kind": "unitary_chi", "m": 1, "n": 2,
      "matrix": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]})");
  auto u = run_validate(kCmd, nonunitary, true);
  CHECK(u.exit_code == kInvalid);
  CHECK(u.results["violations"][0].get<std::string>().find("not unitary") != std::string::npos);
}

TEST_CASE("every bundled fixture validates") {
  for (const auto& f : fixtures()) {
    auto r = run_validate(kCmd, "fixture:" + f.id, true);
    INFO(f.id);
    CHECK(r.exit_code == kOk);
  }
}

TEST_CASE("ktheory command examples") {
  auto flip = run_ktheory(kCmd, "fixture:ex4.6-flip-3-3", Route::Both, false);
  CHECK(flip.exit_code == kOk);
  CHECK(final_of(flip)["text"] == "(Z_2, Z_2)");
  CHECK(final_of(flip)["status"] == "Determined");
  CHECK(flip.results["consistent"] == true);
  CHECK(flip.results["diagram"]["intersection_exact"] == true);
  CHECK(flip.results["diagram"]["sum_exact"] == true);
  CHECK(flip.results["stage1"]["E1"]["text"] == "(Z_2, 0)");
  CHECK(flip.results["toeplitz"]["E1"]["text"] == "(Z, 0)");
  CHECK(flip.results["sum_ideal"]["text"] == "(Z + Z_2, 0)");

  auto p2 = temp_file("p2.json", R"({"kind": "abstract_kdata", "K0": {"rank": 1, "torsion": []},
      "K1": {"rank": 1, "torsion": []}, "action1": {"K0": [[2]], "K1": [[1]]}, "action2": {"K0": [[1]], "K1": [[1]]}})");
  auto a = run_ktheory(kCmd, p2, Route::Both, false);
  CHECK(a.exit_code == kOk);
  CHECK(a.results["stage1"]["E1"]["text"] == "(Z, Z)");
  CHECK(a.results["diagram"]["applicable"] == false);

  auto torus = run_ktheory(kCmd, "fixture:ex1.2.1-toeplitz-circle", Route::Both, false);
  CHECK(final_of(torus)["text"] == "(Z, Z)");
  auto loops = temp_file("loops.json", dump_document({flip_two_graph(1, 1)}));
  CHECK(final_of(run_ktheory(kCmd, loops, Route::Both, false))["text"] == "(Z^2, Z^2)");

  for (auto route : {Route::Iterated, Route::Diagram})
    CHECK(final_of(run_ktheory(kCmd, "fixture:ex3.4-cycle-2x3", route, false))["text"] == "(Z^2, Z^2)");
  CHECK_FALSE(run_ktheory(kCmd, "fixture:ex3.4-cycle-2x3", Route::Iterated, false).results.contains("diagram"));
  CHECK_FALSE(run_ktheory(kCmd, "fixture:ex3.4-cycle-2x3", Route::Diagram, false).results.contains("iterated"));
}

TEST_CASE("ktheory command reports ambiguity instead of guessing") {
  auto r = run_ktheory(kCmd, "fixture:ext-ambiguous-z2", Route::Both, false);
  CHECK(r.exit_code == kOk);
  const auto& s1 = r.results["stage1"]["E1"];
  CHECK(s1["status"] == "AmbiguousExtension");
  REQUIRE(s1["K0"]["candidates"].size() == 2);
  CHECK(s1["K0"]["candidates"][0]["text"] == "Z_4");
  CHECK(s1["K0"]["candidates"][1]["text"] == "Z_2 + Z_2");
  CHECK(s1["K0"]["group"].is_null());
  CHECK(final_of(r)["status"] != "Determined");
  CHECK(r.watermarks.empty());

  auto split = run_ktheory(kCmd, "fixture:ext-ambiguous-z2", Route::Both, true);
  CHECK(split.exit_code == kOk);
  CHECK(split.results["stage1"]["E1"]["K0"]["group"]["text"] == "Z_2 + Z_2");
  CHECK(split.results["stage1"]["E1"]["assumed_split"] == true);
  REQUIRE(split.watermarks.size() == 1);
  CHECK(split.watermarks[0].find("assume-split") != std::string::npos);
}

TEST_CASE("ktheory command error mapping") {
  CHECK(run_ktheory(kCmd, "fixture:ex3.5-unitary-chi", Route::Both, false).exit_code == kInvalid);
  {
    EnvGuard env("1");
    auto r = run_ktheory(kCmd, "fixture:ext-ambiguous-z2", Route::Both, false);
    CHECK(r.exit_code == kResource);
    CHECK(r.error.find("CPK_EXT_BOUND") != std::string::npos);
  }
  {
    EnvGuard env("lots");
    CHECK(run_ktheory(kCmd, "fixture:ext-ambiguous-z2", Route::Both, false).exit_code == kMalformed);
  }
  auto sink = temp_file("sink2.json", R"({"kind": "graph", "vertices": ["v", "w"],
      "edges": [{"id": "e", "src": "v", "rng": "w"}, {"id": "l", "src": "v", "rng": "v"}]})");
  CHECK(run_ktheory(kCmd, sink, Route::Both, false).exit_code == kInvalid);
}

TEST_CASE("ktheory --route both exits 0 on every determined fixture") {
  for (const auto& f : fixtures()) {
    if (f.document.kind() == DocKind::UnitaryChi) continue;
    auto r = run_ktheory(kCmd, "fixture:" + f.id, Route::Both, false);
    INFO(f.id);
    CHECK(r.exit_code == kOk);
    if (r.results.contains("diagram") && r.results["diagram"]["applicable"] == true) {
      CHECK(r.results["diagram"]["intersection_exact"] == true);
      CHECK(r.results["diagram"]["sum_exact"] == true);
    }
  }
}

TEST_CASE("fock-check command") {
  auto flip = run_fock_check(kCmd, "fixture:ex3.5-flip-2-2", 3, kDefaultFockTol, kDefaultFockCap, false);
  CHECK(flip.exit_code == kOk);
  CHECK(flip.results["all_pass"] == true);
  for (const auto& d : flip.results["defects"]) CHECK(d["defect"].get<double>() == 0.0);

  auto rot = run_fock_check(kCmd, "fixture:ex3.5-unitary-chi", 3, kDefaultFockTol, kDefaultFockCap, false);
  CHECK(rot.exit_code == kOk);
  for (const auto& d : rot.results["defects"]) CHECK(d["defect"].get<double>() < 1e-12);

  UnitaryChi u = rotation_chi(0.3, 0.2);
  u.matrix *= 1.25;
  auto corrupted = temp_file("corrupted.json", dump_document({u}));
  auto c = run_fock_check(kCmd, corrupted, 3, kDefaultFockTol, kDefaultFockCap, false);
  CHECK(c.exit_code == kInvalid);
  auto cu = run_fock_check(kCmd, corrupted, 3, kDefaultFockTol, kDefaultFockCap, true);
  CHECK(cu.exit_code == kInvalid);
  CHECK(cu.results["all_pass"] == false);
  CHECK(cu.watermarks.size() == 1);

  CHECK(run_fock_check(kCmd, "fixture:ex4.6-flip-3-3", 12, kDefaultFockTol, kDefaultFockCap, false).exit_code ==
        kResource);
  CHECK(run_fock_check(kCmd, "fixture:ex4.7-abstract-p2-p3", 2, kDefaultFockTol, kDefaultFockCap, false).exit_code ==
        kInvalid);
  auto single = run_fock_check(kCmd, "fixture:ex1.2.3-swap-crossed-product", 3, kDefaultFockTol, kDefaultFockCap, false);
  CHECK(single.exit_code == kOk);
  CHECK(single.results["defects"].back()["vacuum_rank"] == 2);
}

TEST_CASE("pullback command") {
  auto rose3 = temp_file("rose3.json", dump_document({rose(3)}));
  auto identity = temp_file("id_cover.json", R"({"vertices": ["v"], "map": {"v": "v"}})");
  auto twofold = temp_file("two_cover.json", R"({"vertices": ["x", "y"], "map": {"x": "v", "y": "v"}})");
  auto id = run_pullback(kCmd, rose3, identity);
  CHECK(id.exit_code == kOk);
  CHECK(id.results["edges"] == 3);
  CHECK(run_pullback(kCmd, rose3, twofold).results["edges"] == 12);

  auto cycle = temp_file("cycle.json", R"({"kind": "graph", "vertices": ["v", "w"],
      "edges": [{"id": "a", "src": "v", "rng": "w"}, {"id": "b", "src": "w", "rng": "v"}]})");
  auto cycle_cover = temp_file("cycle_cover.json", R"({"vertices": ["v0", "v1", "w0", "w1"],
      "map": {"v0": "v", "v1": "v", "w0": "w", "w1": "w"}})");
  auto c = run_pullback(kCmd, cycle, cycle_cover);
  CHECK(c.results["edges"] == 8);
  auto doc = parse_document(c.results["document"].dump());
  CHECK(validate_document(doc).ok());

  auto partial = temp_file("partial.json", R"({"vertices": ["v0"], "map": {"v0": "v"}})");
  CHECK(run_pullback(kCmd, cycle, partial).exit_code == kInvalid);
  CHECK(run_pullback(kCmd, "fixture:ex3.5-flip-2-2", identity).exit_code == kMalformed);
}

TEST_CASE("examples command") {
  auto r = run_examples(kCmd);
  std::vector<std::string> ids;
  for (const auto& f : r.results["fixtures"]) ids.push_back(f["id"]);
  CHECK(std::find(ids.begin(), ids.end(), "ex4.6-flip-3-3") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "ex3.5-unitary-chi") != ids.end());
  CHECK(report_json(run_examples(kCmd)).dump() == report_json(r).dump());
}

TEST_CASE("reports round-trip and digests are deterministic") {
  for (const auto& id : {"ex4.6-flip-3-3", "ext-ambiguous-z2", "ex1.2.1-cuntz-O3"}) {
    auto r = run_ktheory(kCmd, std::string("fixture:") + id, Route::Both, true);
    auto back = report_from_json(Json::parse(report_json(r).dump()));
    CHECK(back == r);
    CHECK(run_ktheory(kCmd, std::string("fixture:") + id, Route::Both, true).input_digest == r.input_digest);
  }
  auto f = run_fock_check(kCmd, "fixture:ex3.5-unitary-chi", 2, 1e-10, 1000, false);
  CHECK(report_from_json(Json::parse(report_json(f).dump())) == f);
}

TEST_CASE("text rendering carries the JSON leaves") {
  auto r = run_ktheory(kCmd, "fixture:ex4.6-flip-3-3", Route::Both, false);
  auto text = render_text(report_json(r));
  CHECK(text.find("exit_code: 0") != std::string::npos);
  CHECK(text.find("input_digest: " + r.input_digest) != std::string::npos);
  CHECK(text.find("text: (Z_2, Z_2)") != std::string::npos);
}

TEST_CASE("executable: exit codes and output") {
  auto ex = run_exe("examples");
  CHECK(ex.code == 0);
  CHECK(ex.out.find("ex4.6-flip-3-3") != std::string::npos);
  CHECK(run_exe("examples").out == ex.out);

  auto dump = run_exe("examples --dump ex3.5-flip-2-2");
  CHECK(dump.code == 0);
  CHECK(parse_document(dump.out).kind() == DocKind::TwoGraph);

  CHECK(run_exe("validate fixture:ex3.5-flip-2-2").code == 0);
  CHECK(run_exe("validate " + temp_file("trunc2.json", "{\"kind\": \"gra")).code == 2);
  CHECK(run_exe("frobnicate").code == 2);
  CHECK(run_exe("ktheory fixture:ex4.6-flip-2-2 --route sideways").code == 2);

  auto k = run_exe("ktheory fixture:ex4.6-flip-3-3 --route both");
  CHECK(k.code == 0);
  CHECK(report_from_json(Json::parse(k.out)).results["final"]["text"] == "(Z_2, Z_2)");
  CHECK(run_exe("--format text ktheory fixture:ex4.6-flip-3-3").out.find("status: ok") != std::string::npos);
  CHECK(run_exe("ktheory fixture:ex4.6-flip-3-3 --format text").out.find("status: ok") != std::string::npos);

  setenv("CPK_EXT_BOUND", "1", 1);
  CHECK(run_exe("ktheory fixture:ext-ambiguous-z2").code == 4);
  unsetenv("CPK_EXT_BOUND");

  CHECK(run_exe("fock-check fixture:ex3.5-flip-2-2 --degree 3").code == 0);
  CHECK(run_exe("fock-check fixture:ex3.5-flip-2-2 --degree 9 --cap 50").code == 4);

  auto out = (std::filesystem::temp_directory_path() / "cpk_test_pulled.json").string();
  std::filesystem::remove(out);
  auto rose2 = temp_file("rose2.json", dump_document({rose(2)}));
  auto cover = temp_file("cover2.json", R"({"vertices": ["x", "y"], "map": {"x": "v", "y": "v"}})");
  CHECK(run_exe("pullback " + rose2 + " " + cover + " -o " + out).code == 0);
  std::ifstream in(out);
  std::string written((std::istreambuf_iterator<char>(in)), {});
  auto pulled = parse_document(written);
  CHECK(std::get<FiniteGraph>(pulled.payload).edges.size() == 8);
}

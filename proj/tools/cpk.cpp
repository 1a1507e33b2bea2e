#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cpk/cli.hpp"

using namespace cpk;
using namespace cpk::cli;

namespace {

int emit(const Report& r, const std::string& format) {
  const Json j = report_json(r);
  if (format == "text")
    std::cout << render_text(j);
  else
    std::cout << j.dump(2) << "\n";
  if (!r.error.empty()) std::cerr << "cpk: " << r.error << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> command(argv + 1, argv + argc);
  CLI::App app{"K-theory of Cuntz-Pimsner algebras of graph and rank-2 graph bimodules"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string file, cover, out, route = "both", dump;
  bool lenient = false, assume_split = false, unchecked = false;
  std::size_t degree = 3, cap = kDefaultFockCap;
  double tol = kDefaultFockTol;

  auto* validate = app.add_subcommand("validate", "check a document against the schema and the model rules");
  validate->add_option("file", file, "document path, - for stdin, or fixture:<id>")->required();
  validate->add_flag("--lenient", lenient, "allow sinks and sources");

  auto* ktheory = app.add_subcommand("ktheory", "K-groups of the Cuntz-Pimsner or iterated algebra");
  ktheory->add_option("file", file, "document path, - for stdin, or fixture:<id>")->required();
  ktheory->add_option("--route", route, "iterated, diagram or both")->check(CLI::IsMember({"iterated", "diagram", "both"}));
  ktheory->add_flag("--assume-split", assume_split, "resolve extension ambiguity with the split extension");

  auto* fock = app.add_subcommand("fock-check", "operator relations on the truncated Fock module");
  fock->add_option("file", file, "document path, - for stdin, or fixture:<id>")->required();
  fock->add_option("--degree", degree, "truncation degree N");
  fock->add_option("--tol", tol, "defect tolerance");
  fock->add_option("--cap", cap, "largest allowed basis size");
  fock->add_flag("--unchecked", unchecked, "skip the unitarity check on chi");

  auto* pullback = app.add_subcommand("pullback", "pull a graph back along a surjective vertex map");
  pullback->add_option("graph", file, "graph document")->required();
  pullback->add_option("cover", cover, "cover file {vertices, map}")->required();
  pullback->add_option("-o,--out", out, "write the pulled-back graph document here");

  auto* examples = app.add_subcommand("examples", "list bundled fixtures");
  examples->add_option("--dump", dump, "print the document of one fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  if (validate->parsed()) return emit(run_validate(command, file, !lenient), format);
  if (ktheory->parsed()) return emit(run_ktheory(command, file, parse_route(route), assume_split), format);
  if (fock->parsed()) return emit(run_fock_check(command, file, degree, tol, cap, unchecked), format);
  if (pullback->parsed()) {
    Report r = run_pullback(command, file, cover);
    if (r.exit_code == kOk && !out.empty()) {
      std::ofstream os(out);
      os << r.results["document"].dump(2) << "\n";
      if (!os) {
        r.exit_code = kMalformed;
        r.error = "cannot write '" + out + "'";
      }
    }
    return emit(r, format);
  }
  if (!dump.empty()) {
    try {
      std::cout << dump_document(fixture(dump).document);
      return kOk;
    } catch (const MalformedInput& e) {
      std::cerr << "cpk: " << e.what() << "\n";
      return kMalformed;
    }
  }
  return emit(run_examples(command), format);
}

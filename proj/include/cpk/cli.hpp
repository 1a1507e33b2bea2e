#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "cpk/fixtures.hpp"
#include "cpk/io.hpp"

namespace cpk::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInvalid = 1, kMalformed = 2, kInconsistent = 3, kResource = 4 };

inline const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kInvalid: return "invalid";
    case kMalformed: return "malformed";
    case kInconsistent: return "inconsistent";
    case kResource: return "resource";
  }
  return "unknown";
}

/// Machine-readable outcome of one command.
struct Report {
  std::string tool = "cpk";
  std::string version = kVersion;
  std::vector<std::string> command;
  std::string input;
  std::string input_digest;
  int exit_code = kOk;
  std::vector<std::string> watermarks;
  Json results = Json::object();
  std::string error;

  bool operator==(const Report&) const = default;
};

inline Json report_json(const Report& r) {
  Json j = {{"tool", r.tool},
            {"version", r.version},
            {"command", r.command},
            {"input", r.input},
            {"input_digest", r.input_digest},
            {"exit_code", r.exit_code},
            {"status", status_name(r.exit_code)},
            {"watermarks", r.watermarks},
            {"results", r.results}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::vector<std::string>>();
  r.input = j.at("input").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.watermarks = j.at("watermarks").get<std::vector<std::string>>();
  r.results = j.at("results");
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

namespace detail {

inline void render(const Json& j, const std::string& indent, std::ostringstream& out) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if ((v.is_object() || v.is_array()) && !v.empty()) {
        out << indent << k << ":\n";
        render(v, indent + "  ", out);
      } else {
        out << indent << k << ": " << (v.is_structured() ? v.dump() : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if ((v.is_object() || v.is_array()) && !v.empty()) {
        out << indent << "-\n";
        render(v, indent + "  ", out);
      } else {
        out << indent << "- " << (v.is_structured() ? v.dump() : scalar(v)) << "\n";
      }
    }
  } else {
    out << indent << scalar(j) << "\n";
  }
}

}  // namespace detail

/// Indented key/value rendering with the same content as the JSON form.
inline std::string render_text(const Json& j) {
  std::ostringstream out;
  detail::render(j, "", out);
  return out.str();
}

struct Input {
  std::string source;
  std::string bytes;
};

/// A path, `-` for stdin, or `fixture:<id>` for a bundled document.
inline Input load_input(const std::string& arg) {
  if (arg.rfind("fixture:", 0) == 0) return {arg, dump_document(fixture(arg.substr(8)).document)};
  if (arg == "-") return {arg, std::string(std::istreambuf_iterator<char>(std::cin), {})};
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw MalformedInput("cannot read '" + arg + "'");
  return {arg, std::string(std::istreambuf_iterator<char>(in), {})};
}

/// CPK_EXT_BOUND if set, else the default extension bound.
inline std::size_t extension_bound_from_env() {
  const char* v = std::getenv("CPK_EXT_BOUND");
  if (!v || !*v) return kDefaultExtensionBound;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18 || std::stoull(s) == 0)
    throw MalformedInput("CPK_EXT_BOUND must be a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

/// Runs `body` and turns library errors into exit codes on the report.
template <class F>
Report guarded(Report r, F&& body) {
  try {
    body(r);
  } catch (const MalformedInput& e) {
    r.exit_code = kMalformed;
    r.error = e.what();
  } catch (const PreconditionError& e) {
    r.exit_code = kInvalid;
    r.error = e.what();
  } catch (const ResourceError& e) {
    r.exit_code = kResource;
    r.error = e.what();
  } catch (const InternalError& e) {
    r.exit_code = kInconsistent;
    r.error = e.what();
  } catch (const std::bad_alloc&) {
    r.exit_code = kResource;
    r.error = "out of memory";
  } catch (const nlohmann::json::exception& e) {
    r.exit_code = kMalformed;
    r.error = e.what();
  }
  return r;
}

inline SpecDocument read_document(Report& r, const std::string& arg) {
  Input in = load_input(arg);
  r.input = in.source;
  r.input_digest = "fnv1a64:" + fnv1a_digest(in.bytes);
  return parse_document(in.bytes);
}

inline Report run_validate(const std::vector<std::string>& command, const std::string& file, bool strict) {
  return guarded({.command = command}, [&](Report& r) {
    auto doc = read_document(r, file);
    auto v = validate_document(doc, strict);
    r.results = {{"kind", to_string(doc.kind())}, {"strict", strict}, {"valid", v.ok()}, {"violations", v.violations}};
    r.exit_code = v.ok() ? kOk : kInvalid;
  });
}

enum class Route { Iterated, Diagram, Both };

inline Route parse_route(const std::string& s) {
  if (s == "iterated") return Route::Iterated;
  if (s == "diagram") return Route::Diagram;
  if (s == "both") return Route::Both;
  throw MalformedInput("--route must be iterated, diagram or both");
}

namespace detail {

inline Json diagram_json(const DiagramReport& d) {
  Json corners = Json::array();
  for (const auto& row : d.corners) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back({{"algebra", c.algebra}, {"identification", c.identification}, {"K", kpair_json(c.k)}});
    corners.push_back(r);
  }
  return {{"applicable", true},
          {"corners", corners},
          {"sum_ideal", kpair_json(d.sum_ideal)},
          {"intersection_sequence", exactness_json(d.intersection_sequence)},
          {"sum_sequence", exactness_json(d.sum_sequence)},
          {"intersection_exact", d.intersection_exact},
          {"sum_exact", d.sum_exact},
          {"sum_ideal_among_candidates", d.sum_ideal_among_candidates},
          {"final", kpair_json(d.final_pair)},
          {"consistent", d.consistent},
          {"inconsistencies", d.inconsistencies},
          {"notes", d.notes}};
}

inline bool any_split(std::initializer_list<const KPair*> ps) {
  for (const auto* p : ps)
    if (p && p->assumed_split) return true;
  return false;
}

inline constexpr const char* kSplitWatermark = "assume-split: an extension was taken to be split, not derived";

}  // namespace detail

inline Report run_ktheory(const std::vector<std::string>& command, const std::string& file, Route route,
                          bool assume_split) {
  return guarded({.command = command}, [&](Report& r) {
    auto doc = read_document(r, file);
    const SolveOptions opts{assume_split, extension_bound_from_env()};
    Json& out = r.results;
    out["kind"] = to_string(doc.kind());
    out["route"] = route == Route::Iterated ? "iterated" : route == Route::Diagram ? "diagram" : "both";

    std::optional<FiniteGraph> single;
    std::optional<TwoGraphSpec> two;
    std::optional<AbstractKData> abstract;
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FiniteGraph>) {
            single = p;
          } else if constexpr (std::is_same_v<T, TwoGraphSpec>) {
            two = p;
          } else if constexpr (std::is_same_v<T, PermutationDoc>) {
            auto m = permutation_model(p);
            if (auto g = std::get_if<FiniteGraph>(&m))
              single = *g;
            else
              two = std::get<TwoGraphSpec>(m);
          } else if constexpr (std::is_same_v<T, AbstractKData>) {
            abstract = p;
          } else {
            throw PreconditionError("the K-theory pipeline takes permutation chi only; use fock-check for unitary_chi");
          }
        },
        doc.payload);

    if (single) {
      auto k = cuntz_pimsner_ktheory(pimsner_class_maps(*single), opts);
      out["coefficient"] = kpair_json(coefficient_ktheory(*single));
      out["single_stage"] = kpair_json(k);
      out["final"] = out["single_stage"];
      out["notes"] = Json::array({"single bimodule: only the Pimsner sequence applies; --route is ignored"});
      if (k.assumed_split) r.watermarks.push_back(detail::kSplitWatermark);
      return;
    }

    IteratedResult it = two ? iterated_ktheory(*two, opts) : iterated_ktheory(*abstract, opts);
    const KPair coeff = two ? KPair::known(FgAbGroup::free(two->vertices.size()), FgAbGroup::trivial())
                            : KPair::known(abstract->k0, abstract->k1);
    out["coefficient"] = kpair_json(coeff);
    out["toeplitz"] = {{"E1", kpair_json(coeff)}, {"E2", kpair_json(coeff)}};
    out["stage1"] = {{"E1", kpair_json(it.first.stage1)}, {"E2", kpair_json(it.second.stage1)}};
    if (route != Route::Diagram)
      out["iterated"] = {{"E1_first", kpair_json(it.first.final_pair)},
                         {"E2_first", kpair_json(it.second.final_pair)},
                         {"final", kpair_json(it.final_pair)}};
    KPair final_pair = it.final_pair;
    bool consistent = true;
    if (route != Route::Iterated) {
      if (two) {
        auto d = diagram_report(*two, it);
        out["diagram"] = detail::diagram_json(d);
        out["sum_ideal"] = kpair_json(d.sum_ideal);
        consistent = d.consistent;
        if (route == Route::Diagram || final_pair.status != SolveStatus::Determined) {
          final_pair.k0 = d.final_pair.k0;
          final_pair.k1 = d.final_pair.k1;
          final_pair.refresh_status();
          if (route == Route::Both) final_pair.notes.push_back("final pair taken from the diagram route");
        }
      } else {
        out["diagram"] = {{"applicable", false},
                          {"reason", "the diagram route needs a graph two-graph; abstract K-data has no vertex matrices"}};
      }
    }
    out["final"] = kpair_json(final_pair);
    out["consistent"] = consistent;
    if (detail::any_split({&it.first.stage1, &it.second.stage1, &it.final_pair}))
      r.watermarks.push_back(detail::kSplitWatermark);
    if (!consistent) {
      r.exit_code = kInconsistent;
      r.error = "diagram route disagrees with the iterated route or a sequence is not exact";
    }
  });
}

inline Report run_fock_check(const std::vector<std::string>& command, const std::string& file, std::size_t degree,
                             double tol, std::size_t cap, bool unchecked) {
  return guarded({.command = command}, [&](Report& r) {
    auto doc = read_document(r, file);
    const FockOptions opts{cap, !unchecked};
    FockRep rep = std::visit(
        [&](const auto& p) -> FockRep {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, PermutationDoc>) {
            return std::visit([&](const auto& m) { return build_fock(m, degree, opts); }, permutation_model(p));
          } else if constexpr (std::is_same_v<T, AbstractKData>) {
            throw PreconditionError("abstract K-data has no Fock module");
          } else {
            return build_fock(p, degree, opts);
          }
        },
        doc.payload);
    auto reports = check_all(rep, tol);
    Json defects = Json::array();
    bool pass = true;
    for (const auto& d : reports) {
      defects.push_back(defect_json(d));
      pass = pass && d.pass;
    }
    r.results = {{"kind", to_string(doc.kind())}, {"degree", degree}, {"tolerance", tol},
                 {"basis_size", rep.size()},       {"defects", defects}, {"all_pass", pass}};
    if (unchecked) r.watermarks.push_back("unchecked: chi unitarity was not enforced");
    r.exit_code = pass ? kOk : kInvalid;
  });
}

/// Cover file: {"vertices": [...], "map": {cover vertex: base vertex}}.
inline Report run_pullback(const std::vector<std::string>& command, const std::string& graph_file,
                           const std::string& cover_file) {
  return guarded({.command = command}, [&](Report& r) {
    auto doc = read_document(r, graph_file);
    const auto* g = std::get_if<FiniteGraph>(&doc.payload);
    if (!g) throw MalformedInput("pullback needs a document of kind graph");
    Input cover = load_input(cover_file);
    Json c;
    try {
      c = Json::parse(cover.bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(std::string("cover file is not valid JSON: ") + e.what());
    }
    auto vertices = cpk::detail::string_list(cpk::detail::field(c, "vertices", "cover"), "cover.vertices");
    const Json& m = cpk::detail::field(c, "map", "cover");
    if (!m.is_object()) throw MalformedInput("cover.map must be an object");
    std::map<std::string, std::string> p;
    for (const auto& [k, v] : m.items()) {
      if (!v.is_string()) throw MalformedInput("cover.map values must be vertex names");
      p[k] = v.get<std::string>();
    }
    auto pulled = pullback_graph(*g, vertices, p);
    r.results = {{"cover_digest", "fnv1a64:" + fnv1a_digest(cover.bytes)},
                 {"vertices", pulled.vertices.size()},
                 {"edges", pulled.edges.size()},
                 {"document", document_json({pulled})}};
  });
}

inline Report run_examples(const std::vector<std::string>& command) {
  return guarded({.command = command}, [&](Report& r) {
    Json list = Json::array();
    for (const auto& f : fixtures())
      list.push_back({{"id", f.id}, {"kind", to_string(f.document.kind())}, {"description", f.description}});
    r.results = {{"fixtures", list}};
  });
}

}  // namespace cpk::cli

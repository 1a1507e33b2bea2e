#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpk/exactseq.hpp"

namespace cpk {

/// One K-group: known outright, or only up to a list of candidate iso-classes.
struct KGroup {
  std::optional<FgAbGroup> group;
  std::vector<FgAbGroup> candidates;

  static KGroup known(FgAbGroup g) { return {g, {g}}; }
  bool determined() const { return group.has_value(); }
  std::string to_string() const {
    if (group) return group->to_string();
    if (candidates.empty()) return "?";
    std::string s = "one of {";
    for (std::size_t i = 0; i < candidates.size(); ++i) s += (i ? ", " : "") + candidates[i].to_string();
    return s + "}";
  }
  bool operator==(const KGroup& o) const { return group == o.group && candidates == o.candidates; }
};

struct KPair {
  KGroup k0, k1;
  SolveStatus status = SolveStatus::Determined;
  bool assumed_split = false;
  std::vector<ExtensionCertificate> certificate;
  std::vector<std::string> notes;

  static KPair known(FgAbGroup k0, FgAbGroup k1) {
    KPair p;
    p.k0 = KGroup::known(std::move(k0));
    p.k1 = KGroup::known(std::move(k1));
    return p;
  }

  void refresh_status() {
    if (k0.determined() && k1.determined())
      status = SolveStatus::Determined;
    else if (k0.candidates.size() >= 2 || k1.candidates.size() >= 2)
      status = SolveStatus::AmbiguousExtension;
    else
      status = SolveStatus::Underdetermined;
  }

  bool equals(const FgAbGroup& g0, const FgAbGroup& g1) const {
    return k0.group == g0 && k1.group == g1;
  }

  std::string to_string() const { return "(" + k0.to_string() + ", " + k1.to_string() + ")"; }
};

}  // namespace cpk

#pragma once

#include "crnacr/acr.hpp"
#include "crnacr/network.hpp"
#include "crnacr/rational.hpp"
#include "crnacr/variation.hpp"

#include <json.hpp>

#include <string>

namespace crnacr {

using json = nlohmann::json;  // object keys are sorted: canonical output

inline json rational_json(const Rational& q) {
  return json{{"exact", to_string(q)}, {"value", to_double(q)}};
}

inline json basis_json(const std::vector<RatVec>& basis) {
  json rows = json::array();
  for (const RatVec& v : basis) {
    json row = json::array();
    for (const Rational& c : v) row.push_back(to_string(c));
    rows.push_back(row);
  }
  return rows;
}

inline json structural_report_json(const Network& net,
                                   const StructuralReport& rep) {
  json j;
  j["m"] = rep.species_count;
  j["n"] = rep.complex_count;
  j["n_r"] = rep.reactant_complex_count;
  j["r"] = rep.reaction_count;
  j["l"] = rep.linkage_classes;
  j["sl_all"] = rep.strong_linkage_classes;
  j["sl_nontrivial"] = rep.nontrivial_strong_linkage_classes;
  j["t"] = rep.terminal_strong_linkage_classes;
  j["rank"] = rep.rank;
  j["deficiency"] = rep.deficiency;
  j["weakly_reversible"] = rep.weakly_reversible;
  j["t_minimal"] = rep.t_minimal;
  j["cycle_terminal"] = rep.cycle_terminal;
  j["conservative"] = rep.conservative;
  j["co_conservative"] = rep.co_conservative;
  j["linkage_classes"] = rep.linkage_class_members;
  j["strong_classes"] = rep.strong_class_members;
  j["terminal_strong_classes"] = rep.terminal_class_ids;
  j["stoich_basis"] = basis_json(stoich_basis(net));
  return j;
}

inline json verdict_json(const Network& net, const AcrVerdict& v) {
  json j;
  j["species"] = net.species_name(v.species_index);
  j["status"] = to_string(v.status);
  if (v.diagram) {
    j["diagram"] = to_string(*v.diagram);
    j["diagram_admissible"] = v.diagram_admissible;
  }
  j["reactant_condition"] = v.reactant_condition;
  if (!v.roots.empty()) j["roots"] = v.roots;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

/// Deterministic plain-text rendering of a report tree: keys in sorted
/// order, scalar arrays inline, nested structures indented two spaces.
inline std::string render_text(const json& j, int indent = 0) {
  const std::string pad(indent, ' ');
  std::string out;
  auto scalar = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  auto is_scalar_array = [](const json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (e.is_object() || e.is_array()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        out += pad + key + ":\n" + render_text(value, indent + 2);
      } else if (value.is_array() && !is_scalar_array(value)) {
        out += pad + key + ":\n" + render_text(value, indent + 2);
      } else if (value.is_array()) {
        out += pad + key + ": " + value.dump() + "\n";
      } else {
        out += pad + key + ": " + scalar(value) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& element : j) {
      if (element.is_array() && is_scalar_array(element)) {
        out += pad + "- " + element.dump() + "\n";
      } else if (element.is_object() || element.is_array()) {
        out += pad + "-\n" + render_text(element, indent + 2);
      } else {
        out += pad + "- " + scalar(element) + "\n";
      }
    }
  } else {
    out += pad + scalar(j) + "\n";
  }
  return out;
}

}  // namespace crnacr

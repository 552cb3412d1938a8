#pragma once

#include "crnacr/acr.hpp"
#include "crnacr/parser.hpp"
#include "crnacr/report.hpp"
#include "crnacr/variation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace crnacr {

// Exit codes: 0 success, 2 parse/usage error, 3 analysis inapplicable,
// 4 numeric failure.
enum ExitCode {
  kExitOk = 0,
  kExitParse = 2,
  kExitInapplicable = 3,
  kExitNumeric = 4,
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ParsedModel load_model(const std::string& path) {
  return parse_model(read_file(path));
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    const auto begin = item.find_first_not_of(" \t");
    const auto end = item.find_last_not_of(" \t");
    out.push_back(begin == std::string::npos
                      ? std::string()
                      : item.substr(begin, end - begin + 1));
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& text,
                                             const std::string& what) {
  std::vector<double> out;
  for (const std::string& item : split_csv(text)) {
    char* end = nullptr;
    const double value = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size())
      throw std::invalid_argument("malformed " + what + ": '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument(what + " list is empty");
  return out;
}

inline int species_index(const Network& net, const std::string& name) {
  const auto index = net.species_index(name);
  if (!index) throw std::invalid_argument("unknown species: " + name);
  return *index;
}

// One positive point per nonempty line, comma or whitespace separated.
inline std::vector<std::vector<double>> read_samples(const std::string& path) {
  std::istringstream stream(read_file(path));
  std::vector<std::vector<double>> samples;
  std::string line;
  while (std::getline(stream, line)) {
    for (char& c : line)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream fields(line);
    std::vector<double> point;
    double value;
    while (fields >> value) point.push_back(value);
    if (!point.empty()) samples.push_back(std::move(point));
  }
  return samples;
}

inline void emit(std::ostream& out, const json& report, bool as_json) {
  if (as_json)
    out << report.dump(2) << "\n";
  else
    out << render_text(report);
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"rank-one ACR analysis for power-law kinetic systems"};
  app.name("crnacr");
  app.require_subcommand(1);

  bool as_json = false;
  double tol = 1e-9;
  std::string file, species, x0_text, beta_text, samples_file, acr_species_text;
  bool multistationary = false, strict_sf = false;
  int grid = 4096;
  int m = 0, m_acr = -1, sub_m = 0, sub_m_acr = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "machine-readable output, sorted keys");
    cmd->add_option("--tol", tol, "numeric tolerance")->capture_default_str();
  };

  auto* structure = app.add_subcommand("structure", "structural indices");
  structure->add_option("file", file, "network file")->required();
  add_common(structure);
  structure->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const StructuralReport rep = structural_report(model.network);
    json j;
    j["command"] = "structure";
    json names = json::array();
    for (const Species& sp : model.network.species()) names.push_back(sp.name);
    j["species"] = names;
    json complexes = json::array();
    for (const Complex& c : model.network.complexes())
      complexes.push_back(detail::complex_to_string(model.network, c));
    j["complexes"] = complexes;
    j["structure"] = structural_report_json(model.network, rep);
    cli_detail::emit(out, j, as_json);
  });

  auto* kinetics_cmd = app.add_subcommand("kinetics", "kinetics classification");
  kinetics_cmd->add_option("file", file, "network file")->required();
  kinetics_cmd->add_flag("--strict-sf", strict_sf,
                         "identical rows do not count as SF-pairs");
  add_common(kinetics_cmd);
  kinetics_cmd->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const PowerLawKinetics k = model.kinetics_or_mak();
    json j;
    j["command"] = "kinetics";
    j["class"] = to_string(classify(model.network, k));
    j["kinetics_from_file"] = model.kinetics.has_value();
    j["orders"] = k.orders;
    j["rates"] = k.rates;
    json pairs;
    for (int x = 0; x < model.network.species_count(); ++x) {
      json list = json::array();
      for (const auto& [i, l] : sf_pairs(k, x, !strict_sf))
        list.push_back(json::array({model.network.reactions()[i].label,
                                    model.network.reactions()[l].label}));
      pairs[model.network.species_name(x)] = list;
    }
    j["sf_pairs"] = pairs;
    cli_detail::emit(out, j, as_json);
  });

  auto* acr = app.add_subcommand("acr", "absolute concentration robustness");
  acr->require_subcommand(1);

  auto* criterion = acr->add_subcommand("criterion", "arrow-diagram criterion");
  criterion->add_option("file", file, "network file")->required();
  add_common(criterion);
  criterion->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const PowerLawKinetics k = model.kinetics_or_mak();
    const auto verdicts = stable_acr_criterion(model.network, k);
    json j;
    j["command"] = "acr criterion";
    j["kinetics_class"] = to_string(classify(model.network, k));
    json list = json::array();
    for (const AcrVerdict& v : verdicts)
      list.push_back(verdict_json(model.network, v));
    j["verdicts"] = list;
    cli_detail::emit(out, j, as_json);
  });

  auto* roots_cmd = acr->add_subcommand("roots", "signomial root analysis");
  roots_cmd->add_option("file", file, "network file")->required();
  roots_cmd->add_option("--species", species, "species to analyze")->required();
  add_common(roots_cmd);
  roots_cmd->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const PowerLawKinetics k = model.kinetics_or_mak();
    const int x = cli_detail::species_index(model.network, species);
    const SignomialReduction red = reduce_to_signomial(model.network, k, x);
    const AcrVerdict verdict = acr_analysis(model.network, k, x, tol);
    json j;
    j["command"] = "acr roots";
    j["species"] = species;
    json direction = json::array();
    for (const Rational& c : red.direction) direction.push_back(to_string(c));
    j["direction"] = direction;
    json terms = json::array();
    for (const SignomialTerm& t : red.signomial.terms())
      terms.push_back(
          {{"coefficient", t.coefficient}, {"exponent", t.exponent}});
    j["signomial"] = terms;
    const DescartesCount dc = descartes_positive_root_count(red.signomial);
    j["descartes"] = {{"sign_changes", dc.sign_changes}, {"exact", dc.exact}};
    j["roots"] = verdict.roots;
    j["status"] = to_string(verdict.status);
    if (!verdict.note.empty()) j["note"] = verdict.note;
    cli_detail::emit(out, j, as_json);
  });

  auto* necessary = acr->add_subcommand("necessary", "candidate species bound");
  necessary->add_option("file", file, "network file")->required();
  necessary->add_flag("--multistationary", multistationary,
                      "assert multistationarity");
  add_common(necessary);
  necessary->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const bool asserted =
        multistationary || model.directives.multistationary;
    if (!asserted)
      throw InapplicableError(
          "the necessary condition assumes multistationarity; assert it with "
          "--multistationary or '#!flag multistationary'");
    const auto candidates = acr_candidate_species(model.network);
    json j;
    j["command"] = "acr necessary";
    j["multistationary_asserted"] = true;
    j["basis"] = basis_json(stoich_basis(model.network));
    json names = json::array();
    for (int sp : candidates) names.push_back(model.network.species_name(sp));
    j["candidates"] = names;
    j["upper_bound"] = acr_upper_bound(model.network);
    j["co_conservative"] = is_co_conservative(model.network);
    cli_detail::emit(out, j, as_json);
  });

  auto* probe = app.add_subcommand("probe", "equilibria on a stoichiometric class");
  probe->add_option("file", file, "network file")->required();
  probe->add_option("--x0", x0_text, "positive point on the class, e.g. 3,3")
      ->required();
  probe->add_option("--grid", grid, "scan grid size")->capture_default_str();
  add_common(probe);
  probe->callback([&] {
    const ParsedModel model = cli_detail::load_model(file);
    const PowerLawKinetics k = model.kinetics_or_mak();
    const std::vector<double> x0 =
        cli_detail::parse_double_list(x0_text, "x0");
    ProbeOptions options;
    options.grid_points = grid;
    options.tol = tol;
    const ProbeResult result =
        multistationarity_probe(model.network, k, x0, options);
    json j;
    j["command"] = "probe";
    j["x0"] = x0;
    j["t_interval"] = json::array({result.t_lo, result.t_hi});
    j["count"] = result.count;
    j["equilibria"] = result.equilibria;
    j["window_truncated"] = result.window_truncated;
    if (result.rate_identically_zero)
      j["note"] = "rate function vanishes identically on the class";
    cli_detail::emit(out, j, as_json);
  });

  auto* variation_cmd = app.add_subcommand("variation", "equilibria variation");
  variation_cmd->add_option("file", file, "network file");
  variation_cmd->add_option("--m", m, "species count (arithmetic mode)");
  variation_cmd->add_option("--m-acr", m_acr, "ACR species count");
  variation_cmd->add_option("--sub-m", sub_m, "subnetwork occurring species");
  variation_cmd->add_option("--sub-m-acr", sub_m_acr, "subnetwork ACR species");
  variation_cmd->add_option("--acr-species", acr_species_text,
                            "comma-separated ACR species (network mode)");
  variation_cmd->add_flag("--multistationary", multistationary,
                          "assert multistationarity");
  variation_cmd->add_option("--samples", samples_file,
                            "equilibrium samples, one point per line");
  add_common(variation_cmd);
  variation_cmd->callback([&] {
    json j;
    j["command"] = "variation";
    if (!file.empty() && (m > 0 || m_acr >= 0 || sub_m > 0 || sub_m_acr >= 0))
      throw std::invalid_argument(
          "count flags (--m, --m-acr, --sub-m, --sub-m-acr) do not combine "
          "with a network file; use --acr-species instead");
    if (file.empty()) {
      if (m <= 0)
        throw std::invalid_argument(
            "arithmetic mode needs --m (or pass a network file)");
      if (m_acr >= 0) {
        if (m_acr > m) throw std::invalid_argument("--m-acr exceeds --m");
        AcrCensus census;
        census.species_count = m;
        for (int i = 0; i < m_acr; ++i)
          census.acr_species.emplace(i, AcrProvenance::UserSupplied);
        j["m"] = m;
        j["m_acr"] = m_acr;
        j["v_plus"] = rational_json(equilibria_variation(census));
      }
      if (sub_m > 0) {
        if (sub_m_acr < 0)
          throw std::invalid_argument("--sub-m needs --sub-m-acr");
        if (sub_m_acr > sub_m)
          throw std::invalid_argument("--sub-m-acr exceeds --sub-m");
        AcrCensus sub;
        sub.species_count = sub_m;
        for (int i = 0; i < sub_m_acr; ++i)
          sub.acr_species.emplace(i, AcrProvenance::UserSupplied);
        const SubnetworkVariation sv = subnetwork_variation(sub, m);
        json s;
        s["m"] = m;
        s["m_sub"] = sub_m;
        s["m_sub_acr"] = sub_m_acr;
        s["v_plus_non_embedded"] = rational_json(sv.non_embedded);
        s["v_plus_embedded"] = rational_json(sv.embedded);
        s["gap"] = rational_json(sv.gap);
        s["gap_bound"] = rational_json(sv.gap_bound);
        s["identity_holds"] = sv.identity_holds;
        s["gap_bound_holds"] = sv.gap_bound_holds;
        j["subnetwork"] = s;
      }
      if (m_acr < 0 && sub_m <= 0)
        throw std::invalid_argument("nothing to compute: give --m-acr or --sub-m");
    } else {
      const ParsedModel model = cli_detail::load_model(file);
      AcrCensus census;
      census.species_count = model.network.species_count();
      if (!acr_species_text.empty())
        for (const std::string& name : cli_detail::split_csv(acr_species_text))
          census.acr_species.emplace(
              cli_detail::species_index(model.network, name),
              AcrProvenance::UserSupplied);
      VariationOptions options;
      options.multistationary =
          multistationary || model.directives.multistationary;
      options.kinetics = model.kinetics_or_mak();
      if (!samples_file.empty())
        options.equilibrium_samples = cli_detail::read_samples(samples_file);
      const VariationReport rep =
          variation_bounds(model.network, census, options);
      j["m"] = rep.species_count;
      j["m_acr"] = rep.acr_count;
      json acr_names = json::array();
      for (const auto& [sp, provenance] : census.acr_species)
        acr_names.push_back(json::array(
            {model.network.species_name(sp), to_string(provenance)}));
      j["acr_species"] = acr_names;
      j["v_plus"] = rational_json(rep.v_plus);
      json bounds = json::array();
      for (const VariationBound& b : rep.bounds)
        bounds.push_back({{"kind", to_string(b.kind)},
                          {"value", rational_json(b.value)},
                          {"source", b.source}});
      j["bounds"] = bounds;
      j["notes"] = rep.notes;
      if (model.decomposition) {
        json d;
        d["independent"] = is_independent(model.network, *model.decomposition);
        json blocks = json::array();
        for (const auto& block : model.decomposition->blocks) {
          json entry;
          json labels = json::array();
          for (int i : block)
            labels.push_back(model.network.reactions()[i].label);
          entry["reactions"] = labels;
          json occurring = json::array();
          for (int sp : occurring_species(model.network, block))
            occurring.push_back(model.network.species_name(sp));
          entry["occurring_species"] = occurring;
          blocks.push_back(entry);
        }
        d["blocks"] = blocks;
        j["decomposition"] = d;
      }
    }
    cli_detail::emit(out, j, as_json);
  });

  auto* quotient = app.add_subcommand("quotient", "homogeneous PL quotient");
  quotient->add_option("file", file, "network file (mass action)")->required();
  quotient->add_option("--beta", beta_text, "quotient exponents, e.g. 1,0.5")
      ->required();
  add_common(quotient);
  quotient->callback([&] {
    ParsedModel model = cli_detail::load_model(file);
    const std::vector<double> beta =
        cli_detail::parse_double_list(beta_text, "beta");
    const PowerLawKinetics quotient_kinetics =
        homogeneous_pl_quotient(model.network, model.kinetics_or_mak(), beta);
    model.kinetics = quotient_kinetics;
    if (as_json) {
      json j;
      j["command"] = "quotient";
      j["beta"] = beta;
      j["orders"] = quotient_kinetics.orders;
      j["rates"] = quotient_kinetics.rates;
      j["model"] = print_model(model);
      out << j.dump(2) << "\n";
    } else {
      out << print_model(model);
    }
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return kExitParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InapplicableError& e) {
    err << "inapplicable: " << e.what() << "\n";
    return kExitInapplicable;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace crnacr

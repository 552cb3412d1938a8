#pragma once

#include "crnacr/kinetics.hpp"
#include "crnacr/network.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crnacr {

enum class AcrProvenance { Criterion, RootAnalysis, UserSupplied, Lifted };

inline std::string to_string(AcrProvenance p) {
  switch (p) {
    case AcrProvenance::Criterion: return "criterion";
    case AcrProvenance::RootAnalysis: return "root-analysis";
    case AcrProvenance::UserSupplied: return "user-supplied";
    case AcrProvenance::Lifted: return "lifted";
  }
  return "?";
}

/// Which species have ACR and on whose authority. Censuses in practice
/// mix sources (criterion output, root analysis, literature values), so
/// each entry carries its provenance.
struct AcrCensus {
  int species_count = 0;
  std::map<int, AcrProvenance> acr_species;

  int acr_count() const { return static_cast<int>(acr_species.size()); }
};

/// v+ = (m - m_ACR) / m, exact.
inline Rational equilibria_variation(const AcrCensus& census) {
  if (census.species_count < 1)
    throw std::invalid_argument("species count must be at least 1");
  if (census.acr_count() > census.species_count)
    throw std::invalid_argument("more ACR species than species");
  return Rational(census.species_count - census.acr_count(),
                  census.species_count);
}

enum class BoundKind {
  MultistatOneOverM,
  RankOneSupport,
  DifferenceSpace,
  KineticRankPlp,
};

inline std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::MultistatOneOverM: return "multistat_1_over_m";
    case BoundKind::RankOneSupport: return "rank_one_support";
    case BoundKind::DifferenceSpace: return "difference_space";
    case BoundKind::KineticRankPlp: return "kinetic_rank_plp";
  }
  return "?";
}

struct VariationBound {
  BoundKind kind;
  Rational value;      // lower bound on v+
  std::string source;  // hypothesis trail
};

struct VariationReport {
  int species_count = 0;
  int acr_count = 0;
  Rational v_plus;
  std::vector<VariationBound> bounds;
  std::vector<std::string> notes;  // inapplicable bounds, with reasons
};

/// Numeric dimension of the difference space of phi-transformed samples:
/// rank of the matrix of differences phi(x_i) - phi(x_0), with singular
/// values above tol * largest counted. phi defaults to componentwise log.
inline int difference_space_dimension(
    const std::vector<std::vector<double>>& samples, double tol = 1e-8,
    const std::function<double(double)>& phi = {}) {
  if (samples.empty())
    throw std::invalid_argument("at least one equilibrium sample required");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t m = samples.front().size();
  auto transform = [&](double value) {
    if (phi) return phi(value);
    if (!(value > 0))
      throw std::invalid_argument("log transform requires positive samples");
    return std::log(value);
  };
  if (samples.size() == 1) {
    for (double value : samples.front()) transform(value);  // validate
    return 0;
  }
  Eigen::MatrixXd diffs(samples.size() - 1, m);
  std::vector<double> base(m);
  for (std::size_t j = 0; j < m; ++j) base[j] = transform(samples[0][j]);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].size() != m)
      throw std::invalid_argument("ragged sample list");
    for (std::size_t j = 0; j < m; ++j)
      diffs(i - 1, j) = transform(samples[i][j]) - base[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol * sigma(0)) ++rank;
  return rank;
}

/// Kinetic subspace data of a PL-RDK system: the kinetic complex of a
/// reactant complex is its shared kinetic order row, and S~ is spanned by
/// the kinetic reaction vectors. For weakly reversible deficiency-zero
/// PL-RDK systems the flux subspace P_E coincides with S~.
struct PlpStructure {
  std::vector<RatVec> kinetic_subspace_basis;  // basis of S~
  int kinetic_rank = 0;                        // s~
  std::vector<RatVec> flux_subspace_basis;     // P_E (= S~ here)
};

struct KineticRankBound {
  PlpStructure structure;
  Rational bound;  // 1 - s~/m
};

/// Lower bound 1 - s~/m <= v+ for cycle-terminal, weakly reversible,
/// deficiency-zero PL-RDK systems. All four hypotheses are checked;
/// violations are reported together.
inline KineticRankBound kinetic_rank_plp_bound(const Network& net,
                                               const PowerLawKinetics& kinetics) {
  validate_kinetics(net, kinetics);
  const StructuralReport rep = structural_report(net);
  std::string violations;
  auto complain = [&](const std::string& msg) {
    if (!violations.empty()) violations += "; ";
    violations += msg;
  };
  if (!rep.cycle_terminal)
    complain("network is not cycle-terminal (kinetic complexes undefined)");
  if (!rep.weakly_reversible) complain("network is not weakly reversible");
  if (rep.deficiency != 0) complain("deficiency is not zero");
  if (classify(net, kinetics) == KineticsClass::NonReactantDetermined)
    complain("kinetics is PL-NDK");
  if (!violations.empty())
    throw InapplicableError("kinetic rank bound inapplicable: " + violations);

  // Kinetic complex per complex: the shared F row of its outgoing
  // reactions (well-defined by cycle-terminal + PL-RDK). Exact, since
  // binary64 orders are rationals.
  std::vector<RatVec> kinetic_complex(net.complex_count());
  for (int i = 0; i < net.reaction_count(); ++i) {
    RatVec row;
    for (double order : kinetics.orders[i])
      row.push_back(rational_from_double(order));
    kinetic_complex[net.edges()[i].first] = std::move(row);
  }
  std::vector<RatVec> vectors;
  for (int i = 0; i < net.reaction_count(); ++i) {
    const auto& [from, to] = net.edges()[i];
    RatVec diff(net.species_count());
    for (int j = 0; j < net.species_count(); ++j)
      diff[j] = kinetic_complex[to][j] - kinetic_complex[from][j];
    vectors.push_back(std::move(diff));
  }
  KineticRankBound out;
  out.structure.kinetic_subspace_basis =
      row_space_basis(RatMat::from_rows(vectors));
  out.structure.kinetic_rank =
      static_cast<int>(out.structure.kinetic_subspace_basis.size());
  out.structure.flux_subspace_basis = out.structure.kinetic_subspace_basis;
  out.bound = Rational(1) - Rational(out.structure.kinetic_rank,
                                     net.species_count());
  return out;
}

struct VariationOptions {
  bool multistationary = false;
  std::optional<PowerLawKinetics> kinetics;
  std::vector<std::vector<double>> equilibrium_samples;
  double rank_tol = 1e-8;
};

/// Every applicable lower bound on v+, each with its hypothesis trail;
/// inapplicable bounds are explained in the notes rather than emitted.
inline VariationReport variation_bounds(const Network& net,
                                        const AcrCensus& census,
                                        const VariationOptions& options = {}) {
  if (census.species_count != net.species_count())
    throw std::invalid_argument("census species count does not match network");
  VariationReport report;
  report.species_count = census.species_count;
  report.acr_count = census.acr_count();
  report.v_plus = equilibria_variation(census);

  const int m = census.species_count;
  if (options.multistationary) {
    report.bounds.push_back({BoundKind::MultistatOneOverM, Rational(1, m),
                             "multistationary (asserted)"});
    const std::vector<RatVec> basis = stoich_basis(net);
    if (basis.size() == 1) {
      int support = 0;
      for (const Rational& c : basis.front())
        if (c != 0) ++support;
      report.bounds.push_back({BoundKind::RankOneSupport, Rational(support, m),
                               "multistationary (asserted) + rank one"});
    } else {
      report.notes.push_back("rank_one_support: network rank is " +
                             std::to_string(basis.size()) + ", not 1");
    }
  } else {
    report.notes.push_back(
        "multistat_1_over_m, rank_one_support: multistationarity not asserted");
  }

  if (!options.equilibrium_samples.empty()) {
    const int dim = difference_space_dimension(options.equilibrium_samples,
                                               options.rank_tol);
    report.bounds.push_back(
        {BoundKind::DifferenceSpace, Rational(dim, m),
         "difference space of log-transformed equilibrium samples (" +
             std::to_string(options.equilibrium_samples.size()) + " samples)"});
  }

  if (options.kinetics) {
    try {
      const KineticRankBound kin = kinetic_rank_plp_bound(net, *options.kinetics);
      report.bounds.push_back(
          {BoundKind::KineticRankPlp, kin.bound,
           "weakly reversible deficiency-zero PL-RDK (kinetic rank " +
               std::to_string(kin.structure.kinetic_rank) + ")"});
    } catch (const InapplicableError& e) {
      report.notes.push_back(e.what());
    }
  }
  return report;
}

/// A partition of the reaction set; each block induces a subnetwork.
struct Decomposition {
  std::vector<std::vector<int>> blocks;  // reaction indices
};

inline void validate_partition(const Network& net, const Decomposition& d) {
  std::set<int> seen;
  for (const auto& block : d.blocks) {
    if (block.empty()) throw std::invalid_argument("empty decomposition block");
    for (int i : block) {
      if (i < 0 || i >= net.reaction_count())
        throw std::invalid_argument("reaction index out of range");
      if (!seen.insert(i).second)
        throw std::invalid_argument("reaction appears in two blocks");
    }
  }
  if (static_cast<int>(seen.size()) != net.reaction_count())
    throw std::invalid_argument("decomposition does not cover all reactions");
}

/// Independence: the block stoichiometric subspaces sum directly to S,
/// i.e. block ranks add up to the network rank. Exact.
inline bool is_independent(const Network& net, const Decomposition& d) {
  validate_partition(net, d);
  std::size_t total = 0;
  for (const auto& block : d.blocks) {
    std::vector<RatVec> rows;
    for (int i : block) rows.push_back(net.reaction_vector(i));
    total += rank(RatMat::from_rows(rows));
  }
  return total == static_cast<std::size_t>(network_rank(net));
}

/// Species occurring in a block's reactions (the non-embedded species set).
inline std::set<int> occurring_species(const Network& net,
                                       const std::vector<int>& block) {
  std::set<int> out;
  for (int i : block) {
    for (const auto& [sp, c] : net.reactions()[i].reactant.coefficients())
      out.insert(sp);
    for (const auto& [sp, c] : net.reactions()[i].product.coefficients())
      out.insert(sp);
  }
  return out;
}

struct SubnetworkVariation {
  Rational non_embedded;  // v'+ over the occurring species
  Rational embedded;      // v~+ over the full species set
  Rational gap;           // embedded - non_embedded = m'_ACR (m - m') / (m m')
  Rational gap_bound;     // (m - m') / m
  bool identity_holds = false;
  bool gap_bound_holds = false;
};

/// Non-embedded vs embedded equilibria variation of a subnetwork with m'
/// occurring species inside a network of m species, checking the exact
/// identity m - m'_ACR = (m' - m'_ACR) + (m - m') and the gap inequality
/// 0 <= v~+ - v'+ <= (m - m')/m.
inline SubnetworkVariation subnetwork_variation(const AcrCensus& sub_census,
                                                int full_species_count) {
  const int m_sub = sub_census.species_count;
  const int m = full_species_count;
  if (m_sub > m)
    throw std::invalid_argument(
        "subnetwork species count exceeds the full network's");
  const int acr = sub_census.acr_count();
  SubnetworkVariation out;
  out.non_embedded = equilibria_variation(sub_census);
  out.embedded = Rational(m - acr, m);
  out.gap = out.embedded - out.non_embedded;
  out.gap_bound = Rational(m - m_sub, m);
  out.identity_holds = (m - acr) == (m_sub - acr) + (m - m_sub);
  out.gap_bound_holds = out.gap >= 0 && out.gap <= out.gap_bound;
  return out;
}

/// Lifts per-block ACR species through an independent decomposition: each
/// block ACR species has ACR in the full network, so the union is a lower
/// bound census. Refuses non-independent decompositions.
inline AcrCensus acr_lift(const Network& net, const Decomposition& d,
                          const std::vector<std::vector<int>>& block_acr_species) {
  if (block_acr_species.size() != d.blocks.size())
    throw std::invalid_argument("one ACR set per block required");
  if (!is_independent(net, d))
    throw InapplicableError(
        "ACR lift refused: decomposition is not independent");
  AcrCensus census;
  census.species_count = net.species_count();
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const std::set<int> occurring = occurring_species(net, d.blocks[b]);
    for (int sp : block_acr_species[b]) {
      if (sp < 0 || sp >= net.species_count())
        throw std::invalid_argument("ACR species index out of range");
      if (!occurring.contains(sp))
        throw std::invalid_argument(
            "ACR species does not occur in its block: " + net.species_name(sp));
      census.acr_species.emplace(sp, AcrProvenance::Lifted);
    }
  }
  return census;
}

}  // namespace crnacr

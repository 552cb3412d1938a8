#pragma once

#include "crnacr/kinetics.hpp"
#include "crnacr/network.hpp"
#include "crnacr/signomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace crnacr {

/// The one-species network obtained by dropping every species except one:
/// each reaction y -> y' becomes the arc (y_X, y'_X), trivial arcs (equal
/// endpoints) are dropped and duplicates collapsed. Levels are the distinct
/// reactant stoichiometries of the surviving arcs, ascending.
struct OneSpeciesEmbedding {
  int species_index = -1;
  std::vector<Rational> levels;
  std::vector<std::pair<Rational, Rational>> arcs;  // (reactant, product) level

  bool empty() const { return arcs.empty(); }
};

inline OneSpeciesEmbedding embed_one_species(const Network& net,
                                             int species_index) {
  OneSpeciesEmbedding e;
  e.species_index = species_index;
  std::set<std::pair<Rational, Rational>> arcs;
  for (const Reaction& rx : net.reactions()) {
    const Rational a = rx.reactant.coeff(species_index);
    const Rational b = rx.product.coeff(species_index);
    if (a != b) arcs.emplace(a, b);
  }
  std::set<Rational> levels;
  for (const auto& [a, b] : arcs) levels.insert(a);
  e.arcs.assign(arcs.begin(), arcs.end());
  e.levels.assign(levels.begin(), levels.end());
  return e;
}

enum class ArrowSymbol { Right, Left, Both };

/// Per-reactant-level summary of a one-species embedding, in increasing
/// level order: Right if every arc from the level increases the species,
/// Left if every arc decreases it, Both otherwise.
struct ArrowDiagram {
  std::vector<ArrowSymbol> symbols;

  friend bool operator==(const ArrowDiagram&, const ArrowDiagram&) = default;
};

inline std::string to_string(const ArrowDiagram& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.symbols.size(); ++i) {
    if (i) out += ",";
    switch (d.symbols[i]) {
      case ArrowSymbol::Right: out += "->"; break;
      case ArrowSymbol::Left: out += "<-"; break;
      case ArrowSymbol::Both: out += "<->"; break;
    }
  }
  return out + ")";
}

inline ArrowDiagram arrow_diagram(const OneSpeciesEmbedding& e) {
  if (e.empty())
    throw std::invalid_argument("arrow diagram of an empty embedding");
  ArrowDiagram d;
  for (const Rational& level : e.levels) {
    bool up = false, down = false;
    for (const auto& [a, b] : e.arcs) {
      if (a != level) continue;
      (b > a ? up : down) = true;
    }
    d.symbols.push_back(up && down ? ArrowSymbol::Both
                                   : up ? ArrowSymbol::Right
                                        : ArrowSymbol::Left);
  }
  return d;
}

/// The admissible shapes are Right^a Both^b Left^c with b <= 1, requiring
/// a >= 1 and c >= 1 when there is no Both. Covers exactly the four forms
/// (<->,<-,...), (->,...,<->), (->,...,<->,...,<-), (->,...,->,<-,...,<-);
/// pure one-directional diagrams are not admissible.
inline bool is_admissible_diagram(const ArrowDiagram& d) {
  std::size_t i = 0;
  const auto& sym = d.symbols;
  while (i < sym.size() && sym[i] == ArrowSymbol::Right) ++i;
  const std::size_t rights = i;
  std::size_t boths = 0;
  while (i < sym.size() && sym[i] == ArrowSymbol::Both) {
    ++boths;
    ++i;
  }
  const std::size_t lefts = sym.size() - i;
  while (i < sym.size() && sym[i] == ArrowSymbol::Left) ++i;
  if (i != sym.size() || boths > 1) return false;
  if (boths == 0 && (rights == 0 || lefts == 0)) return false;
  return true;
}

/// True iff all reactant complexes agree outside the given species.
inline bool reactants_differ_only_in(const Network& net, int species_index) {
  std::vector<const Complex*> reactants;
  std::set<int> seen;
  for (int i = 0; i < net.reaction_count(); ++i)
    if (seen.insert(net.edges()[i].first).second)
      reactants.push_back(&net.reactions()[i].reactant);
  for (std::size_t i = 0; i < reactants.size(); ++i)
    for (std::size_t l = i + 1; l < reactants.size(); ++l)
      for (int j = 0; j < net.species_count(); ++j)
        if (j != species_index &&
            reactants[i]->coeff(j) != reactants[l]->coeff(j))
          return false;
  return true;
}

enum class AcrStatus {
  Acr,
  NotAcr,
  CriterionSatisfied,
  CriterionFailed,
  Inconclusive,
};

inline std::string to_string(AcrStatus s) {
  switch (s) {
    case AcrStatus::Acr: return "ACR";
    case AcrStatus::NotAcr: return "NOT_ACR";
    case AcrStatus::CriterionSatisfied: return "CRITERION_SATISFIED";
    case AcrStatus::CriterionFailed: return "CRITERION_FAILED";
    case AcrStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct AcrVerdict {
  int species_index = -1;
  AcrStatus status = AcrStatus::Inconclusive;
  std::optional<ArrowDiagram> diagram;
  bool diagram_admissible = false;
  bool reactant_condition = false;
  std::vector<double> roots;  // evidence from root analysis
  std::string note;
};

inline void require_rank_one(const Network& net, const char* what) {
  if (network_rank(net) != 1)
    throw InapplicableError(std::string(what) +
                            " applies to rank-one networks only");
}

/// If the kinetics is a homogeneous PL quotient of mass action on this
/// network (F = F_MAK - F_beta with identical rows beta), returns beta.
/// Mass action itself is the beta = 0 case. Exact on the stored binary64
/// values.
inline std::optional<std::vector<double>> homogeneous_quotient_beta(
    const Network& net, const PowerLawKinetics& k) {
  validate_kinetics(net, k);
  const PowerLawKinetics mak = mak_kinetics(net, k.rates);
  const std::size_t m = static_cast<std::size_t>(net.species_count());
  std::vector<double> beta(m);
  for (std::size_t j = 0; j < m; ++j)
    beta[j] = mak.orders[0][j] - k.orders[0][j];
  for (std::size_t q = 1; q < k.orders.size(); ++q)
    for (std::size_t j = 0; j < m; ++j)
      if (mak.orders[q][j] - k.orders[q][j] != beta[j]) return std::nullopt;
  return beta;
}

/// Structural stable-ACR criterion for a rank-one network: for each
/// species X, the embedding that keeps only X must have an admissible
/// arrow diagram, and all reactant complexes must agree outside X. Under
/// mass action the criterion is equivalent to stable ACR in X, and the
/// verdict transfers to homogeneous PL quotients (PFF-equivalent kinetics
/// share the equilibria set); pass the kinetics to get that upgrade.
/// Under other power-law kinetics the verdict stays at criterion level.
inline std::vector<AcrVerdict> stable_acr_criterion(
    const Network& net, const PowerLawKinetics* kinetics = nullptr) {
  require_rank_one(net, "the stable ACR criterion");
  const bool mak_or_quotient =
      kinetics && homogeneous_quotient_beta(net, *kinetics).has_value();
  const bool plain_mak =
      kinetics && classify(net, *kinetics) == KineticsClass::MassAction;
  std::vector<AcrVerdict> verdicts;
  for (int x = 0; x < net.species_count(); ++x) {
    AcrVerdict v;
    v.species_index = x;
    const OneSpeciesEmbedding embedding = embed_one_species(net, x);
    if (!embedding.empty()) {
      v.diagram = arrow_diagram(embedding);
      v.diagram_admissible = is_admissible_diagram(*v.diagram);
    } else {
      v.note = "embedding is empty (all arcs trivial)";
    }
    v.reactant_condition = reactants_differ_only_in(net, x);
    const bool satisfied = v.diagram_admissible && v.reactant_condition;
    if (!satisfied) {
      v.status = AcrStatus::CriterionFailed;
    } else if (mak_or_quotient) {
      v.status = AcrStatus::Acr;  // stability itself is not re-verified
      if (!plain_mak) v.note = "homogeneous PL quotient of mass action";
    } else {
      v.status = AcrStatus::CriterionSatisfied;
    }
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

inline std::vector<AcrVerdict> stable_acr_criterion(
    const Network& net, const PowerLawKinetics& kinetics) {
  return stable_acr_criterion(net, &kinetics);
}

/// The steady-state content of a rank-one system whose kinetic order rows
/// are pairwise SF-pairs in X: f(x) = v * M(x) * s(x_X) with M a positive
/// common monomial, so positive equilibria are the positive roots of s.
struct SignomialReduction {
  Signomial signomial;
  RatVec direction;                     // basis vector v of S
  std::vector<Rational> coefficients;   // reaction vector i = c_i * v
};

inline RatVec rank_one_basis(const Network& net, const char* what) {
  const std::vector<RatVec> basis = stoich_basis(net);
  if (basis.size() != 1)
    throw InapplicableError(std::string(what) +
                            " applies to rank-one networks only");
  return basis.front();
}

namespace detail {

inline std::vector<Rational> rank_one_coefficients(const Network& net,
                                                   const RatVec& v) {
  std::size_t pivot = 0;
  while (pivot < v.size() && v[pivot] == 0) ++pivot;
  std::vector<Rational> coeffs;
  for (int i = 0; i < net.reaction_count(); ++i) {
    const RatVec w = net.reaction_vector(i);
    const Rational c = w[pivot] / v[pivot];
    for (std::size_t j = 0; j < v.size(); ++j)
      if (w[j] != c * v[j])
        throw InapplicableError("reaction vector is not a multiple of the basis");
    coeffs.push_back(c);
  }
  return coeffs;
}

}  // namespace detail

inline SignomialReduction reduce_to_signomial(const Network& net,
                                              const PowerLawKinetics& kinetics,
                                              int species_index) {
  validate_kinetics(net, kinetics);
  SignomialReduction red;
  red.direction = rank_one_basis(net, "the signomial reduction");
  red.coefficients = detail::rank_one_coefficients(net, red.direction);
  for (int i = 1; i < net.reaction_count(); ++i)
    for (int j = 0; j < net.species_count(); ++j)
      if (j != species_index &&
          kinetics.orders[i][j] != kinetics.orders[0][j])
        throw InapplicableError(
            "kinetic order rows must be pairwise SF-pairs in the species");
  std::vector<SignomialTerm> terms;
  for (int i = 0; i < net.reaction_count(); ++i)
    terms.push_back({to_double(red.coefficients[i]) * kinetics.rates[i],
                     kinetics.orders[i][species_index]});
  red.signomial = Signomial::from_terms(terms);
  return red;
}

/// Root-counting ACR analysis: exactly one positive root of the reduced
/// signomial means every positive equilibrium shares that X-value (ACR);
/// two or more distinct roots refute it; no roots means no positive
/// equilibria, where ACR is vacuous (inconclusive). A signomial that
/// cancels identically makes every positive point an equilibrium, so no
/// species value is pinned.
inline AcrVerdict acr_analysis(const Network& net,
                               const PowerLawKinetics& kinetics,
                               int species_index, double tol) {
  const SignomialReduction red =
      reduce_to_signomial(net, kinetics, species_index);
  AcrVerdict v;
  v.species_index = species_index;
  if (red.signomial.empty()) {
    v.status = AcrStatus::NotAcr;
    v.note = "rate function vanishes identically; every positive point is "
             "an equilibrium";
    return v;
  }
  v.roots = positive_roots(red.signomial, tol);
  if (v.roots.empty()) {
    v.status = AcrStatus::Inconclusive;
    v.note = "no positive equilibria";
  } else if (v.roots.size() == 1) {
    v.status = AcrStatus::Acr;
  } else {
    v.status = AcrStatus::NotAcr;
  }
  return v;
}

/// Necessary condition for ACR in a multistationary rank-one system: S
/// lies in the species hyperplane of every ACR species, so the candidates
/// are exactly the species where the basis vector vanishes. The caller
/// asserts multistationarity.
inline std::vector<int> acr_candidate_species(const Network& net) {
  const RatVec v = rank_one_basis(net, "the ACR necessary condition");
  std::vector<int> candidates;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] == 0) candidates.push_back(static_cast<int>(j));
  return candidates;
}

/// Upper bound m_ACR <= m - |supp v| for multistationary rank-one systems.
inline int acr_upper_bound(const Network& net) {
  return static_cast<int>(acr_candidate_species(net).size());
}

struct ProbeOptions {
  int grid_points = 4096;
  double tol = 1e-9;
};

struct ProbeResult {
  int count = 0;  // equilibria found; a lower bound on the true count
  std::vector<std::vector<double>> equilibria;
  double t_lo = 0.0;
  double t_hi = 0.0;
  bool window_truncated = false;  // class line unbounded, scan window clamped
  bool rate_identically_zero = false;  // h == 0: the whole class is equilibria
};

namespace detail {

// Scalar coefficient h with f(x) = v * h(x), evaluated at x(t) = x0 + t v,
// as a sign (log-scaled to survive extreme monomials near the boundary).
inline int class_line_sign(const Network& net, const PowerLawKinetics& k,
                           const std::vector<Rational>& coeffs,
                           const std::vector<double>& x0, const RatVec& v,
                           double t) {
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(net.species_count());
  for (int j = 0; j < net.species_count(); ++j) {
    const double xj = x0[j] + t * to_double(v[j]);
    if (!(xj > 0)) return 2;  // off the positive orthant
    logs[j] = std::log(xj);
  }
  std::vector<double> exponents(net.reaction_count());
  for (int i = 0; i < net.reaction_count(); ++i) {
    const double c = to_double(coeffs[i]);
    if (c == 0.0) continue;
    double e = std::log(std::abs(c) * k.rates[i]);
    for (int j = 0; j < net.species_count(); ++j)
      e += k.orders[i][j] * logs[j];
    exponents[i] = e;
    top = std::max(top, e);
  }
  double scaled = 0.0;
  for (int i = 0; i < net.reaction_count(); ++i) {
    const double c = to_double(coeffs[i]);
    if (c == 0.0) continue;
    scaled += (c > 0 ? 1.0 : -1.0) * std::exp(exponents[i] - top);
  }
  if (std::abs(scaled) <= 1e-13 * net.reaction_count()) return 0;
  return scaled > 0 ? 1 : -1;
}

}  // namespace detail

/// Scans the stoichiometric class line through x0 for positive equilibria:
/// x(t) = x0 + t v stays in the class, f(x(t)) = v * h(x(t)), and sign
/// changes of h on a log-dense grid are bisected. Tangential equilibria can
/// be missed, so the count is a lower bound.
inline ProbeResult multistationarity_probe(const Network& net,
                                           const PowerLawKinetics& kinetics,
                                           const std::vector<double>& x0,
                                           const ProbeOptions& options = {}) {
  validate_kinetics(net, kinetics);
  if (x0.size() != static_cast<std::size_t>(net.species_count()))
    throw std::invalid_argument("x0 length must equal species count");
  for (double v : x0)
    if (!(v > 0)) throw std::invalid_argument("x0 must be strictly positive");
  if (options.grid_points < 8)
    throw std::invalid_argument("grid too coarse");
  if (!(options.tol > 0)) throw std::invalid_argument("tolerance must be positive");

  const RatVec v = rank_one_basis(net, "the multistationarity probe");
  const std::vector<Rational> coeffs = detail::rank_one_coefficients(net, v);

  ProbeResult result;
  // Monomials with distinct exponent rows are independent, so h vanishes
  // identically iff the coefficients cancel within each row group.
  {
    std::map<std::vector<double>, double> group_sums;
    for (int i = 0; i < net.reaction_count(); ++i)
      group_sums[kinetics.orders[i]] +=
          to_double(coeffs[i]) * kinetics.rates[i];
    bool all_zero = true;
    for (const auto& [row, sum] : group_sums)
      if (sum != 0.0) all_zero = false;
    if (all_zero) {
      result.rate_identically_zero = true;
      return result;
    }
  }
  // Positivity interval of t: for each nonzero v_j, x0_j + t v_j > 0.
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (int j = 0; j < net.species_count(); ++j) {
    const double vj = to_double(v[j]);
    scale = std::max(scale, std::abs(vj));
    if (vj > 0) t_lo = std::max(t_lo, -x0[j] / vj);
    if (vj < 0) t_hi = std::min(t_hi, -x0[j] / vj);
  }
  const double reach = std::exp(60.0) / scale;
  const bool lower_unbounded = std::isinf(t_lo);
  const bool upper_unbounded = std::isinf(t_hi);
  if (lower_unbounded) t_lo = -reach;
  if (upper_unbounded) t_hi = reach;
  result.window_truncated = lower_unbounded || upper_unbounded;
  result.t_lo = t_lo;
  result.t_hi = t_hi;

  // Scan grid anchored at t = 0 (x0 itself is interior). Toward a finite
  // end the points approach it geometrically (a species vanishes there);
  // toward a clamped end |t| itself is swept geometrically, since the
  // window is astronomically wide.
  const int half = std::max(options.grid_points / 2, 4);
  std::vector<double> grid;
  grid.reserve(2 * half + 3);
  grid.push_back(0.0);
  auto toward_finite_end = [&](double t_end) {
    for (int i = 1; i <= half; ++i) {
      const double gap =
          std::pow(10.0, -12.0 * static_cast<double>(i) / half);
      grid.push_back(t_end * (1.0 - gap));
    }
  };
  auto toward_clamped_end = [&](double t_end) {
    const double sign_dir = t_end > 0 ? 1.0 : -1.0;
    const double hi_log = std::log10(std::abs(t_end));
    for (int i = 0; i <= half; ++i) {
      const double exponent =
          -12.0 + (hi_log + 12.0) * static_cast<double>(i) / half;
      grid.push_back(sign_dir * std::pow(10.0, exponent));
    }
  };
  if (lower_unbounded)
    toward_clamped_end(t_lo);
  else
    toward_finite_end(t_lo);
  if (upper_unbounded)
    toward_clamped_end(t_hi);
  else
    toward_finite_end(t_hi);
  std::sort(grid.begin(), grid.end());

  auto sign_at = [&](double t) {
    return detail::class_line_sign(net, kinetics, coeffs, x0, v, t);
  };

  std::vector<double> roots;
  auto record = [&](double t) {
    if (!roots.empty() &&
        std::abs(t - roots.back()) * scale <= options.tol)
      return;
    roots.push_back(t);
  };

  double last_t = 0.0;
  int last_sign = 0;        // most recent strict sign
  bool in_zero_run = false;  // suppresses re-recording across a flat stretch
  for (double t : grid) {
    const int s = sign_at(t);
    if (s == 2) continue;  // outside the orthant (numeric fringe)
    if (s == 0) {
      if (!in_zero_run) record(t);
      in_zero_run = true;
      continue;
    }
    if (!in_zero_run && last_sign != 0 && s != last_sign) {
      double lo = last_t, hi = t;
      const int sign_lo = last_sign;
      // Bisect to machine resolution; `tol` only governs reporting and
      // deduplication, and downstream balance checks want full accuracy.
      const double t_tol = 4 * std::numeric_limits<double>::epsilon() *
                           (std::abs(lo) + std::abs(hi) + 1.0);
      for (int iter = 0; iter < 500 && hi - lo > t_tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const int sm = sign_at(mid);
        if (sm == 0 || sm == 2) {
          lo = hi = mid;
          break;
        }
        if (sm == sign_lo)
          lo = mid;
        else
          hi = mid;
      }
      record(0.5 * (lo + hi));
    }
    in_zero_run = false;
    last_t = t;
    last_sign = s;
  }

  for (double t : roots) {
    std::vector<double> point(net.species_count());
    for (int j = 0; j < net.species_count(); ++j)
      point[j] = x0[j] + t * to_double(v[j]);
    result.equilibria.push_back(std::move(point));
  }
  result.count = static_cast<int>(result.equilibria.size());
  return result;
}

}  // namespace crnacr

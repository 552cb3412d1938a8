#pragma once

#include "crnacr/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crnacr {

/// Power-law kinetics: kinetic order matrix F (reactions x species, real)
/// and strictly positive rate vector k. Rate of reaction i at x > 0 is
/// k_i * prod_j x_j^{F(i,j)}. Mass action is the special case where each
/// F row equals the reactant complex of its reaction.
struct PowerLawKinetics {
  std::vector<std::vector<double>> orders;  // F, r rows of m entries
  std::vector<double> rates;                // k

  int reaction_count() const { return static_cast<int>(rates.size()); }
};

inline void validate_kinetics(const Network& net, const PowerLawKinetics& k) {
  const std::size_t r = static_cast<std::size_t>(net.reaction_count());
  const std::size_t m = static_cast<std::size_t>(net.species_count());
  if (k.orders.size() != r || k.rates.size() != r)
    throw std::invalid_argument("kinetics row count does not match reactions");
  for (const auto& row : k.orders)
    if (row.size() != m)
      throw std::invalid_argument("kinetic order row width does not match species");
  for (double rate : k.rates)
    if (!(rate > 0))
      throw std::invalid_argument("rate constants must be strictly positive");
}

/// Mass action kinetics: F row i = stoichiometric coefficients of the
/// reactant complex of reaction i.
inline PowerLawKinetics mak_kinetics(const Network& net,
                                     const std::vector<double>& rates) {
  PowerLawKinetics k;
  k.rates = rates;
  k.orders.assign(net.reaction_count(),
                  std::vector<double>(net.species_count(), 0.0));
  for (int i = 0; i < net.reaction_count(); ++i)
    for (const auto& [sp, coeff] : net.reactions()[i].reactant.coefficients())
      k.orders[i][sp] = to_double(coeff);
  validate_kinetics(net, k);
  return k;
}

inline PowerLawKinetics mak_unit_kinetics(const Network& net) {
  return mak_kinetics(net, std::vector<double>(net.reaction_count(), 1.0));
}

enum class KineticsClass {
  MassAction,              // MAK; a subset of PL-RDK
  ReactantDetermined,      // PL-RDK, not mass action
  NonReactantDetermined,   // PL-NDK
};

inline std::string to_string(KineticsClass c) {
  switch (c) {
    case KineticsClass::MassAction: return "MAK";
    case KineticsClass::ReactantDetermined: return "PL-RDK";
    case KineticsClass::NonReactantDetermined: return "PL-NDK";
  }
  return "?";
}

/// PL-RDK iff branching reactions (same reactant complex) carry identical
/// kinetic order rows; MAK iff every row equals its reactant complex.
inline KineticsClass classify(const Network& net, const PowerLawKinetics& k) {
  validate_kinetics(net, k);
  const int r = net.reaction_count();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (net.edges()[i].first == net.edges()[j].first &&
          k.orders[i] != k.orders[j])
        return KineticsClass::NonReactantDetermined;
  const PowerLawKinetics mak = mak_kinetics(net, k.rates);
  return k.orders == mak.orders ? KineticsClass::MassAction
                                : KineticsClass::ReactantDetermined;
}

/// All unordered reaction pairs whose kinetic order rows differ only in the
/// given species (Shinar-Feinberg pairs in X). Identical rows have empty
/// difference, which is confined to any species; `include_identical`
/// selects that permissive reading (default) or the strict one.
inline std::vector<std::pair<int, int>> sf_pairs(const PowerLawKinetics& k,
                                                 int species_index,
                                                 bool include_identical = true) {
  std::vector<std::pair<int, int>> pairs;
  const int r = k.reaction_count();
  for (int i = 0; i < r; ++i)
    for (int l = i + 1; l < r; ++l) {
      bool differ_only_in_x = true;
      bool identical = true;
      for (std::size_t j = 0; j < k.orders[i].size(); ++j) {
        if (k.orders[i][j] != k.orders[l][j]) {
          identical = false;
          if (j != static_cast<std::size_t>(species_index))
            differ_only_in_x = false;
        }
      }
      if (identical ? include_identical : differ_only_in_x)
        pairs.emplace_back(i, l);
    }
  return pairs;
}

/// Reaction rate vector K(x) at a strictly positive concentration x.
inline std::vector<double> evaluate_rates(const PowerLawKinetics& k,
                                          const std::vector<double>& x) {
  for (double v : x)
    if (!(v > 0))
      throw std::invalid_argument(
          "concentrations must be strictly positive for power-law rates");
  std::vector<double> rates(k.rates.size());
  for (std::size_t i = 0; i < k.rates.size(); ++i) {
    double value = k.rates[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double order = k.orders[i][j];
      if (order != 0.0) value *= std::pow(x[j], order);
    }
    rates[i] = value;
  }
  return rates;
}

/// Species formation rate f(x) = N K(x).
inline std::vector<double> evaluate_sfrf(const Network& net,
                                         const PowerLawKinetics& k,
                                         const std::vector<double>& x) {
  validate_kinetics(net, k);
  const std::vector<double> rates = evaluate_rates(k, x);
  std::vector<double> f(net.species_count(), 0.0);
  for (int i = 0; i < net.reaction_count(); ++i) {
    const RatVec v = net.reaction_vector(i);
    for (int s = 0; s < net.species_count(); ++s)
      f[s] += rates[i] * to_double(v[s]);
  }
  return f;
}

/// Complex formation rate g(x) = I_a K(x).
inline std::vector<double> evaluate_cfrf(const Network& net,
                                         const PowerLawKinetics& k,
                                         const std::vector<double>& x) {
  validate_kinetics(net, k);
  const std::vector<double> rates = evaluate_rates(k, x);
  std::vector<double> g(net.complex_count(), 0.0);
  for (int i = 0; i < net.reaction_count(); ++i) {
    const auto& [from, to] = net.edges()[i];
    g[from] -= rates[i];
    g[to] += rates[i];
  }
  return g;
}

/// Complex balance at x: ||g(x)||_inf <= tol.
inline bool is_complex_balanced_at(const Network& net,
                                   const PowerLawKinetics& k,
                                   const std::vector<double>& x, double tol) {
  double worst = 0.0;
  for (double v : evaluate_cfrf(net, k, x)) worst = std::max(worst, std::abs(v));
  return worst <= tol;
}

/// Homogeneous power-law quotient of a mass action system: rates unchanged,
/// F_PLK = F_MAK - F_beta where F_beta has identical rows beta.
inline PowerLawKinetics homogeneous_pl_quotient(const Network& net,
                                                const PowerLawKinetics& mak,
                                                const std::vector<double>& beta) {
  if (classify(net, mak) != KineticsClass::MassAction)
    throw InapplicableError("homogeneous PL quotient requires mass action input");
  if (beta.size() != static_cast<std::size_t>(net.species_count()))
    throw std::invalid_argument("beta length must equal species count");
  PowerLawKinetics quotient = mak;
  for (auto& row : quotient.orders)
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= beta[j];
  return quotient;
}

/// Positive-function-factor equivalence, decided exactly for power-law
/// pairs: K_q / K'_q is the same monomial for every q iff all rows of
/// F - F' coincide and k_q / k'_q is constant in q. Comparisons are exact
/// on the stored binary64 values; quotients built from dyadic beta vectors
/// compare exactly, arbitrary beta may fall to rounding.
inline bool pff_equivalent(const PowerLawKinetics& a,
                           const PowerLawKinetics& b) {
  if (a.orders.size() != b.orders.size() || a.rates.size() != b.rates.size())
    throw std::invalid_argument("kinetics are not over the same network");
  const std::size_t r = a.rates.size();
  if (r == 0) return true;
  const std::size_t m = a.orders.front().size();
  for (std::size_t q = 0; q < r; ++q) {
    if (a.orders[q].size() != m || b.orders[q].size() != m)
      throw std::invalid_argument("kinetics are not over the same network");
    for (std::size_t j = 0; j < m; ++j)
      if (a.orders[q][j] - b.orders[q][j] !=
          a.orders[0][j] - b.orders[0][j])
        return false;
    // k_q / k'_q == k_0 / k'_0, cross-multiplied to avoid division.
    if (a.rates[q] * b.rates[0] != a.rates[0] * b.rates[q]) return false;
  }
  return true;
}

}  // namespace crnacr

#pragma once

#include "crnacr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crnacr {

struct SignomialTerm {
  double coefficient = 0.0;
  double exponent = 0.0;

  friend bool operator==(const SignomialTerm&, const SignomialTerm&) = default;
};

/// A signomial in one positive variable: a finite sum of real-coefficient
/// power terms c * A^p with real exponents. Terms are kept with strictly
/// increasing exponents and nonzero coefficients; like exponents are merged
/// at construction.
class Signomial {
 public:
  Signomial() = default;

  static Signomial from_terms(const std::vector<SignomialTerm>& raw) {
    std::map<double, double> merged;
    for (const SignomialTerm& t : raw) merged[t.exponent] += t.coefficient;
    Signomial s;
    for (const auto& [exponent, coefficient] : merged)
      if (coefficient != 0.0) s.terms_.push_back({coefficient, exponent});
    return s;
  }

  const std::vector<SignomialTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double evaluate(double a) const {
    double value = 0.0;
    for (const SignomialTerm& t : terms_)
      value += t.coefficient * std::pow(a, t.exponent);
    return value;
  }

 private:
  std::vector<SignomialTerm> terms_;
};

struct DescartesCount {
  int sign_changes = 0;
  // The positive-root count (with multiplicity) never exceeds the change
  // count and has the same parity, so 0 or 1 changes pin it exactly.
  bool exact = false;
};

/// Descartes' rule of signs on the coefficient sequence in ascending
/// exponent order; valid for arbitrary real exponents.
inline DescartesCount descartes_positive_root_count(const Signomial& s) {
  DescartesCount out;
  int previous = 0;
  for (const SignomialTerm& t : s.terms()) {
    const int current = t.coefficient > 0 ? 1 : -1;
    if (previous != 0 && current != previous) ++out.sign_changes;
    previous = current;
  }
  out.exact = out.sign_changes <= 1;
  return out;
}

namespace detail {

// u = ln A beyond which A is not representable as a normal binary64.
constexpr double kLogRangeLimit = 709.0;

// Sign of sum c_i * e^{q_i u}, evaluated with the dominant term factored
// out so magnitude never overflows. Returns 0 when the scaled sum is below
// noise level (numerically tangential).
inline int signomial_sign_at_log(const std::vector<SignomialTerm>& terms,
                                 double u) {
  double top = -std::numeric_limits<double>::infinity();
  for (const SignomialTerm& t : terms)
    top = std::max(top, std::log(std::abs(t.coefficient)) + t.exponent * u);
  double scaled = 0.0;
  for (const SignomialTerm& t : terms) {
    const double magnitude =
        std::exp(std::log(std::abs(t.coefficient)) + t.exponent * u - top);
    scaled += t.coefficient > 0 ? magnitude : -magnitude;
  }
  const double noise = 1e-13 * static_cast<double>(terms.size());
  if (std::abs(scaled) <= noise) return 0;
  return scaled > 0 ? 1 : -1;
}

// Bisection in u of a strictly monotone piece with a sign change. Stops
// once the bracket is narrower than `tol` in A, or at machine resolution.
inline double bisect_monotone_log(const std::vector<SignomialTerm>& terms,
                                  double lo, double hi, int sign_lo,
                                  double tol) {
  for (int iter = 0; iter < 800; ++iter) {
    const double width_u = hi - lo;
    if (width_u <= 4e-16 * std::max(1.0, std::abs(lo))) break;
    if (lo < kLogRangeLimit &&
        std::exp(lo) * std::expm1(std::min(width_u, 700.0)) <= tol)
      break;
    const double mid = 0.5 * (lo + hi);
    const int s = signomial_sign_at_log(terms, mid);
    if (s == 0) return mid;
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Complete isolation of positive roots of sum c_i A^{p_i}, in u = ln A.
// The list is normalized by A^{-p_0} (roots unchanged); the u-derivative
// of the normalized sum has one term fewer, and its roots split the line
// into strictly monotone pieces, each holding at most one sign change.
inline std::vector<double> isolate_positive_roots_log(
    std::vector<SignomialTerm> terms, double tol) {
  if (terms.size() <= 1) return {};

  const double base = terms.front().exponent;
  for (SignomialTerm& t : terms) t.exponent -= base;

  std::vector<SignomialTerm> derivative;
  for (std::size_t i = 1; i < terms.size(); ++i)
    derivative.push_back(
        {terms[i].coefficient * terms[i].exponent, terms[i].exponent});
  const std::vector<double> critical =
      isolate_positive_roots_log(std::move(derivative), std::min(tol, 1e-12));

  constexpr double inf = std::numeric_limits<double>::infinity();
  const int sign_zero = terms.front().coefficient > 0 ? 1 : -1;
  const int sign_inf = terms.back().coefficient > 0 ? 1 : -1;

  std::vector<double> roots;
  // Anchors: (u position, nonzero sign), with conceptual endpoints at
  // u = -inf (constant term dominates) and u = +inf (leading term).
  std::vector<std::pair<double, int>> anchors;
  anchors.emplace_back(-inf, sign_zero);
  for (double c : critical) {
    const int s = signomial_sign_at_log(terms, c);
    if (s == 0)
      roots.push_back(c);  // extremum touching the axis
    else
      anchors.emplace_back(c, s);
  }
  anchors.emplace_back(inf, sign_inf);

  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const auto [u_left, sign_left] = anchors[i];
    const auto [u_right, sign_right] = anchors[i + 1];
    if (sign_left == sign_right) continue;
    double lo = u_left, hi = u_right;
    bool landed = false;
    if (std::isinf(lo)) {
      // Walk down until the 0+ limit sign shows up.
      double step = 1.0;
      lo = std::min(std::isinf(hi) ? 0.0 : hi, 0.0) - step;
      while (true) {
        const int s = signomial_sign_at_log(terms, lo);
        if (s == sign_left) break;
        if (s == 0) {
          roots.push_back(lo);
          landed = true;
          break;
        }
        if (lo < -kLogRangeLimit)
          throw NumericError("root below the representable positive range");
        step *= 2;
        lo -= step;
      }
    }
    if (!landed && std::isinf(hi)) {
      double step = 1.0;
      hi = std::max(lo, 0.0) + step;
      while (true) {
        const int s = signomial_sign_at_log(terms, hi);
        if (s == sign_right) break;
        if (s == 0) {
          roots.push_back(hi);
          landed = true;
          break;
        }
        if (hi > kLogRangeLimit)
          throw NumericError("root beyond the representable range");
        step *= 2;
        hi += step;
      }
    }
    if (!landed)
      roots.push_back(bisect_monotone_log(terms, lo, hi, sign_left, tol));
  }

  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

/// All positive roots of the signomial, ascending, each accurate to `tol`.
/// Isolation is complete for simple roots at any real exponents; roots
/// closer together than `tol` are reported once.
inline std::vector<double> positive_roots(const Signomial& s, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const std::vector<double> in_log =
      detail::isolate_positive_roots_log(s.terms(), tol);
  std::vector<double> roots;
  for (double u : in_log) {
    const double a = std::exp(u);
    if (roots.empty() || a - roots.back() > tol) roots.push_back(a);
  }
  return roots;
}

}  // namespace crnacr

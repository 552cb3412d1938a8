#pragma once

#include "crnacr/errors.hpp"
#include "crnacr/kinetics.hpp"
#include "crnacr/network.hpp"
#include "crnacr/variation.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace crnacr {

// Network file format, one item per line:
//
//   # comment
//   #!species A, B, C                 pins the canonical species order
//   #!flag multistationary
//   #!decomposition R1,R2 | R3,R4
//   LABEL: COMPLEX -> COMPLEX [@ RATE]
//   F LABEL: SPECIES=ORDER, SPECIES=ORDER, ...
//
// COMPLEX is `0` or a +-separated sum of [COEFF] SPECIES terms with
// nonnegative rational coefficients ("2X1", "1/2 A", "0.5A"). Reactions
// without an F line default to mass action; species omitted from an F line
// default to order 0. Rates default to 1.

struct Directives {
  bool multistationary = false;
  std::optional<std::vector<std::vector<std::string>>> decomposition_labels;
  bool species_declared = false;
};

struct ParsedModel {
  Network network;
  std::optional<PowerLawKinetics> kinetics;
  Directives directives;
  std::optional<Decomposition> decomposition;

  /// Kinetics from the file, or mass action with unit rates when the file
  /// declares none.
  PowerLawKinetics kinetics_or_mak() const {
    return kinetics ? *kinetics : mak_unit_kinetics(network);
  }
};

namespace detail {

class LineScanner {
 public:
  LineScanner(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, static_cast<int>(pos_) + 1, msg);
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
         text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Numeric literal: digits with optional '.', '/', exponent or sign
  // handled by the caller-level helpers below.
  std::string number_token(bool allow_sign) {
    skip_ws();
    std::size_t start = pos_;
    if (allow_sign && pos_ < text_.size() &&
        (text_[pos_] == '+' || text_[pos_] == '-'))
      ++pos_;
    bool any = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/') {
        any = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && any) {
        // exponent part: e[+-]digits
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
          ++pos_;
        if (pos_ < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        } else {
          pos_ = save;
          break;
        }
      } else {
        break;
      }
    }
    if (!any) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool starts_with_digit() {
    skip_ws();
    return pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.');
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

inline double parse_real(LineScanner& s, bool allow_sign,
                         const std::string& what) {
  const int col_before = s.column();
  const std::string token = s.number_token(allow_sign);
  if (auto q = rational_from_string(token)) return to_double(*q);
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size())
    throw ParseError(s.line(), col_before, "malformed " + what + ": " + token);
  return value;
}

inline Rational parse_rational(LineScanner& s, const std::string& what) {
  const int col_before = s.column();
  const std::string token = s.number_token(false);
  if (auto q = rational_from_string(token)) return *q;
  throw ParseError(s.line(), col_before, "malformed " + what + ": " + token);
}

}  // namespace detail

inline ParsedModel parse_model(const std::string& text) {
  struct ReactionLine {
    int line;
    std::string label;
    std::vector<std::pair<std::string, Rational>> reactant, product;
    std::optional<double> rate;
  };
  struct OrderLine {
    int line;
    int column;
    std::string label;
    std::vector<std::pair<std::string, double>> orders;
  };

  std::vector<ReactionLine> reactions;
  std::vector<OrderLine> order_lines;
  Directives directives;
  std::vector<std::string> declared_species;
  std::vector<std::vector<std::string>> decomposition_labels;
  int declared_line = 0;
  int decomposition_line = 0;

  auto parse_complex = [](detail::LineScanner& s)
      -> std::vector<std::pair<std::string, Rational>> {
    std::vector<std::pair<std::string, Rational>> terms;
    // The zero complex: a bare `0` not followed by a fraction/species.
    if (s.peek() == '0') {
      detail::LineScanner probe = s;
      const Rational coeff = detail::parse_rational(probe, "coefficient");
      const char next = probe.peek();
      if (coeff == 0 && next != '.' &&
          !(std::isalnum(static_cast<unsigned char>(next)) || next == '_')) {
        s = probe;
        return terms;
      }
    }
    while (true) {
      Rational coeff(1);
      if (s.starts_with_digit()) coeff = detail::parse_rational(s, "coefficient");
      const std::string name = s.ident();
      terms.emplace_back(name, coeff);
      if (!s.consume('+')) break;
    }
    return terms;
  };

  std::istringstream stream(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    detail::LineScanner s(raw, line_number);
    if (s.eof()) continue;

    if (s.peek() == '#') {
      detail::LineScanner d = s;
      d.consume('#');
      if (!d.consume('!')) continue;  // plain comment
      const std::string directive = d.ident();
      if (directive == "flag") {
        const std::string flag = d.ident();
        if (flag != "multistationary")
          d.fail("unknown flag: " + flag);
        directives.multistationary = true;
      } else if (directive == "species") {
        if (directives.species_declared) d.fail("duplicate species directive");
        directives.species_declared = true;
        declared_line = line_number;
        while (true) {
          declared_species.push_back(d.ident());
          if (!d.consume(',')) break;
        }
        if (!d.eof()) d.fail("trailing text after species list");
      } else if (directive == "decomposition") {
        if (!decomposition_labels.empty())
          d.fail("duplicate decomposition directive");
        decomposition_line = line_number;
        std::vector<std::string> block;
        while (true) {
          block.push_back(d.ident());
          if (d.consume(',')) continue;
          if (d.consume('|')) {
            decomposition_labels.push_back(block);
            block.clear();
            continue;
          }
          break;
        }
        decomposition_labels.push_back(block);
        if (!d.eof()) d.fail("trailing text after decomposition");
      } else {
        d.fail("unknown directive: " + directive);
      }
      continue;
    }

    // `F LABEL:` introduces a kinetic order line; any other `LABEL:` is a
    // reaction. A reaction labeled literally "F" still works ("F:").
    detail::LineScanner probe = s;
    const std::string first = probe.ident();
    if (first == "F" && probe.peek() != ':') {
      OrderLine ol;
      ol.line = line_number;
      ol.column = probe.column();
      ol.label = probe.ident();
      probe.expect(':', "after reaction label");
      while (true) {
        const int col = probe.column();
        const std::string name = probe.ident();
        probe.expect('=', "after species name");
        const double order = detail::parse_real(probe, true, "kinetic order");
        for (const auto& [existing, value] : ol.orders)
          if (existing == name)
            throw ParseError(line_number, col,
                             "species repeated in kinetic order line: " + name);
        ol.orders.emplace_back(name, order);
        if (!probe.consume(',')) break;
      }
      if (!probe.eof()) probe.fail("trailing text after kinetic orders");
      order_lines.push_back(std::move(ol));
      continue;
    }

    ReactionLine rl;
    rl.line = line_number;
    rl.label = first;
    probe.expect(':', "after reaction label");
    rl.reactant = parse_complex(probe);
    probe.expect('-', "(reaction arrow ->)");
    probe.expect('>', "(reaction arrow ->)");
    rl.product = parse_complex(probe);
    if (probe.consume('@')) {
      const int col = probe.column();
      const double rate = detail::parse_real(probe, true, "rate constant");
      if (!(rate > 0))
        throw ParseError(line_number, col, "nonpositive rate constant");
      rl.rate = rate;
    }
    if (!probe.eof()) probe.fail("trailing text after reaction");
    reactions.push_back(std::move(rl));
  }

  if (reactions.empty())
    throw ParseError(line_number == 0 ? 1 : line_number, 1,
                     "no reactions in input");

  // Assemble the network. Declared species pin the canonical order.
  NetworkBuilder builder;
  for (const std::string& name : declared_species) builder.species(name);
  std::set<std::string> labels;
  std::map<std::string, int> reaction_index;
  for (const ReactionLine& rl : reactions) {
    if (!labels.insert(rl.label).second)
      throw ParseError(rl.line, 1, "duplicate reaction label: " + rl.label);
    auto normalize = [](const std::vector<std::pair<std::string, Rational>>& terms) {
      std::map<std::string, Rational> sum;
      for (const auto& [name, coeff] : terms) sum[name] += coeff;
      return sum;
    };
    if (normalize(rl.reactant) == normalize(rl.product))
      throw ParseError(rl.line, 1,
                       "trivial reaction (reactant equals product): " + rl.label);
    reaction_index[rl.label] = static_cast<int>(reaction_index.size());
    builder.reaction(rl.label, rl.reactant, rl.product, rl.rate);
  }

  ParsedModel model;
  try {
    model.network = builder.build();
  } catch (const std::invalid_argument& e) {
    throw ParseError(declared_line ? declared_line : 1, 1, e.what());
  }
  model.directives = directives;
  model.directives.decomposition_labels =
      decomposition_labels.empty()
          ? std::nullopt
          : std::make_optional(decomposition_labels);

  // Kinetics, if any F line or rate was given.
  bool any_rate = false;
  for (const ReactionLine& rl : reactions) any_rate |= rl.rate.has_value();
  if (!order_lines.empty() || any_rate) {
    PowerLawKinetics k = mak_unit_kinetics(model.network);
    for (const ReactionLine& rl : reactions)
      if (rl.rate) k.rates[reaction_index[rl.label]] = *rl.rate;
    std::set<std::string> seen_f;
    for (const OrderLine& ol : order_lines) {
      auto it = reaction_index.find(ol.label);
      if (it == reaction_index.end())
        throw ParseError(ol.line, ol.column,
                         "kinetic orders for unknown reaction: " + ol.label);
      if (!seen_f.insert(ol.label).second)
        throw ParseError(ol.line, ol.column,
                         "duplicate kinetic order line for " + ol.label);
      std::vector<double> row(model.network.species_count(), 0.0);
      for (const auto& [name, order] : ol.orders) {
        const auto sp = model.network.species_index(name);
        if (!sp)
          throw ParseError(ol.line, ol.column, "unknown species: " + name);
        row[*sp] = order;
      }
      k.orders[it->second] = std::move(row);
    }
    model.kinetics = std::move(k);
  }

  // Decomposition directive resolved to reaction indices; must partition.
  if (!decomposition_labels.empty()) {
    Decomposition d;
    std::set<std::string> used;
    for (const auto& block : decomposition_labels) {
      std::vector<int> indices;
      for (const std::string& label : block) {
        auto it = reaction_index.find(label);
        if (it == reaction_index.end())
          throw ParseError(decomposition_line, 1,
                           "decomposition names unknown reaction: " + label);
        if (!used.insert(label).second)
          throw ParseError(decomposition_line, 1,
                           "decomposition repeats reaction: " + label);
        indices.push_back(it->second);
      }
      d.blocks.push_back(std::move(indices));
    }
    if (static_cast<int>(used.size()) != model.network.reaction_count())
      throw ParseError(decomposition_line, 1,
                       "decomposition does not cover every reaction");
    model.decomposition = std::move(d);
  }

  return model;
}

namespace detail {

inline std::string complex_to_string(const Network& net, const Complex& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [sp, coeff] : c.coefficients()) {
    if (!out.empty()) out += " + ";
    // The space keeps names like "e2" from fusing with the coefficient
    // into a scientific literal on re-parse.
    if (coeff != 1) out += to_string(coeff) + " ";
    out += net.species_name(sp);
  }
  return out;
}

}  // namespace detail

/// Canonical text form; parse(print_model(m)) reproduces m exactly, so
/// print-then-parse is a fixed point. F lines appear only for rows that
/// deviate from mass action, zero orders are omitted.
inline std::string print_model(const ParsedModel& model) {
  const Network& net = model.network;
  std::string out = "#!species ";
  for (int j = 0; j < net.species_count(); ++j) {
    if (j) out += ", ";
    out += net.species_name(j);
  }
  out += "\n";
  if (model.directives.multistationary) out += "#!flag multistationary\n";
  if (model.decomposition) {
    out += "#!decomposition ";
    for (std::size_t b = 0; b < model.decomposition->blocks.size(); ++b) {
      if (b) out += " | ";
      const auto& block = model.decomposition->blocks[b];
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) out += ",";
        out += net.reactions()[block[i]].label;
      }
    }
    out += "\n";
  }
  const PowerLawKinetics* k =
      model.kinetics ? &*model.kinetics : nullptr;
  const PowerLawKinetics mak = mak_unit_kinetics(net);
  for (int i = 0; i < net.reaction_count(); ++i) {
    const Reaction& rx = net.reactions()[i];
    out += rx.label + ": " + detail::complex_to_string(net, rx.reactant) +
           " -> " + detail::complex_to_string(net, rx.product);
    if (k) out += " @ " + format_double(k->rates[i]);
    out += "\n";
    if (k && k->orders[i] != mak.orders[i]) {
      out += "F " + rx.label + ":";
      bool first = true;
      bool all_zero = true;
      for (int j = 0; j < net.species_count(); ++j) {
        if (k->orders[i][j] == 0.0) continue;
        all_zero = false;
        out += first ? " " : ", ";
        out += net.species_name(j) + "=" + format_double(k->orders[i][j]);
        first = false;
      }
      if (all_zero) out += " " + net.species_name(0) + "=0";
      out += "\n";
    }
  }
  return out;
}

}  // namespace crnacr

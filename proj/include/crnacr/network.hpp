#pragma once

#include "crnacr/linalg.hpp"
#include "crnacr/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crnacr {

/// A complex: a formal nonnegative rational combination of species, stored
/// sparsely (no explicit zero entries; the zero complex is the empty map).
class Complex {
 public:
  Complex() = default;

  void set(int species_index, const Rational& coefficient) {
    if (coefficient < 0)
      throw std::invalid_argument("negative stoichiometric coefficient");
    if (coefficient == 0)
      coeffs_.erase(species_index);
    else
      coeffs_[species_index] = coefficient;
  }

  void add(int species_index, const Rational& coefficient) {
    set(species_index, coeff(species_index) + coefficient);
  }

  Rational coeff(int species_index) const {
    auto it = coeffs_.find(species_index);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, Rational>& coefficients() const { return coeffs_; }

  friend bool operator==(const Complex&, const Complex&) = default;
  friend auto operator<=>(const Complex& a, const Complex& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  std::map<int, Rational> coeffs_;
};

struct Species {
  std::string name;
  int index = 0;
};

struct Reaction {
  std::string label;
  Complex reactant;
  Complex product;
  std::optional<double> rate;  // optional rate-constant slot
};

/// An immutable reaction network: species in input order, complexes
/// deduplicated in order of first appearance, and the reaction digraph on
/// complex indices. All analysis operations are pure functions over this.
class Network {
 public:
  int species_count() const { return static_cast<int>(species_.size()); }
  int complex_count() const { return static_cast<int>(complexes_.size()); }
  int reaction_count() const { return static_cast<int>(reactions_.size()); }

  /// Number of distinct reactant complexes (n_r).
  int reactant_complex_count() const {
    std::set<int> reactants;
    for (const auto& [from, to] : edges_) reactants.insert(from);
    return static_cast<int>(reactants.size());
  }

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Complex>& complexes() const { return complexes_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  /// Edge (reactant complex index, product complex index) per reaction.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::optional<int> species_index(const std::string& name) const {
    auto it = species_by_name_.find(name);
    if (it == species_by_name_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& species_name(int index) const {
    return species_[index].name;
  }

  /// Reaction vector product - reactant, dense over all species.
  RatVec reaction_vector(int reaction_index) const {
    const Reaction& rx = reactions_[reaction_index];
    RatVec v(species_.size(), Rational(0));
    for (const auto& [sp, c] : rx.product.coefficients()) v[sp] += c;
    for (const auto& [sp, c] : rx.reactant.coefficients()) v[sp] -= c;
    return v;
  }

 private:
  friend class NetworkBuilder;
  std::vector<Species> species_;
  std::vector<Complex> complexes_;
  std::vector<Reaction> reactions_;
  std::vector<std::pair<int, int>> edges_;
  std::map<std::string, int> species_by_name_;
};

/// Accumulates species and reactions, then validates the network defining
/// conditions: labels unique, no y -> y reaction, every species used.
class NetworkBuilder {
 public:
  int species(const std::string& name) {
    auto it = net_.species_by_name_.find(name);
    if (it != net_.species_by_name_.end()) return it->second;
    if (!valid_identifier(name))
      throw std::invalid_argument("species name is not an identifier: " + name);
    const int index = static_cast<int>(net_.species_.size());
    net_.species_.push_back({name, index});
    net_.species_by_name_[name] = index;
    return index;
  }

  using ComplexSpec = std::vector<std::pair<std::string, Rational>>;

  Complex complex(const ComplexSpec& terms) {
    Complex c;
    for (const auto& [name, coefficient] : terms)
      c.add(species(name), coefficient);
    return c;
  }

  void reaction(const std::string& label, const ComplexSpec& reactant,
                const ComplexSpec& product,
                std::optional<double> rate = std::nullopt) {
    // Sequenced: reactant species register before product species.
    Complex from = complex(reactant);
    Complex to = complex(product);
    reaction(label, std::move(from), std::move(to), rate);
  }

  void reaction(const std::string& label, Complex reactant, Complex product,
                std::optional<double> rate = std::nullopt) {
    if (!labels_.insert(label).second)
      throw std::invalid_argument("duplicate reaction label: " + label);
    if (reactant == product)
      throw std::invalid_argument("trivial reaction (reactant equals product): " +
                                  label);
    if (rate && *rate <= 0)
      throw std::invalid_argument("nonpositive rate constant on " + label);
    const int from = intern_complex(reactant);
    const int to = intern_complex(product);
    net_.reactions_.push_back(
        {label, std::move(reactant), std::move(product), rate});
    net_.edges_.emplace_back(from, to);
  }

  Network build() {
    if (net_.reactions_.empty())
      throw std::invalid_argument("network has no reactions");
    std::set<int> used;
    for (const Complex& c : net_.complexes_)
      for (const auto& [sp, coeff] : c.coefficients()) used.insert(sp);
    for (const Species& sp : net_.species_)
      if (!used.contains(sp.index))
        throw std::invalid_argument("species never occurs in a complex: " +
                                    sp.name);
    return std::move(net_);
  }

 private:
  static bool valid_identifier(const std::string& name) {
    if (name.empty()) return false;
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    if (!alpha(name.front())) return false;
    for (char c : name)
      if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
    return true;
  }

  int intern_complex(const Complex& c) {
    auto it = complex_index_.find(c);
    if (it != complex_index_.end()) return it->second;
    const int index = static_cast<int>(net_.complexes_.size());
    net_.complexes_.push_back(c);
    complex_index_[c] = index;
    return index;
  }

  Network net_;
  std::map<Complex, int> complex_index_;
  std::set<std::string> labels_;
};

/// Matrix of complexes Y (species x complexes): column j is complex j.
inline RatMat complex_matrix(const Network& net) {
  RatMat y(net.species_count(), net.complex_count());
  for (int j = 0; j < net.complex_count(); ++j)
    for (const auto& [sp, coeff] : net.complexes()[j].coefficients())
      y(sp, j) = coeff;
  return y;
}

/// Incidence matrix I_a (complexes x reactions): column for y -> y' is
/// w_{y'} - w_{y}; exactly one +1 and one -1 per column.
inline RatMat incidence_matrix(const Network& net) {
  RatMat ia(net.complex_count(), net.reaction_count());
  for (int i = 0; i < net.reaction_count(); ++i) {
    const auto& [from, to] = net.edges()[i];
    ia(from, i) = -1;
    ia(to, i) = 1;
  }
  return ia;
}

/// Stoichiometric matrix N = Y * I_a (species x reactions).
inline RatMat stoichiometric_matrix(const Network& net) {
  RatMat n(net.species_count(), net.reaction_count());
  for (int i = 0; i < net.reaction_count(); ++i) {
    const RatVec v = net.reaction_vector(i);
    for (int s = 0; s < net.species_count(); ++s) n(s, i) = v[s];
  }
  return n;
}

/// Canonical basis of the stoichiometric subspace S = span{y' - y}, via
/// exact RREF of the reaction vectors (pivot = first nonzero column).
inline std::vector<RatVec> stoich_basis(const Network& net) {
  std::vector<RatVec> rows;
  rows.reserve(net.reaction_count());
  for (int i = 0; i < net.reaction_count(); ++i)
    rows.push_back(net.reaction_vector(i));
  return row_space_basis(RatMat::from_rows(rows));
}

inline int network_rank(const Network& net) {
  return static_cast<int>(stoich_basis(net).size());
}

struct StructuralReport {
  int species_count = 0;            // m
  int complex_count = 0;            // n
  int reactant_complex_count = 0;   // n_r
  int reaction_count = 0;           // r
  int linkage_classes = 0;          // l
  int strong_linkage_classes = 0;   // sl counting every SCC, singletons included
  int nontrivial_strong_linkage_classes = 0;
  int terminal_strong_linkage_classes = 0;  // t
  int rank = 0;                     // s = dim S
  int deficiency = 0;               // delta = n - l - s
  bool weakly_reversible = false;
  bool t_minimal = false;
  bool cycle_terminal = false;
  bool conservative = false;
  bool co_conservative = false;
  std::vector<std::vector<int>> linkage_class_members;  // complex indices
  std::vector<std::vector<int>> strong_class_members;   // SCCs, by smallest member
  std::vector<int> terminal_class_ids;                  // indices into strong_class_members
};

namespace detail {

// Iterative Tarjan SCC on the complex digraph. Components are returned
// sorted by their smallest complex index, members ascending.
inline std::vector<std::vector<int>> strongly_connected_components(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [from, to] : edges) adjacency[from].push_back(to);
  std::vector<int> index(n, -1), lowlink(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> components;
  int counter = 0;
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adjacency[f.v].size()) {
        const int w = adjacency[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::vector<int> component;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
          } while (w != v);
          std::sort(component.begin(), component.end());
          components.push_back(std::move(component));
        }
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

inline std::vector<std::vector<int>> connected_components(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [from, to] : edges) {
    adjacency[from].push_back(to);
    adjacency[to].push_back(from);
  }
  std::vector<int> component_of(n, -1);
  std::vector<std::vector<int>> components;
  for (int root = 0; root < n; ++root) {
    if (component_of[root] != -1) continue;
    std::vector<int> todo{root}, members;
    component_of[root] = static_cast<int>(components.size());
    while (!todo.empty()) {
      const int v = todo.back();
      todo.pop_back();
      members.push_back(v);
      for (int w : adjacency[v])
        if (component_of[w] == -1) {
          component_of[w] = component_of[root];
          todo.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

}  // namespace detail

/// True iff the stoichiometric subspace S contains a strictly positive
/// vector. Decided exactly (Fourier-Motzkin over the rationals).
inline bool is_co_conservative(const Network& net) {
  return span_contains_positive(stoich_basis(net),
                                static_cast<std::size_t>(net.species_count()));
}

/// True iff the orthogonal complement of S contains a strictly positive
/// vector (a positive conservation law).
inline bool is_conservative(const Network& net) {
  std::vector<RatVec> rows;
  for (int i = 0; i < net.reaction_count(); ++i)
    rows.push_back(net.reaction_vector(i));
  const auto perp = nullspace_basis(RatMat::from_rows(rows));
  return span_contains_positive(perp,
                                static_cast<std::size_t>(net.species_count()));
}

inline StructuralReport structural_report(const Network& net) {
  StructuralReport rep;
  rep.species_count = net.species_count();
  rep.complex_count = net.complex_count();
  rep.reactant_complex_count = net.reactant_complex_count();
  rep.reaction_count = net.reaction_count();

  rep.linkage_class_members =
      detail::connected_components(net.complex_count(), net.edges());
  rep.linkage_classes = static_cast<int>(rep.linkage_class_members.size());

  rep.strong_class_members =
      detail::strongly_connected_components(net.complex_count(), net.edges());
  rep.strong_linkage_classes = static_cast<int>(rep.strong_class_members.size());
  for (const auto& scc : rep.strong_class_members)
    if (scc.size() > 1) ++rep.nontrivial_strong_linkage_classes;

  // Terminal SCCs: no edge leaves the component.
  std::vector<int> scc_of(net.complex_count());
  for (std::size_t c = 0; c < rep.strong_class_members.size(); ++c)
    for (int v : rep.strong_class_members[c]) scc_of[v] = static_cast<int>(c);
  std::vector<bool> has_exit(rep.strong_class_members.size(), false);
  for (const auto& [from, to] : net.edges())
    if (scc_of[from] != scc_of[to]) has_exit[scc_of[from]] = true;
  for (std::size_t c = 0; c < has_exit.size(); ++c)
    if (!has_exit[c]) rep.terminal_class_ids.push_back(static_cast<int>(c));
  rep.terminal_strong_linkage_classes =
      static_cast<int>(rep.terminal_class_ids.size());

  rep.rank = network_rank(net);
  rep.deficiency = rep.complex_count - rep.linkage_classes - rep.rank;

  // Weak reversibility: every linkage class is a single SCC.
  rep.weakly_reversible = rep.strong_linkage_classes == rep.linkage_classes;
  rep.t_minimal =
      rep.terminal_strong_linkage_classes == rep.linkage_classes;
  rep.cycle_terminal = rep.complex_count == rep.reactant_complex_count;
  rep.conservative = is_conservative(net);
  rep.co_conservative = is_co_conservative(net);
  return rep;
}

}  // namespace crnacr

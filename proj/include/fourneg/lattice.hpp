#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fourneg {

// Elements are identified by their position in the declared element list.
using Elem = std::size_t;
using ElemMap = std::vector<Elem>;

struct LatticeSpec {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<std::vector<std::pair<std::string, std::string>>> ortho;
};

// Parses the line-oriented lattice format. Throws ParseError with a line number.
LatticeSpec parse_lattice_spec(std::string_view text);
std::string write_lattice_spec(const LatticeSpec& spec);

class FiniteOrthoLattice {
 public:
  // Builds from an explicit order relation (row-major n*n). Computes and
  // verifies meet/join tables; verifies the ortho table when present.
  static FiniteOrthoLattice from_order(std::string name, std::vector<std::string> labels,
                                       std::vector<std::uint8_t> leq, std::optional<ElemMap> ortho);

  const std::string& name() const { return name_; }
  std::size_t size() const { return n_; }
  const std::string& label(Elem e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  Elem at(std::string_view label) const;  // throws UnknownElement

  bool leq(Elem a, Elem b) const { return leq_[a * n_ + b] != 0; }
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  // Meet/join of an arbitrary family; the empty family gives top/bottom.
  template <class Range>
  Elem meet_all(const Range& r) const {
    Elem acc = top_;
    for (Elem e : r) acc = meet(acc, e);
    return acc;
  }
  template <class Range>
  Elem join_all(const Range& r) const {
    Elem acc = bottom_;
    for (Elem e : r) acc = join(acc, e);
    return acc;
  }

  bool has_ortho() const { return ortho_.has_value(); }
  Elem ortho(Elem e) const;  // throws NoOrthocomplementation
  const ElemMap& ortho_table() const;

  std::vector<std::pair<Elem, Elem>> hasse_covers() const;
  std::vector<Elem> atoms() const;
  std::vector<Elem> elements() const;

  // A copy that drops (or replaces, after verification) the ortho table.
  FiniteOrthoLattice without_ortho() const;
  FiniteOrthoLattice with_ortho(const ElemMap& ortho) const;

  LatticeSpec to_spec() const;

 private:
  FiniteOrthoLattice() = default;
  void check_ortho(const ElemMap& o) const;

  std::string name_;
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  std::vector<Elem> meet_, join_;
  Elem bottom_ = 0, top_ = 0;
  std::optional<ElemMap> ortho_;
};

FiniteOrthoLattice build_lattice(const LatticeSpec& spec);

struct DistributivityResult {
  bool holds;
  std::optional<std::array<Elem, 3>> witness;
};
// x∧(y∨z) = (x∧y)∨(x∧z) for all triples; lexicographically-first violation.
DistributivityResult is_distributive(const FiniteOrthoLattice& L);

struct OrthomodularityResult {
  bool holds;
  std::optional<std::pair<Elem, Elem>> witness;
};
// x ≤ y ⇒ y = x∨(y∧x⊥); lexicographically-first violating pair.
OrthomodularityResult is_orthomodular(const FiniteOrthoLattice& L);

// (0, x, y, x⊥, y⊥, 1) forming a sub-ortholattice isomorphic to O6, x < y.
std::optional<std::array<Elem, 6>> find_O6_sublattice(const FiniteOrthoLattice& L);

// a, b ∉ {0,1}, a⊥ < b, a∧b = 0. The strict a⊥ < b excludes the trivial b = a⊥.
std::optional<std::pair<Elem, Elem>> nonorthomodularity_pair(const FiniteOrthoLattice& L);

FiniteOrthoLattice catalog(std::string_view name);
const std::vector<std::string>& catalog_names();

// Boolean lattice on n atoms, labels ordered by (popcount, mask).
FiniteOrthoLattice boolean_lattice(std::size_t atoms);
// 0 < a_1 < ... < 1 chain with n elements, no ortho.
FiniteOrthoLattice chain_lattice(std::size_t n);

}  // namespace fourneg

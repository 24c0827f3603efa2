#pragma once

#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fourneg/lattice.hpp"

namespace fourneg {

constexpr int kAxiomCount = 18;

// Bit k set means axiom nk holds (bit 0 unused).
using AxiomProfile = std::bitset<kAxiomCount + 1>;

struct AxiomResult {
  bool holds;
  std::vector<Elem> witness;  // lexicographically-first failing tuple
};

// Exhaustive check of axiom n1..n18 for the map f on L.
AxiomResult check_axiom(const FiniteOrthoLattice& L, const ElemMap& f, int axiom);
AxiomProfile axiom_profile(const FiniteOrthoLattice& L, const ElemMap& f);
std::string axiom_statement(int axiom);
std::string profile_string(const AxiomProfile& p);

std::vector<std::string> classify(const FiniteOrthoLattice& L, const ElemMap& f);

class NegationMap {
 public:
  NegationMap(std::shared_ptr<const FiniteOrthoLattice> base, ElemMap table);
  const FiniteOrthoLattice& base() const { return *base_; }
  std::shared_ptr<const FiniteOrthoLattice> base_ptr() const { return base_; }
  const ElemMap& table() const { return table_; }
  Elem operator()(Elem e) const { return table_[e]; }
  const AxiomProfile& profile() const { return profile_; }
  bool satisfies(int axiom) const { return profile_[axiom]; }

 private:
  std::shared_ptr<const FiniteOrthoLattice> base_;
  ElemMap table_;
  AxiomProfile profile_;
};

// `negmap <lattice-name>` followed by `map a:b` lines. Returns the lattice name
// and the label map; resolution against a lattice is separate.
struct NegmapSpec {
  std::string lattice;
  std::vector<std::pair<std::string, std::string>> entries;
};
NegmapSpec parse_negmap(std::string_view text);
std::string write_negmap(const NegmapSpec& spec);
ElemMap resolve_negmap(const FiniteOrthoLattice& L, const NegmapSpec& spec);

enum class ClauseStatus { PremisesFalse, Verified, Violated };
std::string to_string(ClauseStatus s);

struct LemmaClause {
  std::string id;
  std::string statement;
  ClauseStatus status;
  std::string witness;
};

// Every implication of the derived-negation lemmas, evaluated on (L, f).
std::vector<LemmaClause> derived_lemma_suite(const FiniteOrthoLattice& L, const ElemMap& f);

}  // namespace fourneg

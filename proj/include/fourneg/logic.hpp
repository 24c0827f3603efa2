#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fourneg/formula.hpp"
#include "fourneg/lattice.hpp"
#include "fourneg/negation.hpp"
#include "fourneg/spectral.hpp"

namespace fourneg {

enum class Logic { CoQInt, QInt, BiQInt, Akchurin };
std::string to_string(Logic l);
// "coqint", "qint", "biqint", "akchurin" (case-insensitive). Throws InvalidSpec.
Logic parse_logic(std::string_view text);

// Connectives beyond ∧, ∨, ⊥, ⊤. ¬ needs imp and ⌐ needs coimp.
struct Signature {
  bool qneg = false, cqneg = false, imp = false, coimp = false;
};
Signature signature_of(Logic l);
Signature signature_of(const Formula& f);
Signature signature_of(const Sequent& s);
bool within(const Signature& s, const Signature& allowed);
std::string to_string(const Signature& s);

struct AlgebraModel {
  std::string name;
  std::shared_ptr<const FiniteOrthoLattice> lattice;
  std::optional<ElemMap> qneg, cqneg;           // ∘ and ∼
  std::optional<std::vector<Elem>> imp, coimp;  // row-major y⇒z and x⤙y
  Signature designated() const;
};

struct ModelClass {
  bool distributive = false;
  bool quasi = false, coquasi = false;  // ∘ {n1,n2,n6} and ∼ {n1,n3,n7}, lattice distributive
  bool qneg_antitone = false, cqneg_antitone = false;
  bool intuitionistic = false, cointuitionistic = false;  // ∘ has n4, ∼ has n5
  bool heyting = false, brouwer = false;                  // ⇒ and ⤙ are the residuals of ∧ and ∨
  AxiomProfile qneg_profile, cqneg_profile;
  std::vector<std::string> tags;
  bool models(Logic l) const;
};
ModelClass classify_model(const AlgebraModel& M);

// ∘ and ∼ are the paracomplete and paraconsistent negations; ⇒ and ⤙ are the
// Sub_clop residuals.
AlgebraModel subclop_model(const SubclopAlgebra& A, std::string name);
// ∘ = ∼ = the orthocomplement when present; ⇒ and ⤙ when the lattice has them.
AlgebraModel lattice_model(std::shared_ptr<const FiniteOrthoLattice> L, std::string name);
// n-element chain with ∘ = ¬ and ∼ = ⌐.
AlgebraModel chain_model(std::size_t n);

using Assignment = std::vector<std::pair<std::string, Elem>>;
std::string format_assignment(const AlgebraModel& M, const Assignment& a);

// Throws MissingConnective, or InvalidSpec for a variable absent from `a`.
Elem evaluate(const Formula& f, const AlgebraModel& M, const Assignment& a);

constexpr std::size_t kDefaultMaxAssignments = 10'000'000;

struct Validity {
  bool valid;
  Assignment counter;  // first failing assignment, variables in order of occurrence
  std::uint64_t assignments;
};
// Exhaustive over the sequent's own variables. Throws TooManyAssignments.
Validity sequent_valid(const Sequent& s, const AlgebraModel& M,
                       std::size_t bound = kDefaultMaxAssignments);

struct Schema {
  std::string id;
  std::string text;
};
// a1-a14, a17, a18.
const std::vector<Schema>& axiom_schemas();

struct AxiomVerdict {
  std::string id;
  std::string sequent;
  bool valid;
  std::string witness;
};
// Every schema whose connectives lie in `sig`.
std::vector<AxiomVerdict> axiom_suite(const AlgebraModel& M, const Signature& sig,
                                      std::size_t bound = kDefaultMaxAssignments);

constexpr std::size_t kDefaultMaxUniverse = 30'000;
constexpr std::size_t kDefaultMaxSaturationUniverse = 5'000;
constexpr std::size_t kDefaultRuleWork = 4'000'000'000;

struct RuleVerdict {
  std::string id;         // r1..r9
  std::string direction;  // "" or lhs=>rhs / rhs=>lhs for r6-r9
  bool holds;
  bool expected;  // the model has the property the rule needs
  std::uint64_t instances;
  std::string witness;
};
// Rule instances over formulas up to `depth` in `vars` variables over the model's
// designated connectives, checked on premise and conclusion validity.
// Throws TooLarge when the universe or the estimated work exceeds the bounds.
std::vector<RuleVerdict> rule_soundness_suite(const AlgebraModel& M, std::size_t depth = 2,
                                              std::size_t vars = 2,
                                              std::size_t max_universe = kDefaultMaxUniverse,
                                              std::uint64_t max_work = kDefaultRuleWork);

// Formulas up to a depth over a fixed variable set, children before parents,
// with exact-duplicate lookup.
class Universe {
 public:
  struct Node {
    Op op;
    int a = -1, b = -1;  // children, or the variable index in a for Op::Var
  };
  Universe(const Signature& sig, std::size_t depth, std::size_t vars, std::size_t bound);

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t depth_of(std::size_t i) const { return depth_[i]; }
  int find(Op op, int a, int b) const;
  // Node of a formula over this universe's variables, or -1.
  int find(const Formula& f) const;
  FormulaPtr formula(std::size_t i) const;

 private:
  int add(Op op, int a, int b, std::size_t d);

  std::vector<std::string> vars_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> depth_;
  std::unordered_map<std::uint64_t, int> index_;
  mutable std::vector<FormulaPtr> cache_;
};

class Saturation {
 public:
  Logic logic() const { return logic_; }
  std::size_t depth() const { return depth_; }
  std::size_t vars() const { return vars_; }
  const Universe& universe() const { return *universe_; }
  std::size_t rounds() const { return rounds_; }
  std::uint64_t size() const;  // number of derived sequents
  bool derived(std::size_t lhs, std::size_t rhs) const {
    return (rows_[lhs * words_ + rhs / 64] >> (rhs % 64)) & 1U;
  }
  bool contains(const Sequent& s) const;
  // Derived sequents ordered by (lhs, rhs) universe index.
  std::vector<Sequent> sequents(std::size_t limit) const;

 private:
  friend Saturation saturate(Logic, std::size_t, std::size_t, std::size_t);
  Logic logic_ = Logic::CoQInt;
  std::size_t depth_ = 0, vars_ = 0, rounds_ = 0, words_ = 0;
  std::shared_ptr<const Universe> universe_;
  std::vector<std::uint64_t> rows_;
};

// Axiom instances over the universe closed under the logic's rules restricted
// to the universe. Throws TooLarge past `max_universe` formulas.
Saturation saturate(Logic l, std::size_t depth, std::size_t vars,
                    std::size_t max_universe = kDefaultMaxSaturationUniverse);

struct BankModel {
  AlgebraModel model;
  ModelClass cls;
};
// Fixed scan order: subclop:O6, subclop:MO2, subclop:MO3, subclop:B2, chain:3,
// subclop:B3, catalog:B1 ... catalog:B4.
std::vector<BankModel> model_bank(std::size_t max_points = kDefaultSubclopBound);

struct AuditResult {
  std::string model;
  bool sound;
  std::uint64_t checked;  // distinct value-class pairs
  std::string witness;
};
// Every derived sequent valid in every bank model of the logic's class.
std::vector<AuditResult> soundness_audit(const Saturation& S, const std::vector<BankModel>& bank,
                                         std::uint64_t max_assignments = kDefaultMaxAssignments);

// The weakest of coQInt, QInt, biQInt, Akchurin whose signature covers `s`.
Logic minimal_logic(const Sequent& s);

struct CountermodelResult {
  std::optional<std::string> model;
  Assignment assignment;
  std::string assignment_text;
  std::vector<std::string> scanned;
};
// First invalidating valuation in the bank models of the logic's class.
// Throws InvalidSpec when the sequent uses connectives outside the logic.
CountermodelResult countermodel_search(const Sequent& s, Logic l,
                                       const std::vector<BankModel>& bank,
                                       std::size_t bound = kDefaultMaxAssignments);

}  // namespace fourneg

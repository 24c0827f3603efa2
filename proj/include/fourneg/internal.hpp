#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fourneg/daseinisation.hpp"
#include "fourneg/lattice.hpp"

namespace fourneg {

// Bullet: coquasiintuitionistic negation, joins inherited, meets re-closed.
// Circ: quasiintuitionistic negation, meets inherited, joins re-closed.
enum class Flavor { Bullet, Circ };
std::string to_string(Flavor f);

struct InternalLattice {
  Flavor flavor;
  std::vector<Elem> carrier;   // host elements with x = x¬¬, ascending
  FiniteOrthoLattice lattice;  // host labels, ortho = host negation restricted
};

// Throws WrongAlgebraClass unless (host, neg) is a coquasiintuitionistic
// (Bullet) or quasiintuitionistic (Circ) algebra.
InternalLattice internal_lattice(const FiniteOrthoLattice& host, const ElemMap& neg, Flavor f);

// Closure under ¬, bounds, inherited and re-closed operations, image of ¬¬.
std::vector<SuiteItem> internal_suite(const FiniteOrthoLattice& host, const ElemMap& neg,
                                      const InternalLattice& I);

// The internal lattices of (Sub_clop, •) and (Sub_clop, ∘), computed on raw
// masks so that they scale past the explicit-lattice bound.
struct SubclopInternal {
  Flavor flavor;
  std::vector<std::uint64_t> carrier;  // canonical Sub_clop order
  FiniteOrthoLattice lattice;
  std::uint64_t host_size = 0;
  std::string violation;  // first failure of closure or operation laws, empty if none
};
SubclopInternal subclop_internal(const DaseinCache& D, Flavor f, std::size_t bound);

enum class Side { Outer, Inner };
std::string to_string(Side s);

// Sub_clop modulo S ≈ T iff ε(S) = ε(T), with the order ε(S) ≤ ε(T), and the
// negation [S]• = [S•] (outer) or [S]∘ = [S∘] (inner).
struct EpsQuotient {
  Side side;
  std::vector<std::uint64_t> reps;  // canonically-first member of each class
  std::vector<Elem> eps;            // ε of each class
  std::vector<std::uint64_t> class_size;
  FiniteOrthoLattice lattice;
  std::string violation;  // negation not constant on a class, or meet law broken
};
EpsQuotient quotient_eps(const DaseinCache& D, Side s, std::size_t bound);

// Order-, bound- and ortho-preserving bijection L1 → L2, if any.
// Throws TooLarge above 64 elements.
std::optional<ElemMap> ortho_iso(const FiniteOrthoLattice& L1, const FiniteOrthoLattice& L2);

struct OmlCondition {
  bool holds;
  std::string witness;  // "x=... y=..." when violated
};
// Bullet: no x, y ∉ {0,1} with x¬ ≤ y, (x∧y)¬ = 1, y¬¬ ≠ x¬.
// Circ:   no x, y ∉ {0,1} with y ≤ x¬, (x∨y)¬ = 0, y¬¬ ≠ x¬.
OmlCondition internal_oml_condition(const FiniteOrthoLattice& host, const ElemMap& neg, Flavor f);

struct BridgeReport {
  std::array<bool, 5> holds{};
  std::array<std::string, 5> witness;
  bool agree = false;
};
// (i) the • condition on Sub_clop, (ii) the ∘ condition, (iii) the •• lattice
// orthomodular, (iv) the ∘∘ lattice orthomodular, (v) L orthomodular.
BridgeReport orthomodularity_bridge(const SubclopAlgebra& A);

struct DeMorganVerdict {
  bool de_morgan;  // involution and distributive
  bool boolean;    // orthocomplementation and distributive
  std::string witness;
};
DeMorganVerdict de_morgan_verdict(const FiniteOrthoLattice& host, const ElemMap& neg);
// Scans Sub_clop for S¬¬ ≠ S first; falls back to the explicit algebra when
// every S is fixed, which needs the Sub_clop size within `bound` points.
DeMorganVerdict subclop_de_morgan(const DaseinCache& D, Side s, std::size_t bound);

struct NogoReport {
  DeMorganVerdict bullet, circ;
  bool consistent;  // flags equal for each negation
  bool excluded;    // neither negation is De Morgan
  std::string summary;
};
NogoReport nogo_report(const DaseinCache& D, std::size_t bound);

struct GlivenkoReport {
  std::size_t brouwer_size, heyting_size;
  bool brouwer_boolean, heyting_boolean;
};
// Internal lattices of (Sub_clop, ⌐) under ⌐⌐ and (Sub_clop, ¬) under ¬¬.
GlivenkoReport mckinsey_tarski_check(const SubclopAlgebra& A);
// The same on raw masks. A finite lattice is boolean iff it is atomistic with
// 2^#atoms elements; that test is linear in the carrier after finding atoms.
GlivenkoReport subclop_glivenko(const SpectralPresheaf& P, std::size_t bound);

struct ThetaCheck {
  bool intertwines;  // Θ(x∘) = Θ(x)•
  bool iso;          // Θ is an ortho isomorphism, concluded only if it intertwines
  std::string witness;
};
// Verifies a user-supplied map from the ∘∘ lattice to the •• lattice.
ThetaCheck theta_check(const FiniteOrthoLattice& circ_lattice,
                       const FiniteOrthoLattice& bullet_lattice, const ElemMap& theta);

}  // namespace fourneg

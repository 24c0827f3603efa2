#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fourneg/spectral.hpp"

namespace fourneg {

// ⋀{b ∈ V : a ≤ b} and ⋁{b ∈ V : b ≤ a}, computed in L.
Elem outer_support(const SpectralPresheaf& P, std::size_t v, Elem a);
Elem inner_support(const SpectralPresheaf& P, std::size_t v, Elem a);

ClopenSubpresheaf outer_daseinise(const SpectralPresheaf& P, Elem a);
// The pointwise family V ↦ κ_V(inner support) need not be restriction-closed
// when contexts are nested; δⁱ(a) is its largest restriction-closed part.
ClopenSubpresheaf inner_daseinise(const SpectralPresheaf& P, Elem a);
std::uint64_t inner_pointwise_family(const SpectralPresheaf& P, Elem a);
// First (a, point) where the pointwise inner family fails restriction closure.
std::optional<std::pair<Elem, std::size_t>> inner_pointwise_defect(const SpectralPresheaf& P);

// ε°(S) = ⋁{a : δ°(a) ≤ S};  ε∨(S) = ⋀{a : S ≤ δⁱ(a)}.
Elem eps_outer(const SpectralPresheaf& P, const ClopenSubpresheaf& S);
Elem eps_inner(const SpectralPresheaf& P, const ClopenSubpresheaf& S);

// S• = δ°(ε°(S)⊥);  S∘ = δⁱ(ε∨(S)⊥).
ClopenSubpresheaf bullet_neg(const SpectralPresheaf& P, const ClopenSubpresheaf& S);
ClopenSubpresheaf circ_neg(const SpectralPresheaf& P, const ClopenSubpresheaf& S);

// δ° and δⁱ of every element of L, with ε and the two negations on raw point
// masks. Used where Sub_clop is too large for an explicit lattice.
class DaseinCache {
 public:
  explicit DaseinCache(std::shared_ptr<const SpectralPresheaf> P);
  const SpectralPresheaf& presheaf() const { return *P_; }
  std::shared_ptr<const SpectralPresheaf> presheaf_ptr() const { return P_; }
  std::uint64_t outer(Elem a) const { return outer_[a]; }
  std::uint64_t inner(Elem a) const { return inner_[a]; }
  Elem eps_outer(std::uint64_t s) const;
  Elem eps_inner(std::uint64_t s) const;
  std::uint64_t bullet(std::uint64_t s) const;
  std::uint64_t circ(std::uint64_t s) const;

 private:
  std::shared_ptr<const SpectralPresheaf> P_;
  std::vector<std::uint64_t> outer_, inner_;
};

// Tables of • and ∘ indexed by SubclopAlgebra element order.
ElemMap bullet_table(const SubclopAlgebra& A);
ElemMap circ_table(const SubclopAlgebra& A);

struct SuiteItem {
  std::string id;
  std::string statement;
  bool holds;
  std::string witness;
};

// The 14 properties of • and the 15 properties of ∘, exhaustive over Sub_clop.
std::vector<SuiteItem> star_property_suite(const SubclopAlgebra& A);

// Order, bound, join/meet preservation and adjunction checks for δ°, δⁱ, ε°, ε∨.
std::vector<SuiteItem> daseinisation_suite(const SubclopAlgebra& A);

struct ParaconsistencyReport {
  bool fully_paraconsistent;  // S∧S• = ∅ exactly for S ∈ {∅, Σ}
  std::vector<Elem> overlap;  // S with S∧S• ≠ ∅
  bool fully_paracomplete;    // S∨S∘ = Σ exactly for S ∈ {∅, Σ}
  std::vector<Elem> gap;      // S with S∨S∘ ≠ Σ
};
ParaconsistencyReport paraconsistency_report(const SubclopAlgebra& A);

}  // namespace fourneg

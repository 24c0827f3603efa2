#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "fourneg/lattice.hpp"

namespace fourneg {

constexpr std::size_t kDefaultSubclopBound = 20;
constexpr std::size_t kMaxPoints = 64;
// SubclopAlgebra keeps n*n tables; larger Sub_clop is only handled by streaming.
constexpr std::size_t kMaxExplicitSubclop = 1024;

struct Context {
  std::vector<Elem> elements;  // sorted
  std::vector<Elem> atoms;     // sorted
  std::size_t id = 0;
  bool contains(Elem e) const;
};

// All distributive sub-ortholattices of L other than {0,1}, ordered by
// (size, element indices). Throws TrivialLattice for |L| <= 2.
std::vector<Context> enumerate_contexts(const FiniteOrthoLattice& L);

// A restriction-closed family of spectrum subsets, one bit per global point.
struct ClopenSubpresheaf {
  std::uint64_t points = 0;
  std::uint64_t owner = 0;  // identity of the presheaf it belongs to
  friend bool operator==(const ClopenSubpresheaf&, const ClopenSubpresheaf&) = default;
};

class SpectralPresheaf {
 public:
  explicit SpectralPresheaf(std::shared_ptr<const FiniteOrthoLattice> L);

  const FiniteOrthoLattice& base() const { return *base_; }
  std::shared_ptr<const FiniteOrthoLattice> base_ptr() const { return base_; }
  std::uint64_t id() const { return id_; }

  const std::vector<Context>& contexts() const { return contexts_; }
  const Context& context(std::size_t v) const { return contexts_[v]; }
  bool context_leq(std::size_t v, std::size_t w) const { return order_[v * contexts_.size() + w]; }

  // Points are atoms of contexts, numbered context-major.
  std::size_t num_points() const { return point_context_.size(); }
  std::size_t point_context(std::size_t p) const { return point_context_[p]; }
  Elem point_atom(std::size_t p) const { return point_atom_[p]; }
  std::uint64_t context_mask(std::size_t v) const { return context_mask_[v]; }
  std::vector<std::size_t> stone_spectrum(std::size_t v) const;
  // ξ_c(b) = [c ≤ b], the point read as a homomorphism V → {0,1}.
  bool point_hom(std::size_t p, Elem b) const;
  std::string point_name(std::size_t p) const;

  // The unique point of V below the atom of p; requires V ⊆ context(p).
  std::size_t restrict_point(std::size_t p, std::size_t v) const;
  // Points reachable from p by restriction to strictly smaller contexts.
  std::uint64_t below_mask(std::size_t p) const { return below_[p]; }

  std::uint64_t kappa(std::size_t v, Elem b) const;  // throws ElementNotInContext

  bool is_closed(std::uint64_t mask) const;
  std::uint64_t restriction_closure(std::uint64_t mask) const;
  // Largest restriction-closed subfamily of `mask`.
  std::uint64_t restriction_interior(std::uint64_t mask) const;
  ClopenSubpresheaf make(std::uint64_t mask) const;  // throws InvalidSpec if not closed
  ClopenSubpresheaf empty() const { return {0, id_}; }
  ClopenSubpresheaf full() const { return {all_, id_}; }
  std::uint64_t all_points() const { return all_; }

  std::string format(const ClopenSubpresheaf& S) const;

 private:
  std::shared_ptr<const FiniteOrthoLattice> base_;
  std::uint64_t id_;
  std::vector<Context> contexts_;
  std::vector<char> order_;
  std::vector<std::size_t> point_context_;
  std::vector<Elem> point_atom_;
  std::vector<std::uint64_t> context_mask_;
  std::vector<std::size_t> first_point_;
  std::vector<std::uint64_t> below_;
  std::uint64_t all_ = 0;
};

struct LayerCheck {
  bool holds;
  std::string witness;  // first failure, empty when `holds`
};
// V atomistic and κ_V a bijection onto spectrum subsets sending ∧, ∨, ⊥ to
// ∩, ∪ and complement.
LayerCheck stone_check(const SpectralPresheaf& P, std::size_t v);
// Restriction X → V equals X → W → V for every chain V ⊆ W ⊆ X.
LayerCheck functoriality_check(const SpectralPresheaf& P);

// Finite Stone spaces are discrete: interior and closure are identities. The
// lattice operations still route through these hooks.
inline std::uint64_t clopen_interior(std::uint64_t m) { return m; }
inline std::uint64_t clopen_closure(std::uint64_t m) { return m; }

ClopenSubpresheaf sub_meet(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                           const ClopenSubpresheaf& T);
ClopenSubpresheaf sub_join(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                           const ClopenSubpresheaf& T);
ClopenSubpresheaf sub_big_meet(const SpectralPresheaf& P,
                               const std::vector<ClopenSubpresheaf>& family);
ClopenSubpresheaf sub_big_join(const SpectralPresheaf& P,
                               const std::vector<ClopenSubpresheaf>& family);
bool sub_leq(const SpectralPresheaf& P, const ClopenSubpresheaf& S, const ClopenSubpresheaf& T);

// (S⇒T)_V = {λ ∈ Σ_V : every restriction of λ lying in S lies in T}.
ClopenSubpresheaf sub_heyting(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                              const ClopenSubpresheaf& T);
// Restriction closure of the pointwise difference S \ T.
ClopenSubpresheaf sub_coheyting(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                                const ClopenSubpresheaf& T);

// All clopen subpresheaves, ordered lexicographically over contexts.
// Throws TooLarge when the point count exceeds `bound`.
std::vector<ClopenSubpresheaf> enumerate_subclop(const SpectralPresheaf& P,
                                                 std::size_t bound = kDefaultSubclopBound);

// Canonical order of enumerate_subclop: lexicographic over per-context masks.
bool subclop_before(const SpectralPresheaf& P, std::uint64_t a, std::uint64_t b);

// Calls `visit` on every clopen subpresheaf mask, unordered, without storing them.
void visit_subclop(const SpectralPresheaf& P, std::size_t bound,
                   const std::function<void(std::uint64_t)>& visit);

// Number of clopen subpresheaves, counted without materialising them.
std::uint64_t count_subclop(const SpectralPresheaf& P, std::size_t bound);

// Sub_clop(Σ^L) as an explicit finite lattice with its residuals.
class SubclopAlgebra {
 public:
  // Throws TooLarge past `bound` points or kMaxExplicitSubclop elements.
  explicit SubclopAlgebra(std::shared_ptr<const SpectralPresheaf> P,
                          std::size_t bound = kDefaultSubclopBound);

  const SpectralPresheaf& presheaf() const { return *P_; }
  std::shared_ptr<const SpectralPresheaf> presheaf_ptr() const { return P_; }
  const FiniteOrthoLattice& lattice() const { return *lattice_; }
  std::shared_ptr<const FiniteOrthoLattice> lattice_ptr() const { return lattice_; }
  std::size_t size() const { return elements_.size(); }
  const ClopenSubpresheaf& element(Elem i) const { return elements_[i]; }
  const std::vector<ClopenSubpresheaf>& elements() const { return elements_; }
  Elem index_of(const ClopenSubpresheaf& S) const;

  Elem heyting(Elem s, Elem t) const { return heyting_[s * size() + t]; }
  Elem coheyting(Elem s, Elem t) const { return coheyting_[s * size() + t]; }
  const std::vector<Elem>& heyting_table() const { return heyting_; }
  const std::vector<Elem>& coheyting_table() const { return coheyting_; }
  ElemMap heyting_negation() const;  // S ⇒ ∅
  ElemMap brouwer_negation() const;  // Σ ⤙ S

 private:
  std::shared_ptr<const SpectralPresheaf> P_;
  std::vector<ClopenSubpresheaf> elements_;
  std::unordered_map<std::uint64_t, Elem> index_;
  std::shared_ptr<const FiniteOrthoLattice> lattice_;
  std::vector<Elem> heyting_, coheyting_;
};

}  // namespace fourneg

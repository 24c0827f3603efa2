#include "fourneg/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <functional>
#include <set>

#include "fourneg/errors.hpp"

namespace fourneg {

bool Context::contains(Elem e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

namespace {

std::vector<char> close_suborthlattice(const FiniteOrthoLattice& L, std::vector<char> in) {
  const std::size_t n = L.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem a = 0; a < n; ++a) {
      if (!in[a]) continue;
      Elem o = L.ortho(a);
      if (!in[o]) in[o] = 1, changed = true;
      for (Elem b = 0; b < n; ++b) {
        if (!in[b]) continue;
        Elem m = L.meet(a, b), j = L.join(a, b);
        if (!in[m]) in[m] = 1, changed = true;
        if (!in[j]) in[j] = 1, changed = true;
      }
    }
  }
  return in;
}

bool distributive_on(const FiniteOrthoLattice& L, const std::vector<Elem>& s) {
  for (Elem x : s)
    for (Elem y : s)
      for (Elem z : s)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return false;
  return true;
}

std::vector<Elem> members(const std::vector<char>& in) {
  std::vector<Elem> out;
  for (Elem e = 0; e < in.size(); ++e)
    if (in[e]) out.push_back(e);
  return out;
}

std::atomic<std::uint64_t> next_presheaf_id{1};

}  // namespace

std::vector<Context> enumerate_contexts(const FiniteOrthoLattice& L) {
  if (!L.has_ortho()) throw NoOrthocomplementation();
  if (L.size() <= 2) throw TrivialLattice();
  const std::size_t n = L.size();

  std::vector<char> seed(n, 0);
  seed[L.bottom()] = seed[L.top()] = 1;
  std::set<std::vector<Elem>> seen{members(seed)};
  std::deque<std::vector<char>> queue{seed};
  std::vector<std::vector<Elem>> found;
  // Every distributive sub-ortholattice is reached by adding one generator at a
  // time, and sub-ortholattices of a non-distributive one are never needed.
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (Elem e = 0; e < n; ++e) {
      if (cur[e]) continue;
      auto next = cur;
      next[e] = 1;
      next = close_suborthlattice(L, std::move(next));
      auto key = members(next);
      if (!seen.insert(key).second) continue;
      if (!distributive_on(L, key)) continue;
      found.push_back(key);
      queue.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  std::vector<Context> out;
  for (auto& elems : found) {
    Context c;
    c.id = out.size();
    c.elements = std::move(elems);
    for (Elem e : c.elements) {
      if (e == L.bottom()) continue;
      bool minimal = true;
      for (Elem f : c.elements)
        if (f != L.bottom() && L.lt(f, e)) minimal = false;
      if (minimal) c.atoms.push_back(e);
    }
    out.push_back(std::move(c));
  }
  return out;
}

SpectralPresheaf::SpectralPresheaf(std::shared_ptr<const FiniteOrthoLattice> L)
    : base_(std::move(L)), id_(next_presheaf_id++) {
  contexts_ = enumerate_contexts(*base_);
  const std::size_t k = contexts_.size();
  order_.assign(k * k, 0);
  for (std::size_t v = 0; v < k; ++v)
    for (std::size_t w = 0; w < k; ++w)
      order_[v * k + w] = std::includes(contexts_[w].elements.begin(), contexts_[w].elements.end(),
                                        contexts_[v].elements.begin(), contexts_[v].elements.end());
  for (std::size_t v = 0; v < k; ++v) {
    first_point_.push_back(point_context_.size());
    std::uint64_t mask = 0;
    for (Elem a : contexts_[v].atoms) {
      if (point_context_.size() >= kMaxPoints) throw TooLarge("spectral point count", kMaxPoints);
      mask |= std::uint64_t{1} << point_context_.size();
      point_context_.push_back(v);
      point_atom_.push_back(a);
    }
    context_mask_.push_back(mask);
    all_ |= mask;
  }
  below_.assign(num_points(), 0);
  for (std::size_t p = 0; p < num_points(); ++p)
    for (std::size_t v = 0; v < k; ++v)
      if (v != point_context_[p] && context_leq(v, point_context_[p]))
        below_[p] |= std::uint64_t{1} << restrict_point(p, v);
}

std::vector<std::size_t> SpectralPresheaf::stone_spectrum(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < contexts_[v].atoms.size(); ++i) out.push_back(first_point_[v] + i);
  return out;
}

bool SpectralPresheaf::point_hom(std::size_t p, Elem b) const {
  if (!contexts_[point_context_[p]].contains(b)) throw ElementNotInContext(base_->label(b));
  return base_->leq(point_atom_[p], b);
}

std::string SpectralPresheaf::point_name(std::size_t p) const {
  return "V" + std::to_string(point_context_[p]) + ":" + base_->label(point_atom_[p]);
}

std::size_t SpectralPresheaf::restrict_point(std::size_t p, std::size_t v) const {
  const Elem w = point_atom_[p];
  const auto& atoms = contexts_[v].atoms;
  std::size_t found = atoms.size();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (base_->leq(w, atoms[i])) {
      if (found != atoms.size()) throw Error("restriction is not unique", false);
      found = i;
    }
  if (found == atoms.size()) throw Error("restriction target is not a subcontext", false);
  return first_point_[v] + found;
}

std::uint64_t SpectralPresheaf::kappa(std::size_t v, Elem b) const {
  if (!contexts_[v].contains(b)) throw ElementNotInContext(base_->label(b));
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < contexts_[v].atoms.size(); ++i)
    if (base_->leq(contexts_[v].atoms[i], b)) m |= std::uint64_t{1} << (first_point_[v] + i);
  return m;
}

bool SpectralPresheaf::is_closed(std::uint64_t mask) const {
  if (mask & ~all_) return false;
  for (std::uint64_t rest = mask; rest; rest &= rest - 1)
    if (below_[std::countr_zero(rest)] & ~mask) return false;
  return true;
}

std::uint64_t SpectralPresheaf::restriction_closure(std::uint64_t mask) const {
  std::uint64_t out = mask & all_;
  for (std::uint64_t rest = out; rest; rest &= rest - 1) out |= below_[std::countr_zero(rest)];
  return out;
}

std::uint64_t SpectralPresheaf::restriction_interior(std::uint64_t mask) const {
  std::uint64_t out = 0;
  for (std::uint64_t rest = mask & all_; rest; rest &= rest - 1) {
    const std::size_t p = std::countr_zero(rest);
    if ((below_[p] & ~mask) == 0) out |= std::uint64_t{1} << p;
  }
  return out;
}

ClopenSubpresheaf SpectralPresheaf::make(std::uint64_t mask) const {
  if (!is_closed(mask)) throw InvalidSpec("family is not closed under restriction", false);
  return {mask, id_};
}

std::string SpectralPresheaf::format(const ClopenSubpresheaf& S) const {
  std::string out;
  for (std::size_t v = 0; v < contexts_.size(); ++v) {
    if (v) out += '|';
    std::string part;
    for (std::size_t p : stone_spectrum(v))
      if (S.points >> p & 1) part += (part.empty() ? "" : ",") + base_->label(point_atom_[p]);
    out += part.empty() ? "-" : part;
  }
  return out;
}

LayerCheck stone_check(const SpectralPresheaf& P, std::size_t v) {
  const FiniteOrthoLattice& L = P.base();
  const Context& c = P.context(v);
  const std::string at = "V" + std::to_string(v) + ": ";
  for (Elem b : c.elements) {
    Elem j = L.bottom();
    for (Elem a : c.atoms)
      if (L.leq(a, b)) j = L.join(j, a);
    if (j != b) return {false, at + L.label(b) + " is not the join of the atoms below it"};
  }
  const std::uint64_t all = P.context_mask(v);
  std::vector<std::uint64_t> seen;
  for (Elem b : c.elements) seen.push_back(P.kappa(v, b));
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return {false, at + "kappa is not injective"};
  if (seen.size() != (std::size_t{1} << c.atoms.size()))
    return {false, at + "kappa is not onto the spectrum subsets"};
  for (Elem a : c.elements) {
    if (P.kappa(v, L.ortho(a)) != (all & ~P.kappa(v, a)))
      return {false, at + "kappa(" + L.label(a) + "') is not the complement"};
    for (Elem b : c.elements) {
      if (P.kappa(v, L.meet(a, b)) != (P.kappa(v, a) & P.kappa(v, b)))
        return {false, at + "kappa(" + L.label(a) + "&" + L.label(b) + ") is not the intersection"};
      if (P.kappa(v, L.join(a, b)) != (P.kappa(v, a) | P.kappa(v, b)))
        return {false, at + "kappa(" + L.label(a) + "|" + L.label(b) + ") is not the union"};
    }
  }
  return {true, ""};
}

LayerCheck functoriality_check(const SpectralPresheaf& P) {
  const std::size_t k = P.contexts().size();
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t w = 0; w < k; ++w) {
      if (!P.context_leq(w, x)) continue;
      for (std::size_t v = 0; v < k; ++v) {
        if (!P.context_leq(v, w)) continue;
        for (std::size_t p : P.stone_spectrum(x))
          if (P.restrict_point(P.restrict_point(p, w), v) != P.restrict_point(p, v))
            return {false, "point " + P.point_name(p) + " via V" + std::to_string(w) + " to V" +
                               std::to_string(v)};
      }
    }
  return {true, ""};
}

namespace {

void same_owner(const SpectralPresheaf& P, const ClopenSubpresheaf& S) {
  if (S.owner != P.id()) throw PresheafMismatch();
}

ClopenSubpresheaf checked(const SpectralPresheaf& P, std::uint64_t m) {
  if (!P.is_closed(m)) throw Error("lattice operation left Sub_clop", false);
  return {m, P.id()};
}

}  // namespace

ClopenSubpresheaf sub_meet(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                           const ClopenSubpresheaf& T) {
  same_owner(P, S);
  same_owner(P, T);
  return checked(P, clopen_interior(S.points & T.points));
}

ClopenSubpresheaf sub_join(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                           const ClopenSubpresheaf& T) {
  same_owner(P, S);
  same_owner(P, T);
  return checked(P, clopen_closure(S.points | T.points));
}

ClopenSubpresheaf sub_big_meet(const SpectralPresheaf& P,
                               const std::vector<ClopenSubpresheaf>& family) {
  std::uint64_t m = P.all_points();
  for (const auto& S : family) {
    same_owner(P, S);
    m &= S.points;
  }
  return checked(P, clopen_interior(m));
}

ClopenSubpresheaf sub_big_join(const SpectralPresheaf& P,
                               const std::vector<ClopenSubpresheaf>& family) {
  std::uint64_t m = 0;
  for (const auto& S : family) {
    same_owner(P, S);
    m |= S.points;
  }
  return checked(P, clopen_closure(m));
}

bool sub_leq(const SpectralPresheaf& P, const ClopenSubpresheaf& S, const ClopenSubpresheaf& T) {
  same_owner(P, S);
  same_owner(P, T);
  return (S.points & ~T.points) == 0;
}

ClopenSubpresheaf sub_heyting(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                              const ClopenSubpresheaf& T) {
  same_owner(P, S);
  same_owner(P, T);
  const std::uint64_t bad = S.points & ~T.points;
  std::uint64_t m = 0;
  for (std::size_t p = 0; p < P.num_points(); ++p)
    if (((P.below_mask(p) | std::uint64_t{1} << p) & bad) == 0) m |= std::uint64_t{1} << p;
  return checked(P, m);
}

ClopenSubpresheaf sub_coheyting(const SpectralPresheaf& P, const ClopenSubpresheaf& S,
                                const ClopenSubpresheaf& T) {
  same_owner(P, S);
  same_owner(P, T);
  return checked(P, P.restriction_closure(S.points & ~T.points));
}

namespace {

// Down-sets of the restriction order. Points of smaller contexts come first,
// so every strict restriction of p is decided before p.
template <class Visit>
void downsets(const SpectralPresheaf& P, std::size_t p, std::uint64_t cur, Visit& visit) {
  if (p == P.num_points()) {
    visit(cur);
    return;
  }
  downsets(P, p + 1, cur, visit);
  if ((P.below_mask(p) & ~cur) == 0) downsets(P, p + 1, cur | std::uint64_t{1} << p, visit);
}

void check_bound(const SpectralPresheaf& P, std::size_t bound) {
  if (P.num_points() > bound)
    throw TooLarge("spectral point count " + std::to_string(P.num_points()), bound);
}

}  // namespace

bool subclop_before(const SpectralPresheaf& P, std::uint64_t a, std::uint64_t b) {
  for (std::size_t v = 0; v < P.contexts().size(); ++v) {
    const std::uint64_t cm = P.context_mask(v);
    const std::uint64_t la = (a & cm) >> std::countr_zero(cm),
                        lb = (b & cm) >> std::countr_zero(cm);
    if (la != lb) return la < lb;
  }
  return false;
}

void visit_subclop(const SpectralPresheaf& P, std::size_t bound,
                   const std::function<void(std::uint64_t)>& visit) {
  check_bound(P, bound);
  downsets(P, 0, 0, visit);
}

std::vector<ClopenSubpresheaf> enumerate_subclop(const SpectralPresheaf& P, std::size_t bound) {
  check_bound(P, bound);
  std::vector<std::uint64_t> masks;
  auto visit = [&](std::uint64_t m) { masks.push_back(m); };
  downsets(P, 0, 0, visit);
  std::sort(masks.begin(), masks.end(),
            [&](std::uint64_t a, std::uint64_t b) { return subclop_before(P, a, b); });
  std::vector<ClopenSubpresheaf> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back({m, P.id()});
  return out;
}

std::uint64_t count_subclop(const SpectralPresheaf& P, std::size_t bound) {
  check_bound(P, bound);
  std::uint64_t count = 0;
  auto visit = [&](std::uint64_t) { ++count; };
  downsets(P, 0, 0, visit);
  return count;
}

SubclopAlgebra::SubclopAlgebra(std::shared_ptr<const SpectralPresheaf> P, std::size_t bound)
    : P_(std::move(P)) {
  if (count_subclop(*P_, bound) > kMaxExplicitSubclop)
    throw TooLarge("Sub_clop size for an explicit lattice", kMaxExplicitSubclop);
  elements_ = enumerate_subclop(*P_, bound);
  const std::size_t n = elements_.size();
  for (Elem i = 0; i < n; ++i) index_.emplace(elements_[i].points, i);

  std::vector<std::string> labels;
  std::set<std::string> unique;
  for (const auto& S : elements_) {
    labels.push_back(P_->format(S));
    unique.insert(labels.back());
  }
  if (unique.size() != n)
    for (Elem i = 0; i < n; ++i) labels[i] = "S" + std::to_string(i);
  std::vector<std::uint8_t> leq(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) leq[i * n + j] = (elements_[i].points & ~elements_[j].points) == 0;
  lattice_ = std::make_shared<const FiniteOrthoLattice>(FiniteOrthoLattice::from_order(
      "Sub_clop(" + P_->base().name() + ")", std::move(labels), std::move(leq), std::nullopt));

  heyting_.resize(n * n);
  coheyting_.resize(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      heyting_[i * n + j] = index_of(sub_heyting(*P_, elements_[i], elements_[j]));
      coheyting_[i * n + j] = index_of(sub_coheyting(*P_, elements_[i], elements_[j]));
    }
}

Elem SubclopAlgebra::index_of(const ClopenSubpresheaf& S) const {
  if (S.owner != P_->id()) throw PresheafMismatch();
  auto it = index_.find(S.points);
  if (it == index_.end()) throw Error("not an element of Sub_clop", false);
  return it->second;
}

ElemMap SubclopAlgebra::heyting_negation() const {
  ElemMap out(size());
  const Elem bottom = index_of(P_->empty());
  for (Elem i = 0; i < size(); ++i) out[i] = heyting(i, bottom);
  return out;
}

ElemMap SubclopAlgebra::brouwer_negation() const {
  ElemMap out(size());
  const Elem top = index_of(P_->full());
  for (Elem i = 0; i < size(); ++i) out[i] = coheyting(top, i);
  return out;
}

}  // namespace fourneg

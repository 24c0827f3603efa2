#include "fourneg/daseinisation.hpp"

#include "fourneg/errors.hpp"

namespace fourneg {

Elem outer_support(const SpectralPresheaf& P, std::size_t v, Elem a) {
  const auto& L = P.base();
  Elem r = L.top();
  for (Elem b : P.context(v).elements)
    if (L.leq(a, b)) r = L.meet(r, b);
  if (!P.context(v).contains(r)) throw Error("outer support left the context", false);
  return r;
}

Elem inner_support(const SpectralPresheaf& P, std::size_t v, Elem a) {
  const auto& L = P.base();
  Elem r = L.bottom();
  for (Elem b : P.context(v).elements)
    if (L.leq(b, a)) r = L.join(r, b);
  if (!P.context(v).contains(r)) throw Error("inner support left the context", false);
  return r;
}

ClopenSubpresheaf outer_daseinise(const SpectralPresheaf& P, Elem a) {
  std::uint64_t m = 0;
  for (std::size_t v = 0; v < P.contexts().size(); ++v) m |= P.kappa(v, outer_support(P, v, a));
  return P.make(m);
}

std::uint64_t inner_pointwise_family(const SpectralPresheaf& P, Elem a) {
  std::uint64_t m = 0;
  for (std::size_t v = 0; v < P.contexts().size(); ++v) m |= P.kappa(v, inner_support(P, v, a));
  return m;
}

ClopenSubpresheaf inner_daseinise(const SpectralPresheaf& P, Elem a) {
  return P.make(P.restriction_interior(inner_pointwise_family(P, a)));
}

std::optional<std::pair<Elem, std::size_t>> inner_pointwise_defect(const SpectralPresheaf& P) {
  for (Elem a = 0; a < P.base().size(); ++a) {
    const std::uint64_t m = inner_pointwise_family(P, a);
    for (std::size_t p = 0; p < P.num_points(); ++p)
      if ((m >> p & 1) && (P.below_mask(p) & ~m)) return std::pair{a, p};
  }
  return std::nullopt;
}

Elem eps_outer(const SpectralPresheaf& P, const ClopenSubpresheaf& S) {
  const auto& L = P.base();
  Elem r = L.bottom();
  for (Elem a = 0; a < L.size(); ++a)
    if (sub_leq(P, outer_daseinise(P, a), S)) r = L.join(r, a);
  return r;
}

Elem eps_inner(const SpectralPresheaf& P, const ClopenSubpresheaf& S) {
  const auto& L = P.base();
  Elem r = L.top();
  for (Elem a = 0; a < L.size(); ++a)
    if (sub_leq(P, S, inner_daseinise(P, a))) r = L.meet(r, a);
  return r;
}

ClopenSubpresheaf bullet_neg(const SpectralPresheaf& P, const ClopenSubpresheaf& S) {
  return outer_daseinise(P, P.base().ortho(eps_outer(P, S)));
}

ClopenSubpresheaf circ_neg(const SpectralPresheaf& P, const ClopenSubpresheaf& S) {
  return inner_daseinise(P, P.base().ortho(eps_inner(P, S)));
}

DaseinCache::DaseinCache(std::shared_ptr<const SpectralPresheaf> P) : P_(std::move(P)) {
  for (Elem a = 0; a < P_->base().size(); ++a) {
    outer_.push_back(outer_daseinise(*P_, a).points);
    inner_.push_back(inner_daseinise(*P_, a).points);
  }
}

Elem DaseinCache::eps_outer(std::uint64_t s) const {
  const auto& L = P_->base();
  Elem r = L.bottom();
  for (Elem a = 0; a < L.size(); ++a)
    if ((outer_[a] & ~s) == 0) r = L.join(r, a);
  return r;
}

Elem DaseinCache::eps_inner(std::uint64_t s) const {
  const auto& L = P_->base();
  Elem r = L.top();
  for (Elem a = 0; a < L.size(); ++a)
    if ((s & ~inner_[a]) == 0) r = L.meet(r, a);
  return r;
}

std::uint64_t DaseinCache::bullet(std::uint64_t s) const {
  return outer_[P_->base().ortho(eps_outer(s))];
}

std::uint64_t DaseinCache::circ(std::uint64_t s) const {
  return inner_[P_->base().ortho(eps_inner(s))];
}

ElemMap bullet_table(const SubclopAlgebra& A) {
  ElemMap t(A.size());
  for (Elem i = 0; i < A.size(); ++i) t[i] = A.index_of(bullet_neg(A.presheaf(), A.element(i)));
  return t;
}

ElemMap circ_table(const SubclopAlgebra& A) {
  ElemMap t(A.size());
  for (Elem i = 0; i < A.size(); ++i) t[i] = A.index_of(circ_neg(A.presheaf(), A.element(i)));
  return t;
}

namespace {

// Precomputed daseinisation data over an enumerated Sub_clop.
struct Tables {
  const SubclopAlgebra& A;
  const FiniteOrthoLattice& L;  // base lattice
  const FiniteOrthoLattice& K;  // Sub_clop lattice
  std::vector<Elem> dout, din;  // a -> index in Sub_clop
  std::vector<Elem> eout, ein;  // S -> element of L
  ElemMap bullet, circ;

  explicit Tables(const SubclopAlgebra& a) : A(a), L(a.presheaf().base()), K(a.lattice()) {
    const auto& P = A.presheaf();
    for (Elem x = 0; x < L.size(); ++x) {
      dout.push_back(A.index_of(outer_daseinise(P, x)));
      din.push_back(A.index_of(inner_daseinise(P, x)));
    }
    for (Elem s = 0; s < A.size(); ++s) {
      eout.push_back(eps_outer(P, A.element(s)));
      ein.push_back(eps_inner(P, A.element(s)));
    }
    bullet = bullet_table(A);
    circ = circ_table(A);
  }
  Elem bottom() const { return K.bottom(); }
  Elem top() const { return K.top(); }
};

class Collector {
 public:
  explicit Collector(std::vector<SuiteItem>& out) : out_(out) {}
  void item(std::string id, std::string statement, std::string witness) {
    out_.push_back({std::move(id), std::move(statement), witness.empty(), std::move(witness)});
  }

 private:
  std::vector<SuiteItem>& out_;
};

template <class Pred>
std::string first_s(const Tables& t, Pred p) {
  for (Elem s = 0; s < t.A.size(); ++s)
    if (!p(s)) return "S=" + t.K.label(s);
  return "";
}

template <class Pred>
std::string first_st(const Tables& t, Pred p) {
  for (Elem s = 0; s < t.A.size(); ++s)
    for (Elem u = 0; u < t.A.size(); ++u)
      if (!p(s, u)) return "S=" + t.K.label(s) + " T=" + t.K.label(u);
  return "";
}

template <class Pred>
std::string first_a(const Tables& t, Pred p) {
  for (Elem a = 0; a < t.L.size(); ++a)
    if (!p(a)) return "a=" + t.L.label(a);
  return "";
}

}  // namespace

std::vector<SuiteItem> star_property_suite(const SubclopAlgebra& A) {
  const Tables t(A);
  const auto& K = t.K;
  const auto& L = t.L;
  const auto& b = t.bullet;
  const auto& c = t.circ;
  std::vector<SuiteItem> out;
  Collector col(out);

  col.item("bullet.join-total", "S | S* = Sigma",
           first_s(t, [&](Elem s) { return K.join(s, b[s]) == t.top(); }));
  col.item("bullet.double", "S** = d(e(S)) <= S",
           first_s(t, [&](Elem s) { return b[b[s]] == t.dout[t.eout[s]] && K.leq(b[b[s]], s); }));
  col.item("bullet.triple", "S*** = S*", first_s(t, [&](Elem s) { return b[b[b[s]]] == b[s]; }));
  col.item("bullet.meet-lower", "S & S* >= 0",
           first_s(t, [&](Elem s) { return K.leq(t.bottom(), K.meet(s, b[s])); }));
  col.item("bullet.meet-to-join", "(S & T)* = S* | T*",
           first_st(t, [&](Elem s, Elem u) { return b[K.meet(s, u)] == K.join(b[s], b[u]); }));
  col.item("bullet.join-to-meet", "(S | T)* <= S* & T*",
           first_st(t, [&](Elem s, Elem u) { return K.leq(b[K.join(s, u)], K.meet(b[s], b[u])); }));
  col.item("bullet.eps-join", "e(S) | e(S*) = 1",
           first_s(t, [&](Elem s) { return L.join(t.eout[s], t.eout[b[s]]) == L.top(); }));
  col.item("bullet.eps-meet", "e(S) & e(S*) = 0",
           first_s(t, [&](Elem s) { return L.meet(t.eout[s], t.eout[b[s]]) == L.bottom(); }));
  col.item("bullet.antitone", "S <= T => T* <= S*",
           first_st(t, [&](Elem s, Elem u) { return !K.leq(s, u) || K.leq(b[u], b[s]); }));
  col.item("bullet.on-delta", "d(a)* = d(a')",
           first_a(t, [&](Elem a) { return b[t.dout[a]] == t.dout[L.ortho(a)]; }));
  col.item("bullet.eps-of", "e(S*) = e(S)'",
           first_s(t, [&](Elem s) { return t.eout[b[s]] == L.ortho(t.eout[s]); }));
  col.item("bullet.delta-fixed", "d(a)** = d(a)",
           first_a(t, [&](Elem a) { return b[b[t.dout[a]]] == t.dout[a]; }));
  col.item("bullet.top", "Sigma* = 0", b[t.top()] == t.bottom() ? "" : "S=Sigma");
  col.item("bullet.bottom", "0* = Sigma", b[t.bottom()] == t.top() ? "" : "S=0");

  col.item("circ.on-delta", "di(a)@ = di(a')",
           first_a(t, [&](Elem a) { return c[t.din[a]] == t.din[L.ortho(a)]; }));
  col.item("circ.eps-of", "ev(S@) = ev(S)'",
           first_s(t, [&](Elem s) { return t.ein[c[s]] == L.ortho(t.ein[s]); }));
  col.item("circ.double", "S@@ = di(ev(S))",
           first_s(t, [&](Elem s) { return c[c[s]] == t.din[t.ein[s]]; }));
  col.item("circ.meet-empty", "S & S@ = 0",
           first_s(t, [&](Elem s) { return K.meet(s, c[s]) == t.bottom(); }));
  col.item("circ.double-above", "S@@ >= S", first_s(t, [&](Elem s) { return K.leq(s, c[c[s]]); }));
  col.item("circ.triple", "S@@@ = S@", first_s(t, [&](Elem s) { return c[c[c[s]]] == c[s]; }));
  col.item("circ.meet-upper", "S & S@ <= Sigma",
           first_s(t, [&](Elem s) { return K.leq(K.meet(s, c[s]), t.top()); }));
  col.item("circ.join-to-meet", "(S | T)@ = S@ & T@",
           first_st(t, [&](Elem s, Elem u) { return c[K.join(s, u)] == K.meet(c[s], c[u]); }));
  col.item("circ.meet-to-join", "(S & T)@ >= S@ | T@",
           first_st(t, [&](Elem s, Elem u) { return K.leq(K.join(c[s], c[u]), c[K.meet(s, u)]); }));
  col.item("circ.eps-meet", "ev(S) & ev(S@) = 0",
           first_s(t, [&](Elem s) { return L.meet(t.ein[s], t.ein[c[s]]) == L.bottom(); }));
  col.item("circ.eps-join", "ev(S) | ev(S@) = 1",
           first_s(t, [&](Elem s) { return L.join(t.ein[s], t.ein[c[s]]) == L.top(); }));
  col.item("circ.antitone", "S <= T => T@ <= S@",
           first_st(t, [&](Elem s, Elem u) { return !K.leq(s, u) || K.leq(c[u], c[s]); }));
  col.item("circ.delta-fixed", "di(a)@@ = di(a)",
           first_a(t, [&](Elem a) { return c[c[t.din[a]]] == t.din[a]; }));
  col.item("circ.top", "Sigma@ = 0", c[t.top()] == t.bottom() ? "" : "S=Sigma");
  col.item("circ.bottom", "0@ = Sigma", c[t.bottom()] == t.top() ? "" : "S=0");
  return out;
}

std::vector<SuiteItem> daseinisation_suite(const SubclopAlgebra& A) {
  const Tables t(A);
  const auto& K = t.K;
  const auto& L = t.L;
  const std::size_t n = L.size();
  std::vector<SuiteItem> out;
  Collector col(out);

  auto pairs = [&](auto pred) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (!pred(a, b)) return "a=" + L.label(a) + " b=" + L.label(b);
    return std::string();
  };
  col.item("delta.outer.monotone", "a <= b => d(a) <= d(b)",
           pairs([&](Elem a, Elem b) { return !L.leq(a, b) || K.leq(t.dout[a], t.dout[b]); }));
  col.item("delta.inner.monotone", "a <= b => di(a) <= di(b)",
           pairs([&](Elem a, Elem b) { return !L.leq(a, b) || K.leq(t.din[a], t.din[b]); }));
  col.item("delta.outer.injective", "d(a) = d(b) => a = b",
           pairs([&](Elem a, Elem b) { return a == b || t.dout[a] != t.dout[b]; }));
  col.item("delta.inner.injective", "di(a) = di(b) => a = b",
           pairs([&](Elem a, Elem b) { return a == b || t.din[a] != t.din[b]; }));
  col.item("delta.bounds", "d(0) = di(0) = 0, d(1) = di(1) = Sigma",
           t.dout[L.bottom()] == t.bottom() && t.din[L.bottom()] == t.bottom() &&
                   t.dout[L.top()] == t.top() && t.din[L.top()] == t.top()
               ? ""
               : "bounds not preserved");
  col.item("delta.inner-below-outer", "di(a) <= d(a)",
           first_a(t, [&](Elem a) { return K.leq(t.din[a], t.dout[a]); }));

  // Preservation over families: all subsets when |L| <= 16, otherwise pairs.
  std::string joins, meets, outer_meets, inner_joins;
  auto family = [&](const std::vector<Elem>& M) {
    std::string name = "{";
    for (std::size_t i = 0; i < M.size(); ++i) name += (i ? "," : "") + L.label(M[i]);
    name += "}";
    Elem jm = L.join_all(M), mm = L.meet_all(M);
    Elem dj = t.bottom(), dm = t.top(), ij = t.bottom(), im = t.top();
    for (Elem a : M) {
      dj = K.join(dj, t.dout[a]);
      dm = K.meet(dm, t.dout[a]);
      ij = K.join(ij, t.din[a]);
      im = K.meet(im, t.din[a]);
    }
    if (joins.empty() && t.dout[jm] != dj) joins = "M=" + name;
    if (meets.empty() && t.din[mm] != im) meets = "M=" + name;
    if (!M.empty() && outer_meets.empty() && !K.leq(t.dout[mm], dm)) outer_meets = "M=" + name;
    if (!M.empty() && inner_joins.empty() && !K.leq(ij, t.din[jm])) inner_joins = "M=" + name;
  };
  if (n <= 16) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Elem> M;
      for (Elem a = 0; a < n; ++a)
        if (mask >> a & 1) M.push_back(a);
      family(M);
    }
  } else {
    family({});
    for (Elem a = 0; a < n; ++a)
      for (Elem b = a; b < n; ++b) family({a, b});
  }
  col.item("delta.outer.joins", "d(join M) = join d(M)", joins);
  col.item("delta.inner.meets", "di(meet M) = meet di(M)", meets);
  col.item("delta.outer.meets", "d(meet M) <= meet d(M)", outer_meets);
  col.item("delta.inner.joins", "join di(M) <= di(join M)", inner_joins);

  auto all_as = [&](auto pred) {
    for (Elem a = 0; a < n; ++a)
      for (Elem s = 0; s < A.size(); ++s)
        if (!pred(a, s)) return "a=" + L.label(a) + " S=" + K.label(s);
    return std::string();
  };
  col.item("adjunction.outer", "d(a) <= S <=> a <= e(S)",
           all_as([&](Elem a, Elem s) { return K.leq(t.dout[a], s) == L.leq(a, t.eout[s]); }));
  col.item("adjunction.inner", "ev(S) <= a <=> S <= di(a)",
           all_as([&](Elem a, Elem s) { return L.leq(t.ein[s], a) == K.leq(s, t.din[a]); }));
  col.item("eps.outer.retract", "e(d(a)) = a",
           first_a(t, [&](Elem a) { return t.eout[t.dout[a]] == a; }));
  col.item("eps.inner.retract", "ev(di(a)) = a",
           first_a(t, [&](Elem a) { return t.ein[t.din[a]] == a; }));
  col.item("eps.bounds", "e(Sigma) = 1, e(0) = 0",
           t.eout[t.top()] == L.top() && t.eout[t.bottom()] == L.bottom() ? "" : "bounds moved");
  return out;
}

ParaconsistencyReport paraconsistency_report(const SubclopAlgebra& A) {
  const auto& K = A.lattice();
  const ElemMap b = bullet_table(A), c = circ_table(A);
  ParaconsistencyReport r{true, {}, true, {}};
  for (Elem s = 0; s < A.size(); ++s) {
    const bool extreme = s == K.bottom() || s == K.top();
    const bool disjoint = K.meet(s, b[s]) == K.bottom();
    const bool covering = K.join(s, c[s]) == K.top();
    if (!disjoint) r.overlap.push_back(s);
    if (!covering) r.gap.push_back(s);
    if (disjoint != extreme) r.fully_paraconsistent = false;
    if (covering != extreme) r.fully_paracomplete = false;
  }
  return r;
}

}  // namespace fourneg

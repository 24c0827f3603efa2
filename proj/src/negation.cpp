#include "fourneg/negation.hpp"

#include <sstream>

#include "fourneg/errors.hpp"
#include "fourneg/residuation.hpp"

namespace fourneg {

namespace {

using W = std::vector<Elem>;

AxiomResult ok() { return {true, {}}; }
AxiomResult fail(W w) { return {false, std::move(w)}; }

template <class Pred>
AxiomResult forall1(std::size_t n, Pred p) {
  for (Elem x = 0; x < n; ++x)
    if (!p(x)) return fail({x});
  return ok();
}

template <class Pred>
AxiomResult forall2(std::size_t n, Pred p) {
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!p(x, y)) return fail({x, y});
  return ok();
}

template <class Pred>
AxiomResult forall3(std::size_t n, Pred p) {
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (!p(x, y, z)) return fail({x, y, z});
  return ok();
}

}  // namespace

AxiomResult check_axiom(const FiniteOrthoLattice& L, const ElemMap& f, int axiom) {
  const std::size_t n = L.size();
  auto le = [&](Elem a, Elem b) { return L.leq(a, b); };
  auto m = [&](Elem a, Elem b) { return L.meet(a, b); };
  auto j = [&](Elem a, Elem b) { return L.join(a, b); };
  const Elem zero = L.bottom(), one = L.top();
  switch (axiom) {
    case 1: return forall2(n, [&](Elem x, Elem y) { return !le(x, y) || le(f[y], f[x]); });
    case 2: return forall1(n, [&](Elem x) { return le(x, f[f[x]]); });
    case 3: return forall1(n, [&](Elem x) { return le(f[f[x]], x); });
    case 4:
      return forall3(
          n, [&](Elem x, Elem y, Elem z) { return !le(m(x, y), z) || le(m(x, f[z]), f[y]); });
    case 5:
      return forall3(
          n, [&](Elem x, Elem y, Elem z) { return !le(x, j(y, z)) || le(f[z], j(f[x], y)); });
    case 6: return forall2(n, [&](Elem x, Elem y) { return le(m(x, f[x]), y); });
    case 7: return forall2(n, [&](Elem x, Elem y) { return le(y, j(x, f[x])); });
    case 8: return forall1(n, [&](Elem x) { return f[x] == f[f[f[x]]]; });
    case 9: return forall2(n, [&](Elem x, Elem y) { return le(m(f[x], f[y]), f[j(x, y)]); });
    case 10: return forall2(n, [&](Elem x, Elem y) { return le(f[j(x, y)], m(f[x], f[y])); });
    case 11: return forall2(n, [&](Elem x, Elem y) { return le(j(f[x], f[y]), f[m(x, y)]); });
    case 12: return forall2(n, [&](Elem x, Elem y) { return le(f[m(x, y)], j(f[x], f[y])); });
    case 13: return forall1(n, [&](Elem x) { return m(x, f[x]) == zero; });
    case 14: return forall1(n, [&](Elem x) { return j(x, f[x]) == one; });
    case 15: return forall1(n, [&](Elem x) { return le(zero, m(x, f[x])); });
    case 16: return forall1(n, [&](Elem x) { return le(j(x, f[x]), one); });
    case 17: return f[one] == zero ? ok() : fail({});
    case 18: return f[zero] == one ? ok() : fail({});
    default: throw Error("no axiom n" + std::to_string(axiom), false);
  }
}

AxiomProfile axiom_profile(const FiniteOrthoLattice& L, const ElemMap& f) {
  AxiomProfile p;
  for (int a = 1; a <= kAxiomCount; ++a) p[a] = check_axiom(L, f, a).holds;
  return p;
}

std::string axiom_statement(int axiom) {
  static const char* const text[] = {
      "",
      "x<=y => y'<=x'",
      "x<=x''",
      "x''<=x",
      "x&y<=z => x&z'<=y'",
      "x<=y|z => z'<=x'|y",
      "x&x'<=y",
      "y<=x|x'",
      "x'=x'''",
      "x'&y'<=(x|y)'",
      "x'&y'>=(x|y)'",
      "x'|y'<=(x&y)'",
      "x'|y'>=(x&y)'",
      "x&x'=0",
      "x|x'=1",
      "x&x'>=0",
      "x|x'<=1",
      "1'=0",
      "0'=1",
  };
  if (axiom < 1 || axiom > kAxiomCount) return "";
  return text[axiom];
}

std::string profile_string(const AxiomProfile& p) {
  std::string s;
  for (int a = 1; a <= kAxiomCount; ++a)
    if (p[a]) s += (s.empty() ? "n" : " n") + std::to_string(a);
  return s;
}

namespace {

bool has_all(const AxiomProfile& p, std::initializer_list<int> axioms) {
  for (int a : axioms)
    if (!p[a]) return false;
  return true;
}

bool orthomodular_law(const FiniteOrthoLattice& L, const ElemMap& f) {
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (L.leq(x, y) && L.join(x, L.meet(y, f[x])) != y) return false;
  return true;
}

}  // namespace

std::vector<std::string> classify(const FiniteOrthoLattice& L, const ElemMap& f) {
  const AxiomProfile p = axiom_profile(L, f);
  const bool distributive = is_distributive(L).holds;
  const bool ortho = has_all(p, {1, 2, 3, 6, 7});
  std::vector<std::string> out;
  auto add = [&](bool cond, const char* label) {
    if (cond) out.emplace_back(label);
  };
  add(p[1], "subminimal");
  add(has_all(p, {1, 2, 6}), "quasiintuitionistic-negation");
  add(has_all(p, {1, 3, 7}), "coquasiintuitionistic-negation");
  add(has_all(p, {1, 2, 4, 6}), "intuitionistic-negation");
  add(has_all(p, {1, 3, 5, 7}), "cointuitionistic-negation");
  add(p[15], "paraconsistent");
  add(p[16], "paracomplete");
  add(has_all(p, {1, 2, 3}), "involution");
  add(ortho, "orthocomplementation");
  add(p[1], "Vakarelov-algebra");
  add(has_all(p, {1, 2, 3}) && distributive, "De-Morgan-algebra");
  add(has_all(p, {1, 2, 6}) && distributive, "quasiintuitionistic-algebra");
  add(has_all(p, {1, 3, 7}) && distributive, "coquasiintuitionistic-algebra");
  add(ortho, "orthocomplemented-lattice");
  add(ortho && orthomodular_law(L, f), "orthomodular-lattice");
  add(ortho && distributive, "boolean");
  return out;
}

NegationMap::NegationMap(std::shared_ptr<const FiniteOrthoLattice> base, ElemMap table)
    : base_(std::move(base)), table_(std::move(table)) {
  if (table_.size() != base_->size()) throw InvalidSpec("negation map is not total");
  for (Elem e : table_)
    if (e >= base_->size()) throw InvalidSpec("negation map leaves the lattice");
  profile_ = axiom_profile(*base_, table_);
}

NegmapSpec parse_negmap(std::string_view text) {
  NegmapSpec spec;
  bool have_header = false;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    if (!toks.empty()) {
      if (toks[0] == "negmap") {
        if (toks.size() != 2) throw ParseError(lineno, "expected 'negmap <lattice-name>'");
        if (have_header) throw ParseError(lineno, "duplicate 'negmap' directive");
        spec.lattice = toks[1];
        have_header = true;
      } else if (toks[0] == "map") {
        if (!have_header) throw ParseError(lineno, "'map' before 'negmap' header");
        for (std::size_t i = 1; i < toks.size(); ++i) {
          auto c = toks[i].find(':');
          if (c == std::string::npos || c == 0 || c + 1 == toks[i].size())
            throw ParseError(lineno, "expected 'a:b', got '" + toks[i] + "'");
          spec.entries.emplace_back(toks[i].substr(0, c), toks[i].substr(c + 1));
        }
      } else {
        throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
      }
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(lineno, "missing 'negmap <lattice-name>' header");
  return spec;
}

std::string write_negmap(const NegmapSpec& spec) {
  std::string out = "negmap " + spec.lattice + "\n";
  for (const auto& [a, b] : spec.entries) out += "map " + a + ":" + b + "\n";
  return out;
}

ElemMap resolve_negmap(const FiniteOrthoLattice& L, const NegmapSpec& spec) {
  ElemMap f(L.size(), L.size());
  for (const auto& [a, b] : spec.entries) {
    Elem x = L.at(a), y = L.at(b);
    if (f[x] != L.size()) throw InvalidSpec("element '" + a + "' mapped twice");
    f[x] = y;
  }
  for (Elem e = 0; e < L.size(); ++e)
    if (f[e] == L.size()) throw InvalidSpec("element '" + L.label(e) + "' is not mapped");
  return f;
}

std::string to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::PremisesFalse: return "premises-false";
    case ClauseStatus::Verified: return "verified";
    case ClauseStatus::Violated: return "VIOLATED";
  }
  return "";
}

std::vector<LemmaClause> derived_lemma_suite(const FiniteOrthoLattice& L, const ElemMap& f) {
  const AxiomProfile p = axiom_profile(L, f);
  const bool distributive = is_distributive(L).holds;
  std::vector<LemmaClause> out;

  auto names = [](std::initializer_list<int> axioms, const char* sep) {
    std::string s;
    for (int a : axioms) s += (s.empty() ? "" : sep) + ("n" + std::to_string(a));
    return s;
  };
  auto first_missing = [&](std::initializer_list<int> axioms) -> std::string {
    for (int a : axioms)
      if (!p[a]) {
        auto r = check_axiom(L, f, a);
        std::string w = "n" + std::to_string(a) + " fails at (";
        for (std::size_t i = 0; i < r.witness.size(); ++i)
          w += (i ? "," : "") + L.label(r.witness[i]);
        return w + ")";
      }
    return "";
  };
  auto clause = [&](std::string id, std::string statement, bool premises, bool conclusion,
                    std::string witness) {
    ClauseStatus st = !premises ? ClauseStatus::PremisesFalse
                                : (conclusion ? ClauseStatus::Verified : ClauseStatus::Violated);
    out.push_back({std::move(id), std::move(statement), st,
                   st == ClauseStatus::Violated ? std::move(witness) : std::string()});
  };
  auto implication = [&](std::string id, std::initializer_list<int> prem,
                         std::initializer_list<int> concl) {
    bool pre = has_all(p, prem);
    clause(std::move(id), names(prem, " & ") + " => " + names(concl, " & "), pre, has_all(p, concl),
           pre ? first_missing(concl) : "");
  };

  // Without n1 both fail: on B2, 0->1 a->1 b->b 1->a has n2 but a'&b' = b > (a|b)' = a.
  implication("neg.i.a", {1, 2}, {9});
  implication("neg.i.b", {1, 3}, {12});
  implication("neg.ii.a", {1}, {10});
  implication("neg.ii.b", {10}, {1});
  implication("neg.ii.c", {1}, {11});
  implication("neg.ii.d", {11}, {1});
  implication("neg.iii.a", {1, 2}, {8});
  implication("neg.iii.b", {1, 3}, {8});
  implication("neg.iv.a", {1, 2}, {8, 9, 10, 11});
  implication("neg.iv.b", {1, 3}, {8, 10, 11, 12});
  implication("neg.v.a", {6}, {13});
  implication("neg.v.b", {13}, {6});
  implication("neg.v.c", {7}, {14});
  implication("neg.v.d", {14}, {7});
  implication("neg.vi.a", {1, 14}, {18});
  implication("neg.vi.b", {3, 18}, {17});
  implication("neg.vi.c", {1, 13}, {17});
  implication("neg.vi.d", {2, 17}, {18});
  implication("neg.vii.a", {1, 2}, {18});
  implication("neg.vii.b", {1, 3}, {17});
  {
    bool pre = has_all(p, {1, 2, 3});
    clause("neg.viii", "n1 & n2 & n3 => (n6 <=> n7)", pre, p[6] == p[7],
           "n6=" + std::to_string(p[6]) + " n7=" + std::to_string(p[7]));
  }

  // Residuation-style characterisations of n5 and n4.
  const std::size_t n = L.size();
  auto coheyting_a = [&]() -> std::optional<std::pair<Elem, Elem>> {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if ((L.join(x, y) == L.top()) != L.leq(f[x], y)) return std::pair{x, y};
    return std::nullopt;
  };
  auto heyting_a = [&]() -> std::optional<std::pair<Elem, Elem>> {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if ((L.meet(x, y) == L.bottom()) != L.leq(x, f[y])) return std::pair{x, y};
    return std::nullopt;
  };
  auto pair_w = [&](std::optional<std::pair<Elem, Elem>> w) {
    return w ? "(" + L.label(w->first) + "," + L.label(w->second) + ")" : std::string();
  };
  // The literal equivalences need x|x'=1 (resp. x&x'=0) for the b => a step:
  // on {0,1} the constant-0 map has 1'=0 and n5 but not the characterisation.
  {
    auto w = coheyting_a();
    const std::string wit = "characterisation " +
                            std::string(w ? "fails at " + pair_w(w) : "holds") +
                            ", n5=" + std::to_string(p[5]);
    clause("coheyting.i.ab", "1'=0 & (x|y=1 <=> x'<=y) => n5", p[17] && !w, p[5], wit);
    clause("coheyting.i.ba", "1'=0 & n5 & n7 => (x|y=1 <=> x'<=y)", p[17] && p[5] && p[7], !w, wit);
  }
  {
    auto w = heyting_a();
    const std::string wit = "characterisation " +
                            std::string(w ? "fails at " + pair_w(w) : "holds") +
                            ", n4=" + std::to_string(p[4]);
    clause("coheyting.ii.ab", "0'=1 & (x&y=0 <=> x<=y') => n4", p[18] && !w, p[4], wit);
    clause("coheyting.ii.ba", "0'=1 & n4 & n6 => (x&y=0 <=> x<=y')", p[18] && p[4] && p[6], !w,
           wit);
  }

  const bool coquasi_alg = distributive && has_all(p, {1, 3, 7});
  const bool quasi_alg = distributive && has_all(p, {1, 2, 6});
  {
    bool concl = has_all(p, {1, 3, 7, 8, 10, 11, 12, 14, 15, 17, 18});
    clause("alg.coquasi.profile",
           "coquasiintuitionistic algebra => n1 n3 n7 n8 n10 n11 n12 n14 "
           "n15 n17 n18",
           coquasi_alg, concl, first_missing({1, 3, 7, 8, 10, 11, 12, 14, 15, 17, 18}));
  }
  {
    bool concl = has_all(p, {1, 2, 6, 8, 9, 10, 11, 13, 16, 17, 18});
    clause("alg.quasi.profile",
           "quasiintuitionistic algebra => n1 n2 n6 n8 n9 n10 n11 n13 "
           "n16 n17 n18",
           quasi_alg, concl, first_missing({1, 2, 6, 8, 9, 10, 11, 13, 16, 17, 18}));
  }
  {
    bool pre = coquasi_alg && p[5];
    bool concl = false;
    if (pre && is_brouwer(L)) concl = brouwer_negation_table(L) == f;
    clause("alg.coquasi.brouwer",
           "coquasiintuitionistic algebra & n5 => Brouwer with "
           "1-<x = x'",
           pre, concl, "map differs from 1-<x");
  }
  {
    bool pre = quasi_alg && p[4];
    bool concl = false;
    if (pre && is_heyting(L)) concl = heyting_negation_table(L) == f;
    clause("alg.quasi.heyting", "quasiintuitionistic algebra & n4 => Heyting with x->0 = x'", pre,
           concl, "map differs from x->0");
  }
  {
    bool pre = distributive && has_all(p, {1, 2, 3}) && (p[6] || p[7]);
    clause("alg.demorgan.boolean", "De Morgan algebra & (n6 | n7) => boolean", pre,
           has_all(p, {6, 7, 13, 14}), first_missing({6, 7, 13, 14}));
  }
  return out;
}

}  // namespace fourneg

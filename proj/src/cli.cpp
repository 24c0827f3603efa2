#include "fourneg/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "fourneg/daseinisation.hpp"
#include "fourneg/errors.hpp"
#include "fourneg/internal.hpp"
#include "fourneg/negation.hpp"
#include "fourneg/report.hpp"
#include "fourneg/residuation.hpp"
#include "fourneg/spectral.hpp"

namespace fourneg {

namespace {

constexpr std::string_view kCatalog = "catalog:";
constexpr std::string_view kSubclop = "subclop:";
constexpr std::string_view kChain = "chain:";

bool has_prefix(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidSpec("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string labels(const FiniteOrthoLattice& L, const std::vector<Elem>& es) {
  std::vector<std::string> xs;
  for (Elem e : es) xs.push_back(L.label(e));
  return join(xs, ", ");
}

std::string map_text(const FiniteOrthoLattice& from, const FiniteOrthoLattice& to,
                     const ElemMap& m) {
  std::vector<std::string> xs;
  for (Elem e = 0; e < m.size(); ++e) xs.push_back(from.label(e) + " -> " + to.label(m[e]));
  return join(xs, ", ");
}

// Catalog names resolve before file paths for `subclop:` models.
std::shared_ptr<const FiniteOrthoLattice> lattice_by_name(const std::string& name) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) != names.end())
    return std::make_shared<const FiniteOrthoLattice>(catalog(name));
  return load_lattice(name);
}

struct Options {
  bool json = false;
  std::size_t max_subclop = kDefaultSubclopBound;
  std::size_t max_assignments = kDefaultMaxAssignments;
};

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') throw InvalidSpec(std::string(name) + " is not a number: " + v);
  return static_cast<std::size_t>(n);
}

// Input digest over the command line and every file read.
class Digest {
 public:
  explicit Digest(const std::vector<std::string>& args) {
    for (const auto& a : args) h_ = fnv1a(a + '\0', h_);
  }
  void add(const std::string& uri) {
    if (has_prefix(uri, kCatalog) || has_prefix(uri, kChain)) return;
    std::string path = has_prefix(uri, kSubclop) ? uri.substr(kSubclop.size()) : uri;
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), path) != names.end()) return;
    std::ifstream in(path, std::ios::binary);
    if (in) h_ = fnv1a(read_file(path), h_);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = kFnvOffset;
};

// ---- sections ----

void lattice_section(Report& R, const FiniteOrthoLattice& L) {
  Section& s = R.section("lattice");
  s.data["name"] = L.name();
  s.data["elements"] = L.labels();
  s.add("lattice.size", "elements", std::to_string(L.size()), "number of elements");
  const auto d = is_distributive(L);
  s.fact("lattice.distributive", "distributive", d.holds, "x∧(y∨z) = (x∧y)∨(x∧z) for all x, y, z",
         d.witness ? "x, y, z = " + labels(L, {(*d.witness)[0], (*d.witness)[1], (*d.witness)[2]})
                   : "");
  s.fact("lattice.orthocomplemented", "orthocomplemented", L.has_ortho(),
         "an antitone involution x ↦ x⊥ with x∧x⊥ = 0 and x∨x⊥ = 1 is designated");
  std::vector<std::string> covers;
  for (auto [a, b] : L.hasse_covers()) covers.push_back(L.label(a) + " < " + L.label(b));
  s.lines.push_back("covers: " + join(covers, ", "));
  if (!L.has_ortho()) return;
  s.lines.push_back("ortho: " + map_text(L, L, L.ortho_table()));
  const auto om = is_orthomodular(L);
  const auto o6 = find_O6_sublattice(L);
  const auto pair = nonorthomodularity_pair(L);
  s.fact("lattice.orthomodular", "orthomodular", om.holds, "x ≤ y implies y = x∨(y∧x⊥)",
         om.witness ? "x, y = " + labels(L, {om.witness->first, om.witness->second}) : "");
  s.add("lattice.o6", "O6 sublattice", o6 ? "present" : "absent",
        "a sub-ortholattice {0, x, y, x⊥, y⊥, 1} with x < y",
        o6 ? labels(L, std::vector<Elem>(o6->begin(), o6->end())) : "");
  s.add("lattice.pair", "nonorthomodularity pair", pair ? "present" : "absent",
        "a, b ∉ {0, 1} with a⊥ < b and a∧b = 0",
        pair ? "a, b = " + labels(L, {pair->first, pair->second}) : "");
  s.check("lattice.oml-agreement", "orthomodularity tests agree",
          om.holds == !o6.has_value() && om.holds == !pair.has_value(),
          "orthomodular iff no O6 sublattice iff no nonorthomodularity pair");
  s.fact("lattice.boolean", "boolean", d.holds, "distributive and orthocomplemented");
}

void negation_section(Report& R, const FiniteOrthoLattice& L, const ElemMap& f,
                      const std::string& name) {
  Section& s = R.section("negation " + name);
  s.lines.push_back("map: " + map_text(L, L, f));
  const AxiomProfile p = axiom_profile(L, f);
  s.add("negation.profile", "axioms", profile_string(p), "axioms n1..n18 satisfied by the map");
  for (int k = 1; k <= kAxiomCount; ++k) {
    const auto r = check_axiom(L, f, k);
    s.fact("negation.n" + std::to_string(k), "n" + std::to_string(k), r.holds, axiom_statement(k),
           r.holds ? "" : labels(L, r.witness));
  }
  s.add("negation.classes", "classes", join(classify(L, f), ", "),
        "negation and algebra classes whose axioms hold");
  for (const LemmaClause& c : derived_lemma_suite(L, f)) {
    Claim& cl = s.add("negation.lemma." + c.id, c.id, to_string(c.status), c.statement, c.witness);
    cl.violation = c.status == ClauseStatus::Violated;
  }
}

std::string first_failing_residual(const FiniteOrthoLattice& L, bool heyting) {
  for (Elem y = 0; y < L.size(); ++y)
    for (Elem z = 0; z < L.size(); ++z) {
      const Residual r = heyting ? heyting_implication(L, y, z) : brouwer_coimplication(L, y, z);
      if (!r.adjoint) return (heyting ? "y, z = " : "x, y = ") + labels(L, {y, z});
    }
  return "";
}

std::string table_text(const FiniteOrthoLattice& L, const std::vector<Elem>& t) {
  std::string out;
  const std::size_t n = L.size();
  for (Elem a = 0; a < n; ++a) {
    out += (a ? "; " : "") + L.label(a) + ":";
    for (Elem b = 0; b < n; ++b) out += " " + L.label(t[a * n + b]);
  }
  return out;
}

void residuation_section(Report& R, const FiniteOrthoLattice& L) {
  Section& s = R.section("residuation");
  const bool h = is_heyting(L), b = is_brouwer(L), k = is_skolem(L);
  const bool d = is_distributive(L).holds;
  s.fact("residuation.heyting", "Heyting", h, "y⇒z = ⋁{x : x∧y ≤ z} satisfies x∧y ≤ z iff x ≤ y⇒z",
         h ? "" : first_failing_residual(L, true));
  s.fact("residuation.brouwer", "Brouwer", b, "x⤙y = ⋀{z : x ≤ y∨z} satisfies x ≤ y∨z iff x⤙y ≤ z",
         b ? "" : first_failing_residual(L, false));
  s.fact("residuation.skolem", "Skolem", k, "both Heyting and Brouwer");
  s.check("residuation.skolem-def", "Skolem iff Heyting and Brouwer", k == (h && b),
          "Skolem iff Heyting and Brouwer");
  s.check("residuation.distributive", "residuated lattices are distributive", (!h && !b) || d,
          "Heyting or Brouwer implies distributive");
  if (h) {
    const ElemMap neg = heyting_negation_table(L);
    const auto cls = classify(L, neg);
    s.check("residuation.hneg", "x⇒0 intuitionistic",
            std::find(cls.begin(), cls.end(), "intuitionistic-negation") != cls.end(),
            "x ↦ x⇒0 satisfies n1 n2 n4 n6", join(cls, ", "));
    s.lines.push_back("y=>z rows: " + table_text(L, heyting_table(L)));
    s.lines.push_back("x=>0: " + map_text(L, L, neg));
  }
  if (b) {
    const ElemMap neg = brouwer_negation_table(L);
    const auto cls = classify(L, neg);
    s.check("residuation.bneg", "1⤙x cointuitionistic",
            std::find(cls.begin(), cls.end(), "cointuitionistic-negation") != cls.end(),
            "x ↦ 1⤙x satisfies n1 n3 n5 n7", join(cls, ", "));
    s.lines.push_back("x-<y rows: " + table_text(L, brouwer_table(L)));
    s.lines.push_back("1-<x: " + map_text(L, L, neg));
  }
}

void contexts_section(Report& R, const SpectralPresheaf& P) {
  Section& s = R.section("contexts");
  const auto& L = P.base();
  s.add("contexts.count", "contexts", std::to_string(P.contexts().size()),
        "distributive sub-ortholattices other than {0, 1}");
  LayerCheck first{true, ""};
  s.data["contexts"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < P.contexts().size(); ++v) {
    const Context& c = P.context(v);
    const LayerCheck st = stone_check(P, v);
    if (!st.holds && first.holds) first = {false, "V" + std::to_string(v) + ": " + st.witness};
    std::vector<std::string> below;
    for (std::size_t w = 0; w < P.contexts().size(); ++w)
      if (w != v && P.context_leq(w, v)) below.push_back("V" + std::to_string(w));
    s.lines.push_back("V" + std::to_string(v) + " = {" + labels(L, c.elements) + "}  atoms {" +
                      labels(L, c.atoms) + "}" +
                      (below.empty() ? "" : "  contains " + join(below, " ")));
    nlohmann::ordered_json jc;
    jc["id"] = v;
    std::vector<std::string> el, at;
    for (Elem e : c.elements) el.push_back(L.label(e));
    for (Elem e : c.atoms) at.push_back(L.label(e));
    jc["elements"] = el;
    jc["atoms"] = at;
    s.data["contexts"].push_back(std::move(jc));
  }
  s.check("contexts.stone", "Stone representation", first.holds,
          "each context is atomistic and κ is a bijection onto spectrum subsets sending ∧, ∨, ⊥ "
          "to ∩, ∪, complement",
          first.witness);
}

void presheaf_section(Report& R, const SpectralPresheaf& P, std::size_t bound) {
  Section& s = R.section("presheaf");
  s.add("presheaf.points", "spectral points", std::to_string(P.num_points()),
        "atoms of contexts, one spectrum point each");
  const LayerCheck f = functoriality_check(P);
  s.check("presheaf.functoriality", "restriction functorial", f.holds,
          "restricting X to W and then to V equals restricting X to V", f.witness);
  try {
    s.add("presheaf.subclop", "clopen subpresheaves", std::to_string(count_subclop(P, bound)),
          "restriction-closed families of spectrum subsets");
  } catch (const TooLarge& e) {
    s.skipped("presheaf.subclop", "clopen subpresheaves", e.what());
  }
  const auto defect = inner_pointwise_defect(P);
  s.fact("presheaf.inner-pointwise", "pointwise inner family restriction-closed", !defect,
         "V ↦ κ_V(⋁{b ∈ V : b ≤ a}) is restriction-closed for every a",
         defect ? "a=" + P.base().label(defect->first) + " point=" + P.point_name(defect->second)
                : "");
  for (std::size_t p = 0; p < P.num_points(); ++p) {
    std::vector<std::string> r;
    for (std::size_t v = 0; v < P.contexts().size(); ++v)
      if (v != P.point_context(p) && P.context_leq(v, P.point_context(p)))
        r.push_back(P.point_name(P.restrict_point(p, v)));
    s.lines.push_back(P.point_name(p) + (r.empty() ? "" : " restricts to " + join(r, ", ")));
  }
}

void daseinise_section(Report& R, const SpectralPresheaf& P, Elem a) {
  Section& s = R.section("daseinise");
  const auto& L = P.base();
  s.data["element"] = L.label(a);
  const auto o = outer_daseinise(P, a);
  const auto i = inner_daseinise(P, a);
  s.add("daseinise.outer", "outer daseinisation", P.format(o), "V ↦ κ_V(⋀{b ∈ V : a ≤ b})");
  s.add("daseinise.inner", "inner daseinisation", P.format(i),
        "largest restriction-closed part of V ↦ κ_V(⋁{b ∈ V : b ≤ a})");
  s.check("daseinise.eps-outer", "outer retract", eps_outer(P, o) == a, "ε°(δ°(a)) = a",
          "ε°(δ°(a)) = " + L.label(eps_outer(P, o)));
  s.check("daseinise.eps-inner", "inner retract", eps_inner(P, i) == a, "ε∨(δⁱ(a)) = a",
          "ε∨(δⁱ(a)) = " + L.label(eps_inner(P, i)));
  s.check("daseinise.order", "inner below outer", sub_leq(P, i, o), "δⁱ(a) ≤ δ°(a)");
  s.fact("daseinise.inner-pointwise", "pointwise inner family restriction-closed",
         inner_pointwise_family(P, a) == i.points,
         "the pointwise inner family of a equals its restriction-closed part");
  for (std::size_t v = 0; v < P.contexts().size(); ++v)
    s.lines.push_back("V" + std::to_string(v) + ": outer support " +
                      L.label(outer_support(P, v, a)) + ", inner support " +
                      L.label(inner_support(P, v, a)));
}

void suite_claims(Section& s, const std::string& prefix, const std::vector<SuiteItem>& items) {
  for (const SuiteItem& it : items)
    s.check(prefix + it.id, it.id, it.holds, it.statement, it.witness);
}

bool has_class(const FiniteOrthoLattice& L, const ElemMap& f, const std::string& name) {
  const auto cls = classify(L, f);
  return std::find(cls.begin(), cls.end(), name) != cls.end();
}

void algebra_section(Report& R, const SubclopAlgebra& A) {
  Section& s = R.section("algebra");
  const auto& K = A.lattice();
  s.add("algebra.size", "Sub_clop elements", std::to_string(A.size()),
        "clopen subpresheaves of the spectral presheaf");
  const bool bullet = has_class(K, bullet_table(A), "coquasiintuitionistic-algebra");
  const bool circ = has_class(K, circ_table(A), "quasiintuitionistic-algebra");
  const bool skolem = is_skolem(K);
  const bool residuals =
      heyting_table(K) == A.heyting_table() && brouwer_table(K) == A.coheyting_table();
  s.check("algebra.bullet", "• coquasiintuitionistic", bullet,
          "(Sub_clop, •) is a coquasiintuitionistic algebra");
  s.check("algebra.circ", "∘ quasiintuitionistic", circ,
          "(Sub_clop, ∘) is a quasiintuitionistic algebra");
  s.check("algebra.skolem", "Skolem", skolem, "Sub_clop is a Heyting and a Brouwer algebra");
  s.check("algebra.residuals", "contextwise residuals", residuals,
          "the contextwise ⇒ and ⤙ equal the lattice residuals");
  s.check("algebra.akchurin", "Akchurin", bullet && circ && skolem,
          "(Sub_clop, ⇒, ⤙, •, ∘) is an Akchurin algebra");
}

void starsuite_sections(Report& R, const SubclopAlgebra& A) {
  suite_claims(R.section("starsuite"), "star.", star_property_suite(A));
  suite_claims(R.section("daseinisation"), "dasein.", daseinisation_suite(A));
  Section& s = R.section("paraconsistency");
  const auto p = paraconsistency_report(A);
  const auto& K = A.lattice();
  s.fact("paraconsistency.bullet", "• paraconsistent beyond the bounds", p.fully_paraconsistent,
         "S∧S• = 0 only for S ∈ {0, Σ}", "overlap count " + std::to_string(p.overlap.size()));
  s.fact("paraconsistency.circ", "∘ paracomplete beyond the bounds", p.fully_paracomplete,
         "S∨S∘ = Σ only for S ∈ {0, Σ}", "gap count " + std::to_string(p.gap.size()));
  for (Elem e : p.overlap) s.lines.push_back("S∧S• ≠ 0: " + K.label(e));
  for (Elem e : p.gap) s.lines.push_back("S∨S∘ ≠ Σ: " + K.label(e));
}

void internal_section(Report& R, const DaseinCache& D, std::size_t bound) {
  Section& s = R.section("internal");
  const auto& L = D.presheaf().base();
  auto iso_claim = [&](const std::string& id, const std::string& title, const FiniteOrthoLattice& I,
                       const std::string& statement) {
    const auto iso = ortho_iso(I, L);
    Claim& c =
        s.add(id, title, iso ? "present" : "absent", statement, iso ? map_text(I, L, *iso) : "");
    c.violation = !iso;
  };
  for (Flavor f : {Flavor::Bullet, Flavor::Circ}) {
    const bool b = f == Flavor::Bullet;
    const std::string key = b ? "internal.bullet" : "internal.circ";
    const SubclopInternal I = subclop_internal(D, f, bound);
    s.add(key + ".size", b ? "fixed points of ••" : "fixed points of ∘∘",
          std::to_string(I.carrier.size()), "S with S = S¬¬ in Sub_clop",
          "of " + std::to_string(I.host_size));
    s.check(key + ".laws", b ? "•• lattice laws" : "∘∘ lattice laws", I.violation.empty(),
            "closed under the negation and the operations, and equal to the image of ¬¬",
            I.violation);
    iso_claim(key + ".iso", b ? "internal iso to L" : "inner internal iso to L", I.lattice,
              "the internal lattice is ortho-isomorphic to L");
  }
  for (Side side : {Side::Outer, Side::Inner}) {
    const bool o = side == Side::Outer;
    const std::string key = o ? "internal.quotient-outer" : "internal.quotient-inner";
    const EpsQuotient Q = quotient_eps(D, side, bound);
    s.add(key + ".size", o ? "ε° classes" : "ε∨ classes", std::to_string(Q.reps.size()),
          "classes of S ≈ T iff ε(S) = ε(T)");
    s.check(key + ".laws", o ? "ε° quotient laws" : "ε∨ quotient laws", Q.violation.empty(),
            "the induced negation is well defined and ε preserves the quotient operations",
            Q.violation);
    iso_claim(key + ".iso", o ? "outer quotient iso to L" : "inner quotient iso to L", Q.lattice,
              "the ε-quotient is ortho-isomorphic to L");
  }
  const GlivenkoReport g = subclop_glivenko(D.presheaf(), bound);
  s.check("internal.glivenko-brouwer", "⌐⌐ lattice boolean", g.brouwer_boolean,
          "the internal lattice of (Sub_clop, ⌐) is boolean",
          std::to_string(g.brouwer_size) + " elements");
  s.check("internal.glivenko-heyting", "¬¬ lattice boolean", g.heyting_boolean,
          "the internal lattice of (Sub_clop, ¬) is boolean",
          std::to_string(g.heyting_size) + " elements");
}

void bridge_section(Report& R, const SubclopAlgebra& A) {
  Section& s = R.section("bridge");
  const BridgeReport b = orthomodularity_bridge(A);
  static const char* ids[5] = {"bridge.bullet-condition", "bridge.circ-condition",
                               "bridge.bullet-lattice", "bridge.circ-lattice", "bridge.L"};
  static const char* titles[5] = {"• condition", "∘ condition", "•• lattice orthomodular",
                                  "∘∘ lattice orthomodular", "L orthomodular"};
  static const char* statements[5] = {"no S, T ∉ {0, Σ} with S• ≤ T, (S∧T)• = Σ, T•• ≠ S•",
                                      "no S, T ∉ {0, Σ} with T ≤ S∘, (S∨T)∘ = 0, T∘∘ ≠ S∘",
                                      "the internal lattice of (Sub_clop, •) is orthomodular",
                                      "the internal lattice of (Sub_clop, ∘) is orthomodular",
                                      "L is orthomodular"};
  for (int i = 0; i < 5; ++i) s.fact(ids[i], titles[i], b.holds[i], statements[i], b.witness[i]);
  s.check("bridge.agree", "conditions agree", b.agree, "the five conditions are equivalent");
}

void nogo_section(Report& R, const DaseinCache& D, std::size_t bound) {
  Section& s = R.section("nogo");
  const NogoReport r = nogo_report(D, bound);
  s.fact("nogo.bullet.de-morgan", "• De Morgan", r.bullet.de_morgan,
         "(Sub_clop, •) is a De Morgan algebra", r.bullet.witness);
  s.fact("nogo.bullet.boolean", "• boolean", r.bullet.boolean,
         "• is an orthocomplementation of Sub_clop");
  s.fact("nogo.circ.de-morgan", "∘ De Morgan", r.circ.de_morgan,
         "(Sub_clop, ∘) is a De Morgan algebra", r.circ.witness);
  s.fact("nogo.circ.boolean", "∘ boolean", r.circ.boolean,
         "∘ is an orthocomplementation of Sub_clop");
  s.check("nogo.consistent", "De Morgan iff boolean", r.consistent,
          "each negation is De Morgan exactly when it is boolean");
  s.add("nogo.summary", "summary", r.summary, "a De Morgan reduct exists only in the boolean case");
}

void axiom_claims(Section& s, const AlgebraModel& M, const ModelClass& cls, std::size_t bound) {
  for (const AxiomVerdict& v : axiom_suite(M, M.designated(), bound)) {
    const bool required = cls.models(minimal_logic(parse_sequent(v.sequent)));
    Claim& c =
        s.add("logic.axiom." + v.id, v.id, v.valid ? "valid" : "invalid", v.sequent, v.witness);
    c.violation = !v.valid && required;
  }
}

void rule_claims(Section& s, const AlgebraModel& M, std::size_t depth, std::size_t vars) {
  for (const RuleVerdict& v : rule_soundness_suite(M, depth, vars)) {
    std::string id = "logic.rule." + v.id;
    std::string title = v.id;
    if (!v.direction.empty()) {
      id += v.direction == "lhs=>rhs" ? ".forward" : ".backward";
      title += " " + v.direction;
    }
    const std::string verdict = v.holds ? "sound" : v.expected ? "VIOLATED" : "fails, not required";
    Claim& c = s.add(id, title, verdict,
                     std::to_string(v.instances) + " instances up to depth " +
                         std::to_string(depth) + " in " + std::to_string(vars) + " variables",
                     v.witness);
    c.violation = !v.holds && v.expected;
  }
}

void model_section(Report& R, const AlgebraModel& M, std::size_t bound, bool rules) {
  Section& s = R.section("logic model");
  const ModelClass cls = classify_model(M);
  s.data["model"] = M.name;
  s.add("logic.model", "model", M.name, "algebra used as a logic model");
  s.add("logic.signature", "signature", to_string(M.designated()), "designated connectives");
  s.add("logic.classes", "classes", join(cls.tags, ", "), "model classes the algebra belongs to");
  axiom_claims(s, M, cls, bound);
  if (!rules) return;
  try {
    rule_claims(s, M, 2, 2);
  } catch (const TooLarge& e) {
    s.skipped("logic.rules", "rules", e.what());
  }
}

// ---- commands ----

struct Ctx {
  Options opt;
  Report& R;
};

// Runs one group of sections and records size limits as skips.
void guarded(Report& R, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const TooLarge& e) {
    R.section(name).skipped(name + ".skipped", name,
                            std::string(e.what()) + "; raise --max-subclop");
  } catch (const TrivialLattice& e) {
    R.section(name).skipped(name + ".skipped", name, e.what());
  }
}

void cmd_all(Ctx& c, const std::shared_ptr<const FiniteOrthoLattice>& L) {
  Report& R = c.R;
  const std::size_t bound = c.opt.max_subclop;
  lattice_section(R, *L);
  if (L->has_ortho()) negation_section(R, *L, L->ortho_table(), "ortho");
  residuation_section(R, *L);
  std::shared_ptr<const SpectralPresheaf> P;
  guarded(R, "contexts", [&] {
    P = std::make_shared<const SpectralPresheaf>(L);
    contexts_section(R, *P);
    presheaf_section(R, *P, bound);
  });
  if (!P) return;
  std::shared_ptr<const SubclopAlgebra> A;
  guarded(R, "starsuite", [&] {
    A = std::make_shared<const SubclopAlgebra>(P, bound);
    algebra_section(R, *A);
    starsuite_sections(R, *A);
  });
  const DaseinCache D(P);
  guarded(R, "internal", [&] { internal_section(R, D, bound); });
  guarded(R, "nogo", [&] { nogo_section(R, D, bound); });
  if (!A) return;
  bridge_section(R, *A);
  model_section(R, subclop_model(*A, "subclop:" + L->name()), c.opt.max_assignments, true);
}

}  // namespace

std::shared_ptr<const FiniteOrthoLattice> load_lattice(const std::string& uri) {
  if (has_prefix(uri, kCatalog))
    return std::make_shared<const FiniteOrthoLattice>(catalog(uri.substr(kCatalog.size())));
  if (has_prefix(uri, kSubclop) || has_prefix(uri, kChain))
    throw InvalidSpec("'" + uri + "' is a model, not a lattice; use it with the logic commands");
  const std::string text = read_file(uri);
  try {
    return std::make_shared<const FiniteOrthoLattice>(build_lattice(parse_lattice_spec(text)));
  } catch (const ParseError& e) {
    throw InvalidSpec(uri + ": " + e.what());
  }
}

AlgebraModel load_model(const std::string& uri, std::size_t max_subclop) {
  if (has_prefix(uri, kChain)) {
    const std::string n = uri.substr(kChain.size());
    if (n.empty() || n.size() > 2 || !std::all_of(n.begin(), n.end(), ::isdigit))
      throw InvalidSpec("chain length must be a number in 2..64: '" + uri + "'");
    const std::size_t k = std::stoul(n);
    if (k < 2 || k > 64) throw InvalidSpec("chain length must be in 2..64: '" + uri + "'");
    return chain_model(k);
  }
  if (has_prefix(uri, kSubclop)) {
    auto L = lattice_by_name(uri.substr(kSubclop.size()));
    const SubclopAlgebra A(std::make_shared<const SpectralPresheaf>(L), max_subclop);
    return subclop_model(A, uri);
  }
  return lattice_model(load_lattice(uri), uri);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  std::string lattice_uri, element, negmap_path, model_uri, sequent_text, logic_name, catalog_name;
  std::size_t depth = 2, vars = 2, limit = 20;

  CLI::App app{"Finite ortholattices, spectral presheaves and their negations"};
  app.name("fourneg");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Emit the report as JSON");
  app.add_option("--max-subclop", opt.max_subclop,
                 "Spectral point bound for Sub_clop enumeration "
                 "(env FOURNEG_MAX_SUBCLOP)");
  app.add_option("--max-assignments", opt.max_assignments,
                 "Valuation bound for validity checks "
                 "(env FOURNEG_MAX_ASSIGNMENTS)");

  auto lattice_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("lattice", lattice_uri, "catalog:NAME or lattice file")->required();
    return c;
  };
  auto* check = lattice_cmd("check", "Lattice classification and the ortho negation");
  check->add_option("--negmap", negmap_path, "Negation map file to classify instead");
  lattice_cmd("contexts", "Contexts and their Stone representation");
  lattice_cmd("presheaf", "Spectral presheaf points and restrictions");
  auto* dasein = lattice_cmd("daseinise", "Outer and inner daseinisation of an element");
  dasein->add_option("element", element, "Element label")->required();
  lattice_cmd("starsuite", "Property suites of the two Sub_clop negations");
  lattice_cmd("internal", "Internal lattices and ε-quotients of Sub_clop");
  lattice_cmd("bridge", "Orthomodularity conditions on Sub_clop");
  lattice_cmd("nogo", "De Morgan and boolean flags of the Sub_clop negations");
  lattice_cmd("residuate", "Heyting and Brouwer residuals");
  lattice_cmd("all", "Every check for one lattice");
  auto* cat = app.add_subcommand("catalog", "List built-in lattices or print one");
  cat->add_option("name", catalog_name, "Catalog name");

  auto* logic = app.add_subcommand("logic", "Sequent validity, saturation and countermodels");
  logic->require_subcommand(1);
  logic->fallthrough();
  auto* lcheck = logic->add_subcommand("check", "Validity of a sequent in a model");
  lcheck->add_option("--model", model_uri, "catalog:NAME, subclop:NAME, chain:N or file")
      ->required();
  lcheck->add_option("--sequent", sequent_text, "Sequent such as 'p & q |- p'")->required();
  auto* laxioms = logic->add_subcommand("axioms", "Axiom schemas in a model");
  laxioms->add_option("--model", model_uri, "Model")->required();
  auto* lrules = logic->add_subcommand("rules", "Rule soundness in a model");
  lrules->add_option("--model", model_uri, "Model")->required();
  lrules->add_option("--depth", depth, "Formula depth")->check(CLI::Range(0, 4));
  lrules->add_option("--vars", vars, "Variable count")->check(CLI::Range(1, 7));
  auto* lsat = logic->add_subcommand("saturate", "Derivable sequents in a bounded universe");
  lsat->add_option("--logic", logic_name, "coqint, qint, biqint or akchurin")->required();
  lsat->add_option("--depth", depth, "Formula depth")->check(CLI::Range(0, 4));
  lsat->add_option("--vars", vars, "Variable count")->check(CLI::Range(1, 7));
  lsat->add_option("--limit", limit, "Derived sequents to list");
  auto* lcm = logic->add_subcommand("countermodel", "First countermodel in the model bank");
  lcm->add_option("--sequent", sequent_text, "Sequent")->required();
  lcm->add_option("--logic", logic_name, "Logic; defaults to the weakest covering the sequent");

  try {
    opt.max_subclop = env_size("FOURNEG_MAX_SUBCLOP", opt.max_subclop);
    opt.max_assignments = env_size("FOURNEG_MAX_ASSIGNMENTS", opt.max_assignments);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Digest digest(args);
  Report R(join(args, " "), 0);
  try {
    Ctx c{opt, R};
    auto lattice = [&] {
      digest.add(lattice_uri);
      return load_lattice(lattice_uri);
    };
    auto presheaf = [&] { return std::make_shared<const SpectralPresheaf>(lattice()); };
    if (check->parsed()) {
      auto L = lattice();
      lattice_section(R, *L);
      if (!negmap_path.empty()) {
        digest.add(negmap_path);
        const ElemMap f = resolve_negmap(*L, parse_negmap(read_file(negmap_path)));
        negation_section(R, *L, f, negmap_path);
      } else if (L->has_ortho()) {
        negation_section(R, *L, L->ortho_table(), "ortho");
      }
      residuation_section(R, *L);
    } else if (app.got_subcommand("contexts")) {
      contexts_section(R, *presheaf());
    } else if (app.got_subcommand("presheaf")) {
      auto P = presheaf();
      contexts_section(R, *P);
      presheaf_section(R, *P, opt.max_subclop);
    } else if (dasein->parsed()) {
      auto P = presheaf();
      daseinise_section(R, *P, P->base().at(element));
    } else if (app.got_subcommand("starsuite")) {
      const SubclopAlgebra A(presheaf(), opt.max_subclop);
      algebra_section(R, A);
      starsuite_sections(R, A);
    } else if (app.got_subcommand("internal")) {
      internal_section(R, DaseinCache(presheaf()), opt.max_subclop);
    } else if (app.got_subcommand("bridge")) {
      const SubclopAlgebra A(presheaf(), opt.max_subclop);
      lattice_section(R, A.presheaf().base());
      bridge_section(R, A);
    } else if (app.got_subcommand("nogo")) {
      nogo_section(R, DaseinCache(presheaf()), opt.max_subclop);
    } else if (app.got_subcommand("residuate")) {
      residuation_section(R, *lattice());
    } else if (app.got_subcommand("all")) {
      cmd_all(c, lattice());
    } else if (cat->parsed()) {
      Section& s = R.section("catalog");
      if (catalog_name.empty()) {
        for (const std::string& n : catalog_names())
          s.add("catalog." + n, n, std::to_string(catalog(n).size()) + " elements",
                "built-in lattice catalog:" + n);
      } else {
        const FiniteOrthoLattice L = catalog(catalog_name);
        s.add("catalog." + catalog_name, catalog_name, std::to_string(L.size()) + " elements",
              "built-in lattice catalog:" + catalog_name);
        std::istringstream spec(write_lattice_spec(L.to_spec()));
        for (std::string line; std::getline(spec, line);) s.lines.push_back(line);
        s.data["spec"] = write_lattice_spec(L.to_spec());
      }
    } else if (lcheck->parsed()) {
      digest.add(model_uri);
      const AlgebraModel M = load_model(model_uri, opt.max_subclop);
      const Sequent q = parse_sequent(sequent_text);
      const Validity v = sequent_valid(q, M, opt.max_assignments);
      Section& s = R.section("logic check");
      s.add("logic.model", "model", M.name, "algebra used as a logic model");
      s.fact("logic.valid", "valid", v.valid, print(q),
             v.valid ? "" : "counter-assignment " + format_assignment(M, v.counter));
      s.data["assignments"] = v.assignments;
    } else if (laxioms->parsed() || lrules->parsed()) {
      digest.add(model_uri);
      const AlgebraModel M = load_model(model_uri, opt.max_subclop);
      if (laxioms->parsed()) {
        model_section(R, M, opt.max_assignments, false);
      } else {
        Section& s = R.section("logic rules");
        s.add("logic.model", "model", M.name, "algebra used as a logic model");
        rule_claims(s, M, depth, vars);
      }
    } else if (lsat->parsed()) {
      const Logic l = parse_logic(logic_name);
      const Saturation S = saturate(l, depth, vars);
      Section& s = R.section("logic saturate");
      s.add("logic.saturate.universe", "universe", std::to_string(S.universe().size()),
            "formulas up to depth " + std::to_string(depth) + " in " + std::to_string(vars) +
                " variables over the " + to_string(l) + " signature");
      s.add("logic.saturate.derived", "derived sequents", std::to_string(S.size()),
            "axiom instances closed under the rules inside the universe",
            std::to_string(S.rounds()) + " rounds");
      for (const AuditResult& a :
           soundness_audit(S, model_bank(opt.max_subclop), opt.max_assignments))
        s.check("logic.audit." + a.model, "sound in " + a.model, a.sound,
                "every derived sequent is valid in the model", a.witness);
      for (const Sequent& q : S.sequents(limit)) s.lines.push_back(print(q));
    } else if (lcm->parsed()) {
      const Sequent q = parse_sequent(sequent_text);
      const Logic l = logic_name.empty() ? minimal_logic(q) : parse_logic(logic_name);
      const CountermodelResult r =
          countermodel_search(q, l, model_bank(opt.max_subclop), opt.max_assignments);
      Section& s = R.section("logic countermodel");
      s.add("logic.countermodel", "countermodel", r.model ? *r.model : "none in bank",
            print(q) + " in " + to_string(l),
            r.model ? r.assignment_text : "scanned " + join(r.scanned, ", "));
      s.data["scanned"] = r.scanned;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.input_error() ? 2 : 1;
  }

  R.set_digest(digest.value());
  if (opt.json)
    out << R.to_json().dump(2) << '\n';
  else
    out << R.to_text();
  return R.violations() ? 1 : 0;
}

}  // namespace fourneg

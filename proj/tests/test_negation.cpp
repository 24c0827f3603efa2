#include <algorithm>
#include <random>

#include "doctest.h"
#include "fourneg/errors.hpp"
#include "fourneg/negation.hpp"
#include "oracle.hpp"

using namespace fourneg;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

ElemMap identity(std::size_t n) {
  ElemMap f(n);
  for (Elem e = 0; e < n; ++e) f[e] = e;
  return f;
}

}  // namespace

TEST_CASE("check_axiom examples") {
  const FiniteOrthoLattice B2 = catalog("B2");
  CHECK(check_axiom(B2, B2.ortho_table(), 13).holds);
  const FiniteOrthoLattice O6 = catalog("O6");
  const auto r = check_axiom(O6, O6.ortho_table(), 5);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.size() == 3);
  const auto& f = O6.ortho_table();
  const Elem x = r.witness[0], y = r.witness[1], z = r.witness[2];
  CHECK(O6.leq(x, O6.join(y, z)));
  CHECK_FALSE(O6.leq(f[z], O6.join(f[x], y)));
  for (const auto& n : catalog_names()) {
    const FiniteOrthoLattice L = catalog(n);
    if (L.size() > 1) CHECK_FALSE(check_axiom(L, identity(L.size()), 1).holds);
  }
  CHECK_THROWS_AS(check_axiom(B2, B2.ortho_table(), 19), Error);
}

TEST_CASE("check_axiom agrees with the literal oracle on catalog and random maps") {
  std::mt19937 rng(20261016);
  for (const auto& n : catalog_names()) {
    const FiniteOrthoLattice L = catalog(n);
    if (L.size() > 8) continue;
    std::vector<ElemMap> maps{L.ortho_table(), identity(L.size())};
    for (int i = 0; i < 100; ++i) maps.push_back(oracle::random_map(L.size(), rng));
    for (const auto& f : maps) {
      const AxiomProfile p = axiom_profile(L, f);
      for (int k = 1; k <= kAxiomCount; ++k) {
        CAPTURE(n);
        CAPTURE(k);
        CHECK(p[k] == oracle::axiom(L, f, k));
      }
    }
  }
}

TEST_CASE("classify examples") {
  const FiniteOrthoLattice B3 = catalog("B3");
  const auto b = classify(B3, B3.ortho_table());
  CHECK(has(b, "orthocomplementation"));
  CHECK(has(b, "boolean"));
  CHECK(has(b, "De-Morgan-algebra"));
  const FiniteOrthoLattice O6 = catalog("O6");
  const auto o = classify(O6, O6.ortho_table());
  CHECK(has(o, "orthocomplementation"));
  CHECK_FALSE(has(o, "De-Morgan-algebra"));
  CHECK_FALSE(has(o, "orthomodular-lattice"));
  // The constant-1 map is antitone, so n1 holds alongside n15 and n16.
  const FiniteOrthoLattice B2 = catalog("B2");
  const auto c = classify(B2, ElemMap(4, B2.top()));
  CHECK(c == std::vector<std::string>{"subminimal", "paraconsistent", "paracomplete",
                                      "Vakarelov-algebra"});
}

TEST_CASE("classify respects the class containments") {
  std::mt19937 rng(7);
  for (const auto& n : catalog_names()) {
    const FiniteOrthoLattice L = catalog(n);
    if (L.size() > 8) continue;
    for (int i = 0; i < 200; ++i) {
      ElemMap f = oracle::random_map(L.size(), rng);
      if (i == 0) f = L.ortho_table();
      const auto c = classify(L, f);
      if (has(c, "intuitionistic-negation")) CHECK(has(c, "quasiintuitionistic-negation"));
      if (has(c, "cointuitionistic-negation")) CHECK(has(c, "coquasiintuitionistic-negation"));
      if (has(c, "orthocomplementation")) CHECK(has(c, "involution"));
      const AxiomProfile p = axiom_profile(L, f);
      if (p[1] && p[2]) CHECK(p[18]);
    }
  }
}

TEST_CASE("derived lemma suite never reports a violation") {
  std::mt19937 rng(11);
  for (const auto& n : catalog_names()) {
    const FiniteOrthoLattice L = catalog(n);
    if (L.size() > 8) continue;
    for (int i = 0; i < 100; ++i) {
      const ElemMap f = i == 0 ? L.ortho_table() : oracle::random_map(L.size(), rng);
      for (const auto& c : derived_lemma_suite(L, f)) {
        CAPTURE(c.id);
        CHECK(c.status != ClauseStatus::Violated);
      }
    }
  }
}

TEST_CASE("derived lemma suite examples") {
  auto status = [](const FiniteOrthoLattice& L, const std::string& id) {
    for (const auto& c : derived_lemma_suite(L, L.ortho_table()))
      if (c.id == id) return c.status;
    FAIL("missing clause " << id);
    return ClauseStatus::Violated;
  };
  CHECK(status(catalog("O6"), "neg.viii") == ClauseStatus::Verified);
  CHECK(status(catalog("B3"), "alg.demorgan.boolean") == ClauseStatus::Verified);
  const FiniteOrthoLattice MO2 = catalog("MO2");
  const auto& f = MO2.ortho_table();
  for (Elem x = 0; x < MO2.size(); ++x) CHECK(f[f[f[x]]] == f[x]);
  CHECK(check_axiom(MO2, f, 8).holds);
}

TEST_CASE("negmap files") {
  const FiniteOrthoLattice B2 = catalog("B2");
  const NegmapSpec s = parse_negmap("negmap B2\nmap 0:1\nmap a:b\nmap b:a\nmap 1:0\n");
  CHECK(s.lattice == "B2");
  CHECK(resolve_negmap(B2, s) == B2.ortho_table());
  CHECK(resolve_negmap(B2, parse_negmap(write_negmap(s))) == B2.ortho_table());
  try {
    parse_negmap("negmap B2\nmap 0:1\nmapp a:b\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(resolve_negmap(B2, parse_negmap("negmap B2\nmap 0:1\nmap a:q\n")), Error);
}

TEST_CASE("NegationMap caches the profile") {
  auto L = std::make_shared<const FiniteOrthoLattice>(catalog("O6"));
  const NegationMap m(L, L->ortho_table());
  CHECK(m.profile() == axiom_profile(*L, L->ortho_table()));
  CHECK(m.satisfies(13));
  CHECK_FALSE(m.satisfies(4));
}

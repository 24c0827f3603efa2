#include <algorithm>
#include <set>

#include "doctest.h"
#include "fourneg/errors.hpp"
#include "fourneg/lattice.hpp"
#include "oracle.hpp"

using namespace fourneg;

namespace {

const char* kO6 = R"(# benzene ring
lattice O6
elements 0 x y yp xp 1
covers 0<x x<y y<1 0<yp yp<xp xp<1
ortho x:xp y:yp 0:1
)";

std::vector<std::string> all_names() { return catalog_names(); }

// Componentwise product, used to build lattices outside the catalog.
FiniteOrthoLattice product(const FiniteOrthoLattice& A, const FiniteOrthoLattice& B) {
  const std::size_t n = A.size() * B.size();
  std::vector<std::string> labels;
  std::vector<std::uint8_t> leq(n * n);
  ElemMap ortho(n);
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < B.size(); ++b) {
      labels.push_back(A.label(a) + "." + B.label(b));
      ortho[a * B.size() + b] = A.ortho(a) * B.size() + B.ortho(b);
      for (Elem c = 0; c < A.size(); ++c)
        for (Elem d = 0; d < B.size(); ++d)
          leq[(a * B.size() + b) * n + c * B.size() + d] = A.leq(a, c) && B.leq(b, d);
    }
  return FiniteOrthoLattice::from_order(A.name() + "x" + B.name(), labels, leq, ortho);
}

}  // namespace

TEST_CASE("O6 from text is a six-element orthocomplemented lattice") {
  const FiniteOrthoLattice L = build_lattice(parse_lattice_spec(kO6));
  CHECK(L.size() == 6);
  CHECK(L.has_ortho());
  CHECK(L.leq(L.at("x"), L.at("y")));
  CHECK(L.ortho(L.at("x")) == L.at("xp"));
  CHECK(L.meet(L.at("y"), L.at("xp")) == L.bottom());
  CHECK(L.join(L.at("x"), L.at("yp")) == L.top());
}

TEST_CASE("two-element chain with ortho is boolean") {
  const FiniteOrthoLattice L =
      build_lattice(parse_lattice_spec("lattice C2\nelements 0 1\ncovers 0<1\northo 0:1\n"));
  CHECK(L.size() == 2);
  CHECK(is_distributive(L).holds);
  CHECK(is_orthomodular(L).holds);
}

TEST_CASE("three atoms without a top are rejected") {
  CHECK_THROWS_AS(
      build_lattice(parse_lattice_spec("lattice bad\nelements 0 a b c\ncovers 0<a 0<b 0<c\n")),
      NotALattice);
}

TEST_CASE("malformed input reports the line") {
  try {
    parse_lattice_spec("lattice t\nelements 0 1\ncovers 0<1\nfrobnicate\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(build_lattice(parse_lattice_spec("lattice t\nelements 0 1\ncovers 0<2\n")),
                  Error);
  CHECK_THROWS_AS(
      build_lattice(parse_lattice_spec("lattice c\nelements 0 a 1\ncovers 0<a a<1 1<0\n")),
      CyclicCovers);
}

TEST_CASE("a bad ortho table is rejected") {
  CHECK_THROWS_AS(build_lattice(parse_lattice_spec(
                      "lattice t\nelements 0 a b 1\ncovers 0<a 0<b a<1 b<1\northo 0:1 a:a b:b\n")),
                  NotAnOrthocomplementation);
}

TEST_CASE("catalog sizes and names") {
  CHECK(catalog("B3").size() == 8);
  CHECK(catalog("MO2").size() == 6);
  CHECK(catalog("B4").size() == 16);
  CHECK(catalog("MO3").size() == 8);
  CHECK_THROWS_AS(catalog("Q7"), UnknownCatalogName);
  const FiniteOrthoLattice O6 = catalog("O6");
  const FiniteOrthoLattice T = build_lattice(parse_lattice_spec(kO6));
  for (const char* a : {"0", "x", "y", "yp", "xp", "1"})
    for (const char* b : {"0", "x", "y", "yp", "xp", "1"})
      CHECK(O6.leq(O6.at(a), O6.at(b)) == T.leq(T.at(a), T.at(b)));
}

TEST_CASE("writer round-trips every catalog lattice") {
  for (const auto& n : all_names()) {
    const FiniteOrthoLattice L = catalog(n);
    const std::string text = write_lattice_spec(L.to_spec());
    const FiniteOrthoLattice R = build_lattice(parse_lattice_spec(text));
    REQUIRE(R.size() == L.size());
    CHECK(write_lattice_spec(R.to_spec()) == text);
    for (Elem a = 0; a < L.size(); ++a) {
      CHECK(R.label(a) == L.label(a));
      CHECK(R.ortho(a) == L.ortho(a));
      for (Elem b = 0; b < L.size(); ++b) CHECK(R.leq(a, b) == L.leq(a, b));
    }
  }
}

TEST_CASE("meet and join tables match the order and satisfy the lattice laws") {
  for (const auto& n : all_names()) {
    const FiniteOrthoLattice L = catalog(n);
    CHECK(L.bottom() == oracle::bottom(L));
    CHECK(L.top() == oracle::top(L));
    for (Elem a = 0; a < L.size(); ++a)
      for (Elem b = 0; b < L.size(); ++b) {
        CHECK(L.meet(a, b) == oracle::glb(L, a, b));
        CHECK(L.join(a, b) == oracle::lub(L, a, b));
        CHECK(L.meet(a, b) == L.meet(b, a));
        CHECK(L.meet(a, L.join(a, b)) == a);
        CHECK(L.join(a, L.meet(a, b)) == a);
        for (Elem c = 0; c < L.size(); ++c) {
          CHECK(L.meet(L.meet(a, b), c) == L.meet(a, L.meet(b, c)));
          CHECK(L.join(L.join(a, b), c) == L.join(a, L.join(b, c)));
        }
      }
  }
}

TEST_CASE("ortho tables are antitone involutive complements") {
  for (const auto& n : all_names()) {
    const FiniteOrthoLattice L = catalog(n);
    for (Elem a = 0; a < L.size(); ++a) {
      CHECK(L.ortho(L.ortho(a)) == a);
      CHECK(L.meet(a, L.ortho(a)) == L.bottom());
      CHECK(L.join(a, L.ortho(a)) == L.top());
      for (Elem b = 0; b < L.size(); ++b)
        if (L.leq(a, b)) CHECK(L.leq(L.ortho(b), L.ortho(a)));
    }
  }
}

TEST_CASE("distributivity") {
  CHECK(is_distributive(catalog("B3")).holds);
  const FiniteOrthoLattice O6 = catalog("O6");
  const auto d = is_distributive(O6);
  REQUIRE_FALSE(d.holds);
  REQUIRE(d.witness);
  const auto [x, y, z] = *d.witness;
  CHECK(O6.meet(x, O6.join(y, z)) != O6.join(O6.meet(x, y), O6.meet(x, z)));
  // (x⊥, x, y⊥) also violates: x⊥∧(x∨y⊥) = x⊥, (x⊥∧x)∨(x⊥∧y⊥) = y⊥.
  const Elem xp = O6.at("xp"), xx = O6.at("x"), yp = O6.at("yp");
  CHECK(O6.meet(xp, O6.join(xx, yp)) == xp);
  CHECK(O6.join(O6.meet(xp, xx), O6.meet(xp, yp)) == yp);
  CHECK_FALSE(is_distributive(catalog("MO2")).holds);
  for (const auto& n : all_names())
    CHECK(is_distributive(catalog(n)).holds == oracle::distributive(catalog(n)));
}

TEST_CASE("orthomodularity, O6 sublattices and nonorthomodularity pairs") {
  const FiniteOrthoLattice O6 = catalog("O6");
  const auto om = is_orthomodular(O6);
  CHECK_FALSE(om.holds);
  REQUIRE(om.witness);
  CHECK(O6.label(om.witness->first) == "x");
  CHECK(O6.label(om.witness->second) == "y");
  const auto t = find_O6_sublattice(O6);
  REQUIRE(t);
  const std::vector<std::string> expect{"0", "x", "y", "xp", "yp", "1"};
  for (std::size_t i = 0; i < 6; ++i) CHECK(O6.label((*t)[i]) == expect[i]);
  CHECK(nonorthomodularity_pair(O6).has_value());
  CHECK(is_orthomodular(catalog("MO2")).holds);
  CHECK(is_orthomodular(catalog("B3")).holds);
  CHECK_FALSE(find_O6_sublattice(catalog("MO2")));
  CHECK_FALSE(find_O6_sublattice(catalog("B2")));
  CHECK_FALSE(nonorthomodularity_pair(catalog("MO3")));
  CHECK_FALSE(nonorthomodularity_pair(catalog("B3")));
}

TEST_CASE("the three orthomodularity tests agree on catalog lattices and products") {
  std::vector<FiniteOrthoLattice> pool;
  for (const auto& n : all_names()) pool.push_back(catalog(n));
  for (const char* a : {"B1", "B2", "O6", "MO2"})
    for (const char* b : {"B2", "O6", "MO3"}) pool.push_back(product(catalog(a), catalog(b)));
  for (const auto& L : pool) {
    CAPTURE(L.name());
    const bool om = is_orthomodular(L).holds;
    CHECK(om == oracle::orthomodular(L));
    const auto t = find_O6_sublattice(L);
    CHECK(om == !t.has_value());
    CHECK(om == !nonorthomodularity_pair(L).has_value());
    if (t) {
      const auto& e = *t;
      std::set<Elem> distinct(e.begin(), e.end());
      CHECK(distinct.size() == 6);
      CHECK(L.lt(e[1], e[2]));
      CHECK(L.ortho(e[1]) == e[3]);
      CHECK(L.ortho(e[2]) == e[4]);
      for (Elem a : e)
        for (Elem b : e) {
          CHECK(distinct.count(L.meet(a, b)) == 1);
          CHECK(distinct.count(L.join(a, b)) == 1);
        }
    }
  }
}

TEST_CASE("boolean and chain generators") {
  for (std::size_t k = 1; k <= 4; ++k) {
    const FiniteOrthoLattice L = boolean_lattice(k);
    CHECK(L.size() == (std::size_t{1} << k));
    CHECK(is_distributive(L).holds);
    CHECK(L.atoms().size() == k);
  }
  const FiniteOrthoLattice C = chain_lattice(4);
  CHECK(C.size() == 4);
  CHECK_FALSE(C.has_ortho());
  CHECK_THROWS_AS(C.ortho(0), NoOrthocomplementation);
}

#include "fourneg/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "fourneg/errors.hpp"

namespace fourneg {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

bool valid_label(std::string_view s) {
  return !s.empty() && s.find_first_of("<:#") == std::string_view::npos;
}

}  // namespace

LatticeSpec parse_lattice_spec(std::string_view text) {
  LatticeSpec spec;
  bool have_name = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& cmd = toks[0];
    if (cmd == "lattice") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'lattice <name>'");
      if (have_name) throw ParseError(lineno, "duplicate 'lattice' directive");
      spec.name = toks[1];
      have_name = true;
    } else if (cmd == "elements") {
      if (toks.size() < 2) throw ParseError(lineno, "'elements' needs at least one label");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_label(toks[i])) throw ParseError(lineno, "bad element label '" + toks[i] + "'");
        spec.elements.push_back(toks[i]);
      }
    } else if (cmd == "covers") {
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto lt = toks[i].find('<');
        if (lt == std::string::npos || lt == 0 || lt + 1 == toks[i].size() ||
            toks[i].find('<', lt + 1) != std::string::npos)
          throw ParseError(lineno, "expected cover 'a<b', got '" + toks[i] + "'");
        spec.covers.emplace_back(toks[i].substr(0, lt), toks[i].substr(lt + 1));
      }
    } else if (cmd == "ortho") {
      if (!spec.ortho) spec.ortho.emplace();
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto c = toks[i].find(':');
        if (c == std::string::npos || c == 0 || c + 1 == toks[i].size() ||
            toks[i].find(':', c + 1) != std::string::npos)
          throw ParseError(lineno, "expected ortho pair 'a:b', got '" + toks[i] + "'");
        spec.ortho->emplace_back(toks[i].substr(0, c), toks[i].substr(c + 1));
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + cmd + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_name) throw ParseError(lineno, "missing 'lattice <name>' directive");
  if (spec.elements.empty()) throw ParseError(lineno, "missing 'elements' directive");
  return spec;
}

std::string write_lattice_spec(const LatticeSpec& spec) {
  std::ostringstream out;
  out << "lattice " << spec.name << "\n";
  out << "elements";
  for (const auto& e : spec.elements) out << ' ' << e;
  out << "\n";
  if (!spec.covers.empty()) {
    out << "covers";
    for (const auto& [a, b] : spec.covers) out << ' ' << a << '<' << b;
    out << "\n";
  }
  if (spec.ortho) {
    out << "ortho";
    for (const auto& [a, b] : *spec.ortho) out << ' ' << a << ':' << b;
    out << "\n";
  }
  return out.str();
}

FiniteOrthoLattice FiniteOrthoLattice::from_order(std::string name, std::vector<std::string> labels,
                                                  std::vector<std::uint8_t> leq,
                                                  std::optional<ElemMap> ortho) {
  FiniteOrthoLattice L;
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidSpec("lattice has no elements");
  if (leq.size() != n * n) throw InvalidSpec("order relation has wrong size");
  L.name_ = std::move(name);
  L.n_ = n;
  L.labels_ = std::move(labels);
  L.leq_ = std::move(leq);

  for (Elem a = 0; a < n; ++a) {
    if (!L.leq(a, a)) throw InvalidSpec("order is not reflexive at " + L.labels_[a]);
    for (Elem b = 0; b < n; ++b) {
      if (a != b && L.leq(a, b) && L.leq(b, a))
        throw InvalidSpec("order is not antisymmetric at " + L.labels_[a] + "," + L.labels_[b]);
      if (!L.leq(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (L.leq(b, c) && !L.leq(a, c))
          throw InvalidSpec("order is not transitive at " + L.labels_[a] + "," + L.labels_[c]);
    }
  }

  L.meet_.assign(n * n, 0);
  L.join_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      Elem glb = n, lub = n;  // n marks "none"
      for (Elem c = 0; c < n; ++c) {
        if (L.leq(c, a) && L.leq(c, b) && (glb == n || L.leq(glb, c))) glb = c;
        if (L.leq(a, c) && L.leq(b, c) && (lub == n || L.leq(c, lub))) lub = c;
      }
      // A candidate found by the running maximum must dominate every lower bound.
      for (Elem c = 0; c < n; ++c) {
        if (glb != n && L.leq(c, a) && L.leq(c, b) && !L.leq(c, glb)) glb = n;
        if (lub != n && L.leq(a, c) && L.leq(b, c) && !L.leq(lub, c)) lub = n;
      }
      if (glb == n) throw NotALattice(L.labels_[a], L.labels_[b], "greatest lower bound");
      if (lub == n) throw NotALattice(L.labels_[a], L.labels_[b], "least upper bound");
      L.meet_[a * n + b] = L.meet_[b * n + a] = glb;
      L.join_[a * n + b] = L.join_[b * n + a] = lub;
    }
  }
  L.bottom_ = L.meet_all(L.elements());
  L.top_ = L.join_all(L.elements());
  if (ortho) {
    L.check_ortho(*ortho);
    L.ortho_ = std::move(ortho);
  }
  return L;
}

void FiniteOrthoLattice::check_ortho(const ElemMap& o) const {
  if (o.size() != n_) throw InvalidSpec("ortho table has wrong size");
  for (Elem e : o)
    if (e >= n_) throw InvalidSpec("ortho table entry out of range");
  auto fail = [&](int axiom, std::initializer_list<Elem> w) {
    std::vector<std::string> names;
    for (Elem e : w) names.push_back(labels_[e]);
    throw NotAnOrthocomplementation(axiom, names);
  };
  for (Elem x = 0; x < n_; ++x)
    for (Elem y = 0; y < n_; ++y)
      if (leq(x, y) && !leq(o[y], o[x])) fail(1, {x, y});
  for (Elem x = 0; x < n_; ++x)
    if (!leq(x, o[o[x]])) fail(2, {x});
  for (Elem x = 0; x < n_; ++x)
    if (!leq(o[o[x]], x)) fail(3, {x});
  for (Elem x = 0; x < n_; ++x)
    if (meet(x, o[x]) != bottom_) fail(13, {x});
  for (Elem x = 0; x < n_; ++x)
    if (join(x, o[x]) != top_) fail(14, {x});
}

std::optional<Elem> FiniteOrthoLattice::find(std::string_view label) const {
  for (Elem e = 0; e < n_; ++e)
    if (labels_[e] == label) return e;
  return std::nullopt;
}

Elem FiniteOrthoLattice::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw UnknownElement(std::string(label));
}

Elem FiniteOrthoLattice::ortho(Elem e) const {
  if (!ortho_) throw NoOrthocomplementation();
  return (*ortho_)[e];
}

const ElemMap& FiniteOrthoLattice::ortho_table() const {
  if (!ortho_) throw NoOrthocomplementation();
  return *ortho_;
}

std::vector<std::pair<Elem, Elem>> FiniteOrthoLattice::hasse_covers() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (Elem c = 0; c < n_ && cover; ++c)
        if (lt(a, c) && lt(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::vector<Elem> FiniteOrthoLattice::atoms() const {
  std::vector<Elem> out;
  for (auto [a, b] : hasse_covers())
    if (a == bottom_) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> FiniteOrthoLattice::elements() const {
  std::vector<Elem> out(n_);
  for (Elem e = 0; e < n_; ++e) out[e] = e;
  return out;
}

FiniteOrthoLattice FiniteOrthoLattice::without_ortho() const {
  FiniteOrthoLattice copy = *this;
  copy.ortho_.reset();
  return copy;
}

FiniteOrthoLattice FiniteOrthoLattice::with_ortho(const ElemMap& ortho) const {
  FiniteOrthoLattice copy = *this;
  copy.check_ortho(ortho);
  copy.ortho_ = ortho;
  return copy;
}

LatticeSpec FiniteOrthoLattice::to_spec() const {
  LatticeSpec spec;
  spec.name = name_;
  spec.elements = labels_;
  for (auto [a, b] : hasse_covers()) spec.covers.emplace_back(labels_[a], labels_[b]);
  if (ortho_) {
    spec.ortho.emplace();
    for (Elem e = 0; e < n_; ++e)
      if (e <= (*ortho_)[e]) spec.ortho->emplace_back(labels_[e], labels_[(*ortho_)[e]]);
  }
  return spec;
}

FiniteOrthoLattice build_lattice(const LatticeSpec& spec) {
  const std::size_t n = spec.elements.size();
  std::map<std::string, Elem> index;
  for (Elem e = 0; e < n; ++e)
    if (!index.emplace(spec.elements[e], e).second)
      throw InvalidSpec("duplicate element label '" + spec.elements[e] + "'");
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw InvalidSpec("undeclared element '" + s + "'");
    return it->second;
  };

  std::vector<std::uint8_t> leq(n * n, 0);
  for (Elem e = 0; e < n; ++e) leq[e * n + e] = 1;
  for (const auto& [a, b] : spec.covers) {
    Elem x = lookup(a), y = lookup(b);
    if (x == y) throw CyclicCovers(a);
    leq[x * n + y] = 1;
  }
  // Warshall closure; a cycle shows up as a symmetric off-diagonal pair.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (Elem j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i]) throw CyclicCovers(spec.elements[i]);

  std::optional<ElemMap> ortho;
  if (spec.ortho) {
    ElemMap table(n, n);
    for (const auto& [a, b] : *spec.ortho) {
      Elem x = lookup(a), y = lookup(b);
      if (table[x] != n || table[y] != n)
        throw InvalidSpec("ortho pairs element '" + (table[x] != n ? a : b) + "' twice");
      table[x] = y;
      table[y] = x;
    }
    for (Elem e = 0; e < n; ++e)
      if (table[e] == n) throw InvalidSpec("ortho leaves '" + spec.elements[e] + "' unpaired");
    ortho = std::move(table);
  }
  return FiniteOrthoLattice::from_order(spec.name, spec.elements, std::move(leq), std::move(ortho));
}

DistributivityResult is_distributive(const FiniteOrthoLattice& L) {
  const std::size_t n = L.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)))
          return {false, std::array<Elem, 3>{x, y, z}};
  return {true, std::nullopt};
}

OrthomodularityResult is_orthomodular(const FiniteOrthoLattice& L) {
  const auto& o = L.ortho_table();
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (L.leq(x, y) && L.join(x, L.meet(y, o[x])) != y)
        return {false, std::pair<Elem, Elem>{x, y}};
  return {true, std::nullopt};
}

std::optional<std::array<Elem, 6>> find_O6_sublattice(const FiniteOrthoLattice& L) {
  const auto& o = L.ortho_table();
  static const FiniteOrthoLattice O6 = catalog("O6");
  // O6 element order is 0, x, y, y⊥, x⊥, 1; the tuple is reported as (0,x,y,x⊥,y⊥,1).
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y) {
      if (!L.lt(x, y) || x == L.bottom() || y == L.top()) continue;
      std::array<Elem, 6> img{L.bottom(), x, y, o[y], o[x], L.top()};
      std::set<Elem> distinct(img.begin(), img.end());
      if (distinct.size() != 6) continue;
      bool ok = true;
      for (Elem i = 0; i < 6 && ok; ++i)
        for (Elem j = 0; j < 6 && ok; ++j)
          ok = L.meet(img[i], img[j]) == img[O6.meet(i, j)] &&
               L.join(img[i], img[j]) == img[O6.join(i, j)];
      if (ok) return std::array<Elem, 6>{img[0], x, y, o[x], o[y], img[5]};
    }
  return std::nullopt;
}

std::optional<std::pair<Elem, Elem>> nonorthomodularity_pair(const FiniteOrthoLattice& L) {
  const auto& o = L.ortho_table();
  auto inner = [&](Elem e) { return e != L.bottom() && e != L.top(); };
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      if (inner(a) && inner(b) && L.lt(o[a], b) && L.meet(a, b) == L.bottom())
        return std::pair<Elem, Elem>{a, b};
  return std::nullopt;
}

FiniteOrthoLattice boolean_lattice(std::size_t atoms) {
  const std::size_t full = (std::size_t{1} << atoms) - 1;
  std::vector<std::size_t> masks(full + 1);
  for (std::size_t m = 0; m <= full; ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
    return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
  });
  const std::size_t n = masks.size();
  std::vector<std::string> labels;
  for (std::size_t m : masks) {
    if (m == 0)
      labels.push_back("0");
    else if (m == full)
      labels.push_back("1");
    else {
      std::string s;
      for (std::size_t i = 0; i < atoms; ++i)
        if (m >> i & 1) s += static_cast<char>('a' + i);
      labels.push_back(s);
    }
  }
  std::vector<std::uint8_t> leq(n * n);
  ElemMap ortho(n);
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = 0; j < n; ++j) leq[i * n + j] = (masks[i] & ~masks[j]) == 0;
    ortho[i] =
        static_cast<Elem>(std::find(masks.begin(), masks.end(), full & ~masks[i]) - masks.begin());
  }
  return FiniteOrthoLattice::from_order("B" + std::to_string(atoms), std::move(labels),
                                        std::move(leq), std::move(ortho));
}

namespace {

FiniteOrthoLattice mo_lattice(std::size_t pairs) {
  std::vector<std::string> labels{"0"};
  for (std::size_t i = 0; i < pairs; ++i) {
    std::string a(1, static_cast<char>('a' + i));
    labels.push_back(a);
    labels.push_back(a + "p");
  }
  labels.push_back("1");
  const std::size_t n = labels.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  ElemMap ortho(n);
  for (Elem i = 0; i < n; ++i) {
    leq[i * n + i] = 1;
    leq[0 * n + i] = 1;
    leq[i * n + (n - 1)] = 1;
  }
  ortho[0] = n - 1;
  ortho[n - 1] = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    ortho[1 + 2 * i] = 2 + 2 * i;
    ortho[2 + 2 * i] = 1 + 2 * i;
  }
  return FiniteOrthoLattice::from_order("MO" + std::to_string(pairs), std::move(labels),
                                        std::move(leq), std::move(ortho));
}

FiniteOrthoLattice o6_lattice() {
  LatticeSpec spec;
  spec.name = "O6";
  spec.elements = {"0", "x", "y", "yp", "xp", "1"};
  spec.covers = {{"0", "x"}, {"x", "y"}, {"y", "1"}, {"0", "yp"}, {"yp", "xp"}, {"xp", "1"}};
  spec.ortho =
      std::vector<std::pair<std::string, std::string>>{{"0", "1"}, {"x", "xp"}, {"y", "yp"}};
  return build_lattice(spec);
}

}  // namespace

FiniteOrthoLattice chain_lattice(std::size_t n) {
  if (n < 2) throw InvalidSpec("a chain needs at least two elements");
  std::vector<std::string> labels{"0"};
  for (std::size_t i = 1; i + 1 < n; ++i)
    labels.push_back(n == 3 ? std::string("m") : "m" + std::to_string(i));
  labels.push_back("1");
  std::vector<std::uint8_t> leq(n * n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) leq[i * n + j] = i <= j;
  return FiniteOrthoLattice::from_order("chain" + std::to_string(n), std::move(labels),
                                        std::move(leq), std::nullopt);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"B1", "B2", "B3", "B4", "O6", "MO2", "MO3"};
  return names;
}

FiniteOrthoLattice catalog(std::string_view name) {
  if (name == "O6") return o6_lattice();
  if (name == "MO2") return mo_lattice(2);
  if (name == "MO3") return mo_lattice(3);
  if (name.size() == 2 && name[0] == 'B' && name[1] >= '1' && name[1] <= '4')
    return boolean_lattice(static_cast<std::size_t>(name[1] - '0'));
  throw UnknownCatalogName(std::string(name));
}

}  // namespace fourneg

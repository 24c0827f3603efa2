#include "fourneg/internal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "fourneg/errors.hpp"
#include "fourneg/negation.hpp"
#include "fourneg/residuation.hpp"

namespace fourneg {

std::string to_string(Flavor f) { return f == Flavor::Bullet ? "bullet" : "circ"; }
std::string to_string(Side s) { return s == Side::Outer ? "outer" : "inner"; }

namespace {

void require_class(const FiniteOrthoLattice& host, const ElemMap& neg, Flavor f) {
  const std::string need =
      f == Flavor::Bullet ? "coquasiintuitionistic-algebra" : "quasiintuitionistic-algebra";
  const auto cls = classify(host, neg);
  if (std::find(cls.begin(), cls.end(), need) == cls.end())
    throw WrongAlgebraClass("(" + host.name() + ", negation) is not a " + need);
}

FiniteOrthoLattice checked_lattice(std::string name, std::vector<std::string> labels,
                                   std::vector<std::uint8_t> leq, ElemMap ortho) {
  try {
    return FiniteOrthoLattice::from_order(std::move(name), std::move(labels), std::move(leq),
                                          std::move(ortho));
  } catch (const Error& e) {
    throw Error(std::string("internal lattice construction failed: ") + e.what(), false);
  }
}

std::string suffix(Flavor f) { return f == Flavor::Bullet ? "_**" : "_@@"; }

}  // namespace

InternalLattice internal_lattice(const FiniteOrthoLattice& host, const ElemMap& neg, Flavor f) {
  require_class(host, neg, f);
  std::vector<Elem> carrier;
  for (Elem x = 0; x < host.size(); ++x)
    if (neg[neg[x]] == x) carrier.push_back(x);
  const std::size_t m = carrier.size();
  std::vector<Elem> pos(host.size(), m);
  for (std::size_t i = 0; i < m; ++i) pos[carrier[i]] = i;

  std::vector<std::string> labels;
  std::vector<std::uint8_t> leq(m * m);
  ElemMap ortho(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(host.label(carrier[i]));
    for (std::size_t j = 0; j < m; ++j) leq[i * m + j] = host.leq(carrier[i], carrier[j]);
    ortho[i] = pos[neg[carrier[i]]];
    if (ortho[i] == m) throw Error("internal carrier is not closed under the negation", false);
  }
  return {f, std::move(carrier),
          checked_lattice(host.name() + suffix(f), std::move(labels), std::move(leq),
                          std::move(ortho))};
}

std::vector<SuiteItem> internal_suite(const FiniteOrthoLattice& host, const ElemMap& neg,
                                      const InternalLattice& I) {
  const auto& C = I.carrier;
  const auto& K = I.lattice;
  const bool bullet = I.flavor == Flavor::Bullet;
  std::vector<SuiteItem> out;
  auto item = [&](std::string id, std::string statement, std::string witness) {
    out.push_back({std::move(id), std::move(statement), witness.empty(), std::move(witness)});
  };
  auto in_carrier = [&](Elem x) { return std::binary_search(C.begin(), C.end(), x); };

  std::string w;
  for (Elem x : C)
    if (w.empty() && !in_carrier(neg[x])) w = "x=" + host.label(x);
  item("internal.closed", "x in K_nn => x' in K_nn", w);
  item("internal.bounds", "0, 1 in K_nn",
       in_carrier(host.bottom()) && in_carrier(host.top()) ? "" : "bounds missing");

  w.clear();
  for (Elem x = 0; x < host.size() && w.empty(); ++x) {
    const Elem nn = neg[neg[x]];
    if (!in_carrier(nn))
      w = "x=" + host.label(x) + " (image)";
    else if (bullet ? !host.leq(nn, x) : !host.leq(x, nn))
      w = "x=" + host.label(x);
  }
  item("internal.double-negation", bullet ? "x'' <= x and x'' in K_nn" : "x <= x'' and x'' in K_nn",
       w);

  std::string inherited, reclosed;
  for (Elem i = 0; i < C.size(); ++i)
    for (Elem j = 0; j < C.size(); ++j) {
      const Elem a = C[i], b = C[j];
      const std::string pair = "a=" + host.label(a) + " b=" + host.label(b);
      const Elem inh = bullet ? C[K.join(i, j)] : C[K.meet(i, j)];
      const Elem rec = bullet ? C[K.meet(i, j)] : C[K.join(i, j)];
      const Elem host_op = bullet ? host.join(a, b) : host.meet(a, b);
      const Elem host_re = bullet ? neg[neg[host.meet(a, b)]] : neg[neg[host.join(a, b)]];
      if (inherited.empty() && inh != host_op) inherited = pair;
      if (reclosed.empty() && rec != host_re) reclosed = pair;
    }
  item("internal.inherited", bullet ? "join is the host join" : "meet is the host meet", inherited);
  item("internal.reclosed", bullet ? "meet is (a & b)''" : "join is (a | b)''", reclosed);
  return out;
}

SubclopInternal subclop_internal(const DaseinCache& D, Flavor f, std::size_t bound) {
  const auto& P = D.presheaf();
  const bool bullet = f == Flavor::Bullet;
  auto neg = [&](std::uint64_t s) { return bullet ? D.bullet(s) : D.circ(s); };
  std::vector<std::uint64_t> carrier;
  std::string violation;
  std::uint64_t count = 0;
  visit_subclop(P, bound, [&](std::uint64_t s) {
    ++count;
    const std::uint64_t nn = neg(neg(s));
    if (nn == s) carrier.push_back(s);
    const bool law = bullet ? (nn & ~s) == 0 : (s & ~nn) == 0;
    if (violation.empty() && (!law || neg(neg(nn)) != nn))
      violation = "double negation law fails at S=" + P.format({s, P.id()});
  });
  std::sort(carrier.begin(), carrier.end(),
            [&](std::uint64_t a, std::uint64_t b) { return subclop_before(P, a, b); });

  const std::size_t m = carrier.size();
  std::unordered_map<std::uint64_t, Elem> pos;
  for (Elem i = 0; i < m; ++i) pos.emplace(carrier[i], i);
  auto index = [&](std::uint64_t s) {
    auto it = pos.find(s);
    if (it == pos.end())
      throw Error("internal carrier is not closed: " + P.format({s, P.id()}), false);
    return it->second;
  };
  std::vector<std::string> labels;
  std::vector<std::uint8_t> leq(m * m);
  ElemMap ortho(m);
  for (Elem i = 0; i < m; ++i) {
    labels.push_back(P.format({carrier[i], P.id()}));
    for (Elem j = 0; j < m; ++j) leq[i * m + j] = (carrier[i] & ~carrier[j]) == 0;
    ortho[i] = index(neg(carrier[i]));
  }
  SubclopInternal out{f, carrier,
                      checked_lattice("Sub_clop(" + P.base().name() + ")" + suffix(f),
                                      std::move(labels), std::move(leq), std::move(ortho)),
                      count, violation};
  const auto& K = out.lattice;
  for (Elem i = 0; i < m && out.violation.empty(); ++i)
    for (Elem j = 0; j < m && out.violation.empty(); ++j) {
      const std::uint64_t a = carrier[i], b = carrier[j];
      const std::uint64_t inh = bullet ? (a | b) : (a & b);
      const std::uint64_t rec = bullet ? neg(neg(a & b)) : neg(neg(a | b));
      const Elem got_inh = bullet ? K.join(i, j) : K.meet(i, j);
      const Elem got_rec = bullet ? K.meet(i, j) : K.join(i, j);
      if (carrier[got_inh] != inh || carrier[got_rec] != rec)
        out.violation = "internal operations differ at " + K.label(i) + " , " + K.label(j);
    }
  return out;
}

EpsQuotient quotient_eps(const DaseinCache& D, Side side, std::size_t bound) {
  const auto& P = D.presheaf();
  const auto& L = P.base();
  const bool outer = side == Side::Outer;
  auto eps = [&](std::uint64_t s) { return outer ? D.eps_outer(s) : D.eps_inner(s); };
  auto neg = [&](std::uint64_t s) { return outer ? D.bullet(s) : D.circ(s); };

  struct Cls {
    std::uint64_t rep;
    std::uint64_t size;
    Elem neg_eps;
  };
  std::map<Elem, Cls> classes;
  std::string violation;
  visit_subclop(P, bound, [&](std::uint64_t s) {
    const Elem e = eps(s), ne = eps(neg(s));
    auto [it, fresh] = classes.try_emplace(e, Cls{s, 0, ne});
    ++it->second.size;
    if (!fresh) {
      if (subclop_before(P, s, it->second.rep)) it->second.rep = s;
      if (violation.empty() && it->second.neg_eps != ne)
        violation = "negation is not constant on the class of " + P.format({s, P.id()});
    }
  });

  std::vector<Elem> order;
  for (const auto& [e, c] : classes) order.push_back(e);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return subclop_before(P, classes.at(a).rep, classes.at(b).rep);
  });
  const std::size_t m = order.size();
  std::map<Elem, Elem> pos;
  for (Elem i = 0; i < m; ++i) pos[order[i]] = i;

  EpsQuotient q{
      side, {}, order, {}, FiniteOrthoLattice::from_order("", {"0"}, {1}, std::nullopt), violation};
  std::vector<std::string> labels;
  std::vector<std::uint8_t> leq(m * m);
  ElemMap ortho(m);
  for (Elem i = 0; i < m; ++i) {
    const Cls& c = classes.at(order[i]);
    q.reps.push_back(c.rep);
    q.class_size.push_back(c.size);
    labels.push_back("[" + P.format({c.rep, P.id()}) + "]");
    for (Elem j = 0; j < m; ++j) leq[i * m + j] = L.leq(order[i], order[j]);
    auto it = pos.find(c.neg_eps);
    if (it == pos.end()) throw Error("quotient negation leaves the quotient", false);
    ortho[i] = it->second;
  }
  q.lattice = checked_lattice("Sub_clop(" + L.name() + ")/eps_" + to_string(side),
                              std::move(labels), std::move(leq), std::move(ortho));
  // ε° preserves meets and ε∨ preserves joins, so these quotient operations are
  // computed on representatives.
  for (Elem i = 0; i < m && q.violation.empty(); ++i)
    for (Elem j = 0; j < m && q.violation.empty(); ++j) {
      const std::uint64_t a = q.reps[i], b = q.reps[j];
      const bool ok = outer ? q.eps[q.lattice.meet(i, j)] == eps(a & b)
                            : q.eps[q.lattice.join(i, j)] == eps(a | b);
      if (!ok)
        q.violation =
            "quotient operation differs at " + q.lattice.label(i) + " , " + q.lattice.label(j);
    }
  return q;
}

namespace {

struct Shape {
  std::size_t height, depth, lower_covers, upper_covers, below, above;
  auto operator<=>(const Shape&) const = default;
};

std::vector<Shape> shapes(const FiniteOrthoLattice& L) {
  const std::size_t n = L.size();
  std::vector<Shape> s(n);
  std::vector<Elem> by_below(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (L.leq(y, x)) ++s[x].below;
      if (L.leq(x, y)) ++s[x].above;
    }
    by_below[x] = x;
  }
  for (auto [lo, hi] : L.hasse_covers()) {
    ++s[hi].lower_covers;
    ++s[lo].upper_covers;
  }
  // Elements with fewer elements below come first, so heights settle in one pass.
  std::sort(by_below.begin(), by_below.end(),
            [&](Elem a, Elem b) { return s[a].below < s[b].below; });
  for (Elem x : by_below)
    for (Elem y = 0; y < n; ++y)
      if (L.lt(y, x)) s[x].height = std::max(s[x].height, s[y].height + 1);
  for (auto it = by_below.rbegin(); it != by_below.rend(); ++it)
    for (Elem y = 0; y < n; ++y)
      if (L.lt(*it, y)) s[*it].depth = std::max(s[*it].depth, s[y].depth + 1);
  return s;
}

bool full_check(const FiniteOrthoLattice& A, const FiniteOrthoLattice& B, const ElemMap& f) {
  const std::size_t n = A.size();
  if (f[A.bottom()] != B.bottom() || f[A.top()] != B.top()) return false;
  for (Elem x = 0; x < n; ++x) {
    if (f[A.ortho(x)] != B.ortho(f[x])) return false;
    for (Elem y = 0; y < n; ++y)
      if (A.leq(x, y) != B.leq(f[x], f[y]) || f[A.meet(x, y)] != B.meet(f[x], f[y]) ||
          f[A.join(x, y)] != B.join(f[x], f[y]))
        return false;
  }
  return true;
}

}  // namespace

std::optional<ElemMap> ortho_iso(const FiniteOrthoLattice& A, const FiniteOrthoLattice& B) {
  if (A.size() > 64 || B.size() > 64) throw TooLarge("ortho_iso operand size", 64);
  if (A.size() != B.size() || !A.has_ortho() || !B.has_ortho()) return std::nullopt;
  const std::size_t n = A.size();
  const auto sa = shapes(A), sb = shapes(B);
  {
    auto ma = sa, mb = sb;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) return std::nullopt;
  }
  std::vector<Elem> order(n);
  for (Elem x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return sa[a].height < sa[b].height; });

  constexpr Elem kNone = static_cast<Elem>(-1);
  ElemMap f(n, kNone), g(n, kNone);
  std::vector<Elem> mapped;

  auto consistent = [&](Elem x, Elem y) {
    if (sa[x] != sb[y] || g[y] != kNone) return false;
    for (Elem z : mapped)
      if (A.leq(x, z) != B.leq(y, f[z]) || A.leq(z, x) != B.leq(f[z], y)) return false;
    return true;
  };
  auto assign = [&](Elem x, Elem y) {
    f[x] = y;
    g[y] = x;
    mapped.push_back(x);
  };
  auto unassign = [&](Elem x) {
    g[f[x]] = kNone;
    f[x] = kNone;
    mapped.pop_back();
  };

  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    while (k < n && f[order[k]] != kNone) ++k;
    if (k == n) return full_check(A, B, f);
    const Elem x = order[k], xo = A.ortho(x);
    for (Elem y = 0; y < n; ++y) {
      if (!consistent(x, y)) continue;
      assign(x, y);
      const Elem yo = B.ortho(y);
      if (f[xo] == yo) {
        if (search(k + 1)) return true;
      } else if (f[xo] == kNone && consistent(xo, yo)) {
        assign(xo, yo);
        if (search(k + 1)) return true;
        unassign(xo);
      }
      unassign(x);
    }
    return false;
  };
  if (search(0)) return f;
  return std::nullopt;
}

OmlCondition internal_oml_condition(const FiniteOrthoLattice& host, const ElemMap& neg, Flavor f) {
  require_class(host, neg, f);
  const Elem zero = host.bottom(), one = host.top();
  for (Elem x = 0; x < host.size(); ++x) {
    if (x == zero || x == one) continue;
    for (Elem y = 0; y < host.size(); ++y) {
      if (y == zero || y == one || neg[neg[y]] == neg[x]) continue;
      const bool hit = f == Flavor::Bullet ? host.leq(neg[x], y) && neg[host.meet(x, y)] == one
                                           : host.leq(y, neg[x]) && neg[host.join(x, y)] == zero;
      if (hit) return {false, "x=" + host.label(x) + " y=" + host.label(y)};
    }
  }
  return {true, ""};
}

BridgeReport orthomodularity_bridge(const SubclopAlgebra& A) {
  const auto& K = A.lattice();
  const auto& P = A.presheaf();
  const DaseinCache D(A.presheaf_ptr());
  BridgeReport r;
  const auto c1 = internal_oml_condition(K, bullet_table(A), Flavor::Bullet);
  const auto c2 = internal_oml_condition(K, circ_table(A), Flavor::Circ);
  r.holds[0] = c1.holds;
  r.witness[0] = c1.witness;
  r.holds[1] = c2.holds;
  r.witness[1] = c2.witness;
  const auto ib = subclop_internal(D, Flavor::Bullet, P.num_points());
  const auto ic = subclop_internal(D, Flavor::Circ, P.num_points());
  const auto ob = is_orthomodular(ib.lattice), oc = is_orthomodular(ic.lattice);
  const auto ol = is_orthomodular(P.base());
  auto pair_text = [](const FiniteOrthoLattice& L, const OrthomodularityResult& o) {
    return o.witness ? "x=" + L.label(o.witness->first) + " y=" + L.label(o.witness->second)
                     : std::string();
  };
  r.holds[2] = ob.holds;
  r.witness[2] = pair_text(ib.lattice, ob);
  r.holds[3] = oc.holds;
  r.witness[3] = pair_text(ic.lattice, oc);
  r.holds[4] = ol.holds;
  r.witness[4] = pair_text(P.base(), ol);
  r.agree = std::all_of(r.holds.begin(), r.holds.end(), [&](bool b) { return b == r.holds[0]; });
  return r;
}

DeMorganVerdict de_morgan_verdict(const FiniteOrthoLattice& host, const ElemMap& neg) {
  const auto dist = is_distributive(host);
  const auto p = axiom_profile(host, neg);
  DeMorganVerdict v;
  v.de_morgan = dist.holds && p[1] && p[2] && p[3];
  v.boolean = v.de_morgan && p[6] && p[7];
  if (!dist.holds) {
    const auto& w = *dist.witness;
    v.witness = "not distributive at x=" + host.label(w[0]) + " y=" + host.label(w[1]) +
                " z=" + host.label(w[2]);
    return v;
  }
  for (int k : {1, 2, 3, 6, 7}) {
    if (p[k]) continue;
    const auto r = check_axiom(host, neg, k);
    v.witness = "n" + std::to_string(k) + " fails at";
    for (Elem e : r.witness) v.witness += " " + host.label(e);
    break;
  }
  return v;
}

DeMorganVerdict subclop_de_morgan(const DaseinCache& D, Side side, std::size_t bound) {
  const auto& P = D.presheaf();
  const bool outer = side == Side::Outer;
  auto neg = [&](std::uint64_t s) { return outer ? D.bullet(s) : D.circ(s); };
  std::optional<std::uint64_t> bad;
  visit_subclop(P, bound, [&](std::uint64_t s) {
    if (neg(neg(s)) == s) return;
    if (!bad || subclop_before(P, s, *bad)) bad = s;
  });
  if (bad) {
    const std::uint64_t nn = neg(neg(*bad));
    return {false, false,
            "not an involution: S=" + P.format({*bad, P.id()}) + " S''=" + P.format({nn, P.id()})};
  }
  const SubclopAlgebra A(D.presheaf_ptr(), bound);
  return de_morgan_verdict(A.lattice(), outer ? bullet_table(A) : circ_table(A));
}

NogoReport nogo_report(const DaseinCache& D, std::size_t bound) {
  NogoReport r{subclop_de_morgan(D, Side::Outer, bound), subclop_de_morgan(D, Side::Inner, bound),
               false, false, ""};
  r.consistent = r.bullet.de_morgan == r.bullet.boolean && r.circ.de_morgan == r.circ.boolean;
  r.excluded = !r.bullet.de_morgan && !r.circ.de_morgan;
  auto tf = [](bool b) { return b ? "true" : "false"; };
  const bool dm = r.bullet.de_morgan || r.circ.de_morgan;
  const bool bo = r.bullet.boolean || r.circ.boolean;
  r.summary = std::string("De Morgan: ") + tf(dm) + "; boolean: " + tf(bo) + "; no-go: " +
              (!r.consistent ? "VIOLATED, flags differ"
               : r.excluded  ? "no De Morgan reduct, relevance semantics excluded"
                             : "degenerate case");
  return r;
}

GlivenkoReport mckinsey_tarski_check(const SubclopAlgebra& A) {
  const auto& K = A.lattice();
  const auto b = internal_lattice(K, A.brouwer_negation(), Flavor::Bullet);
  const auto h = internal_lattice(K, A.heyting_negation(), Flavor::Circ);
  return {b.carrier.size(), h.carrier.size(), is_distributive(b.lattice).holds,
          is_distributive(h.lattice).holds};
}

namespace {

// Carrier closed under `neg`, ordered by inclusion, with `join` its join.
template <class Neg, class Join>
bool boolean_by_atoms(const std::vector<std::uint64_t>& carrier, std::uint64_t top, Neg neg,
                      Join join) {
  std::vector<std::uint64_t> atoms;
  for (std::uint64_t x : carrier) {
    if (x == 0) continue;
    bool minimal = true;
    for (std::uint64_t y : carrier)
      if (y != 0 && y != x && (y & ~x) == 0) {
        minimal = false;
        break;
      }
    if (minimal) atoms.push_back(x);
  }
  if (atoms.size() >= 63 || carrier.size() != (std::uint64_t{1} << atoms.size())) return false;
  for (std::uint64_t x : carrier) {
    std::uint64_t j = 0;
    for (std::uint64_t a : atoms)
      if ((a & ~x) == 0) j = join(j, a);
    if (j != x) return false;
    if (join(x, neg(x)) != top) return false;
  }
  return true;
}

}  // namespace

GlivenkoReport subclop_glivenko(const SpectralPresheaf& P, std::size_t bound) {
  const std::uint64_t all = P.all_points();
  auto hneg = [&](std::uint64_t s) {
    std::uint64_t r = 0;
    for (std::size_t p = 0; p < P.num_points(); ++p)
      if (((P.below_mask(p) | std::uint64_t{1} << p) & s) == 0) r |= std::uint64_t{1} << p;
    return r;
  };
  auto bneg = [&](std::uint64_t s) { return P.restriction_closure(all & ~s); };
  std::vector<std::uint64_t> hreg, breg;
  visit_subclop(P, bound, [&](std::uint64_t s) {
    if (hneg(hneg(s)) == s) hreg.push_back(s);
    if (bneg(bneg(s)) == s) breg.push_back(s);
  });
  const bool b =
      boolean_by_atoms(breg, all, bneg, [](std::uint64_t x, std::uint64_t y) { return x | y; });
  const bool h = boolean_by_atoms(
      hreg, all, hneg, [&](std::uint64_t x, std::uint64_t y) { return hneg(hneg(x | y)); });
  return {breg.size(), hreg.size(), b, h};
}

ThetaCheck theta_check(const FiniteOrthoLattice& C, const FiniteOrthoLattice& B,
                       const ElemMap& theta) {
  const std::size_t n = C.size();
  if (theta.size() != n || B.size() != n) return {false, false, "size mismatch"};
  for (Elem t : theta)
    if (t >= n) return {false, false, "map leaves the target"};
  for (Elem x = 0; x < n; ++x)
    if (theta[C.ortho(x)] != B.ortho(theta[x]))
      return {false, false, "Theta(x') != Theta(x)' at x=" + C.label(x)};
  std::vector<char> hit(n, 0);
  for (Elem t : theta) hit[t] = 1;
  if (std::count(hit.begin(), hit.end(), 1) != static_cast<long>(n))
    return {true, false, "not a bijection"};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (C.leq(x, y) != B.leq(theta[x], theta[y]))
        return {true, false, "order not preserved at x=" + C.label(x) + " y=" + C.label(y)};
  return {true, true, ""};
}

}  // namespace fourneg

#include "fourneg/logic.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <functional>
#include <unordered_set>

#include "fourneg/daseinisation.hpp"
#include "fourneg/errors.hpp"
#include "fourneg/residuation.hpp"

namespace fourneg {

std::string to_string(Logic l) {
  switch (l) {
    case Logic::CoQInt: return "coQInt";
    case Logic::QInt: return "QInt";
    case Logic::BiQInt: return "biQInt";
    case Logic::Akchurin: return "Akchurin";
  }
  return "?";
}

Logic parse_logic(std::string_view text) {
  std::string s(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "coqint") return Logic::CoQInt;
  if (s == "qint") return Logic::QInt;
  if (s == "biqint") return Logic::BiQInt;
  if (s == "akchurin") return Logic::Akchurin;
  throw InvalidSpec("unknown logic '" + std::string(text) +
                    "' (expected coqint, qint, biqint or akchurin)");
}

Signature signature_of(Logic l) {
  switch (l) {
    case Logic::CoQInt: return {false, true, false, false};
    case Logic::QInt: return {true, false, false, false};
    case Logic::BiQInt: return {true, true, false, false};
    case Logic::Akchurin: return {true, true, true, true};
  }
  return {};
}

namespace {

void add_signature(const Formula& f, Signature& s) {
  switch (f.op) {
    case Op::QNeg: s.qneg = true; break;
    case Op::CqNeg: s.cqneg = true; break;
    case Op::HNeg:
    case Op::Imp: s.imp = true; break;
    case Op::BNeg:
    case Op::Coimp: s.coimp = true; break;
    default: break;
  }
  if (f.a) add_signature(*f.a, s);
  if (f.b) add_signature(*f.b, s);
}

}  // namespace

Signature signature_of(const Formula& f) {
  Signature s;
  add_signature(f, s);
  return s;
}

Signature signature_of(const Sequent& s) {
  Signature out;
  add_signature(*s.lhs, out);
  add_signature(*s.rhs, out);
  return out;
}

bool within(const Signature& s, const Signature& allowed) {
  return (!s.qneg || allowed.qneg) && (!s.cqneg || allowed.cqneg) && (!s.imp || allowed.imp) &&
         (!s.coimp || allowed.coimp);
}

std::string to_string(const Signature& s) {
  std::string out = "& | T F";
  if (s.qneg) out += " @";
  if (s.cqneg) out += " *";
  if (s.imp) out += " -> !";
  if (s.coimp) out += " -< ?";
  return out;
}

Signature AlgebraModel::designated() const {
  return {qneg.has_value(), cqneg.has_value(), imp.has_value(), coimp.has_value()};
}

bool ModelClass::models(Logic l) const {
  switch (l) {
    case Logic::CoQInt: return coquasi;
    case Logic::QInt: return quasi;
    case Logic::BiQInt: return quasi && coquasi;
    case Logic::Akchurin: return quasi && coquasi && heyting && brouwer;
  }
  return false;
}

ModelClass classify_model(const AlgebraModel& M) {
  const FiniteOrthoLattice& L = *M.lattice;
  const std::size_t n = L.size();
  ModelClass c;
  c.distributive = is_distributive(L).holds;
  if (c.distributive) c.tags.push_back("distributive");
  if (M.qneg) {
    c.qneg_profile = axiom_profile(L, *M.qneg);
    const auto& p = c.qneg_profile;
    c.qneg_antitone = p[1];
    c.quasi = c.distributive && p[1] && p[2] && p[6];
    c.intuitionistic = p[4];
    if (c.quasi) c.tags.push_back("@ quasiintuitionistic");
    if (c.intuitionistic) c.tags.push_back("@ n4");
  }
  if (M.cqneg) {
    c.cqneg_profile = axiom_profile(L, *M.cqneg);
    const auto& p = c.cqneg_profile;
    c.cqneg_antitone = p[1];
    c.coquasi = c.distributive && p[1] && p[3] && p[7];
    c.cointuitionistic = p[5];
    if (c.coquasi) c.tags.push_back("* coquasiintuitionistic");
    if (c.cointuitionistic) c.tags.push_back("* n5");
  }
  if (M.imp) {
    const auto& t = *M.imp;
    c.heyting = true;
    for (Elem y = 0; y < n && c.heyting; ++y)
      for (Elem z = 0; z < n && c.heyting; ++z)
        for (Elem x = 0; x < n; ++x)
          if (L.leq(L.meet(x, y), z) != L.leq(x, t[y * n + z])) {
            c.heyting = false;
            break;
          }
    if (c.heyting) c.tags.push_back("-> residual");
  }
  if (M.coimp) {
    const auto& t = *M.coimp;
    c.brouwer = true;
    for (Elem x = 0; x < n && c.brouwer; ++x)
      for (Elem y = 0; y < n && c.brouwer; ++y)
        for (Elem z = 0; z < n; ++z)
          if (L.leq(x, L.join(y, z)) != L.leq(t[x * n + y], z)) {
            c.brouwer = false;
            break;
          }
    if (c.brouwer) c.tags.push_back("-< residual");
  }
  for (Logic l : {Logic::CoQInt, Logic::QInt, Logic::BiQInt, Logic::Akchurin})
    if (c.models(l)) c.tags.push_back("model of " + to_string(l));
  return c;
}

AlgebraModel subclop_model(const SubclopAlgebra& A, std::string name) {
  AlgebraModel M;
  M.name = std::move(name);
  M.lattice = A.lattice_ptr();
  M.qneg = circ_table(A);
  M.cqneg = bullet_table(A);
  M.imp = A.heyting_table();
  M.coimp = A.coheyting_table();
  return M;
}

AlgebraModel lattice_model(std::shared_ptr<const FiniteOrthoLattice> L, std::string name) {
  AlgebraModel M;
  M.name = std::move(name);
  if (L->has_ortho()) {
    M.qneg = L->ortho_table();
    M.cqneg = L->ortho_table();
  }
  if (is_heyting(*L)) M.imp = heyting_table(*L);
  if (is_brouwer(*L)) M.coimp = brouwer_table(*L);
  M.lattice = std::move(L);
  return M;
}

AlgebraModel chain_model(std::size_t n) {
  auto L = std::make_shared<const FiniteOrthoLattice>(chain_lattice(n));
  AlgebraModel M;
  M.name = "chain:" + std::to_string(n);
  M.qneg = heyting_negation_table(*L);
  M.cqneg = brouwer_negation_table(*L);
  M.imp = heyting_table(*L);
  M.coimp = brouwer_table(*L);
  M.lattice = std::move(L);
  return M;
}

std::string format_assignment(const AlgebraModel& M, const Assignment& a) {
  std::string out;
  for (const auto& [name, e] : a) {
    if (!out.empty()) out += ", ";
    out += name + "=" + M.lattice->label(e);
  }
  return out;
}

namespace {

// Flat operation tables of one model.
class Ops {
 public:
  explicit Ops(const AlgebraModel& M)
      : M_(M), L_(*M.lattice), n_(L_.size()), bot_(L_.bottom()), top_(L_.top()) {}

  std::size_t size() const { return n_; }
  const FiniteOrthoLattice& lattice() const { return L_; }

  void require(Op op) const {
    switch (op) {
      case Op::QNeg:
        if (!M_.qneg) throw MissingConnective("@");
        break;
      case Op::CqNeg:
        if (!M_.cqneg) throw MissingConnective("*");
        break;
      case Op::HNeg:
      case Op::Imp:
        if (!M_.imp) throw MissingConnective("->");
        break;
      case Op::BNeg:
      case Op::Coimp:
        if (!M_.coimp) throw MissingConnective("-<");
        break;
      default: break;
    }
  }

  Elem constant(Op op) const { return op == Op::Bot ? bot_ : top_; }

  Elem un(Op op, Elem x) const {
    switch (op) {
      case Op::QNeg: return (*M_.qneg)[x];
      case Op::CqNeg: return (*M_.cqneg)[x];
      case Op::HNeg: return (*M_.imp)[x * n_ + bot_];
      case Op::BNeg: return (*M_.coimp)[top_ * n_ + x];
      default: return x;
    }
  }

  Elem bin(Op op, Elem x, Elem y) const {
    switch (op) {
      case Op::Meet: return L_.meet(x, y);
      case Op::Join: return L_.join(x, y);
      case Op::Imp: return (*M_.imp)[x * n_ + y];
      case Op::Coimp: return (*M_.coimp)[x * n_ + y];
      default: return x;
    }
  }

 private:
  const AlgebraModel& M_;
  const FiniteOrthoLattice& L_;
  std::size_t n_;
  Elem bot_, top_;
};

// Postfix program; `slot` indexes the variable list for Op::Var.
struct Instr {
  Op op;
  std::size_t slot;
};

void compile(const Formula& f, const std::vector<std::string>& vars, const Ops& ops,
             std::vector<Instr>& out) {
  if (f.op == Op::Var) {
    auto it = std::find(vars.begin(), vars.end(), f.name);
    if (it == vars.end()) throw InvalidSpec("no value assigned to variable " + f.name);
    out.push_back({Op::Var, static_cast<std::size_t>(it - vars.begin())});
    return;
  }
  ops.require(f.op);
  if (f.a) compile(*f.a, vars, ops, out);
  if (f.b) compile(*f.b, vars, ops, out);
  out.push_back({f.op, 0});
}

Elem run(const std::vector<Instr>& prog, const Ops& ops, const Elem* vals,
         std::vector<Elem>& stack) {
  stack.clear();
  for (const Instr& in : prog) {
    if (in.op == Op::Var) {
      stack.push_back(vals[in.slot]);
    } else if (in.op == Op::Bot || in.op == Op::Top) {
      stack.push_back(ops.constant(in.op));
    } else if (is_unary(in.op)) {
      stack.back() = ops.un(in.op, stack.back());
    } else {
      const Elem y = stack.back();
      stack.pop_back();
      stack.back() = ops.bin(in.op, stack.back(), y);
    }
  }
  return stack.back();
}

}  // namespace

Elem evaluate(const Formula& f, const AlgebraModel& M, const Assignment& a) {
  Ops ops(M);
  std::vector<std::string> names;
  std::vector<Elem> vals;
  for (const auto& [name, e] : a) {
    if (e >= ops.size()) throw InvalidSpec("value of " + name + " is not an element of the model");
    names.push_back(name);
    vals.push_back(e);
  }
  std::vector<Instr> prog;
  compile(f, names, ops, prog);
  std::vector<Elem> stack;
  return run(prog, ops, vals.data(), stack);
}

Validity sequent_valid(const Sequent& s, const AlgebraModel& M, std::size_t bound) {
  Ops ops(M);
  const std::vector<std::string> vars = variables(s);
  const std::size_t n = ops.size(), k = vars.size();
  const double count = std::pow(static_cast<double>(n), static_cast<double>(k));
  if (count > static_cast<double>(bound)) throw TooManyAssignments(count, bound);
  std::vector<Instr> lhs, rhs;
  compile(*s.lhs, vars, ops, lhs);
  compile(*s.rhs, vars, ops, rhs);
  const FiniteOrthoLattice& L = ops.lattice();
  std::vector<Elem> vals(k, 0), stack;
  std::uint64_t seen = 0;
  for (;;) {
    ++seen;
    if (!L.leq(run(lhs, ops, vals.data(), stack), run(rhs, ops, vals.data(), stack))) {
      Assignment counter;
      for (std::size_t i = 0; i < k; ++i) counter.emplace_back(vars[i], vals[i]);
      return {false, std::move(counter), seen};
    }
    std::size_t i = k;
    while (i > 0 && ++vals[i - 1] == n) vals[--i] = 0;
    if (i == 0) break;
  }
  return {true, {}, seen};
}

const std::vector<Schema>& axiom_schemas() {
  static const std::vector<Schema> schemas{
      {"a1", "p |- p"},
      {"a2", "p & q |- p"},
      {"a3", "p & q |- q"},
      {"a4", "p |- p | q"},
      {"a5", "q |- p | q"},
      {"a6", "p & (q | r) |- p & q | p & r"},
      {"a7", "**p |- p"},
      {"a8", "q |- p | *p"},
      {"a9", "p |- @@p"},
      {"a10", "p & @p |- q"},
      {"a11", "*T |- F"},
      {"a12", "T |- @F"},
      {"a13", "p |- T"},
      {"a14", "F |- p"},
      {"a17", "p & (p -> q) |- q"},
      {"a18", "q |- p | (q -< p)"},
  };
  return schemas;
}

std::vector<AxiomVerdict> axiom_suite(const AlgebraModel& M, const Signature& sig,
                                      std::size_t bound) {
  std::vector<AxiomVerdict> out;
  for (const Schema& a : axiom_schemas()) {
    const Sequent s = parse_sequent(a.text);
    if (!within(signature_of(s), sig)) continue;
    const Validity v = sequent_valid(s, M, bound);
    out.push_back({a.id, a.text, v.valid, v.valid ? "" : format_assignment(M, v.counter)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula universe

namespace {

std::uint64_t node_key(Op op, int a, int b) {
  return static_cast<std::uint64_t>(op) | (static_cast<std::uint64_t>(a + 1) << 8) |
         (static_cast<std::uint64_t>(b + 1) << 36);
}

}  // namespace

Universe::Universe(const Signature& sig, std::size_t depth, std::size_t vars, std::size_t bound) {
  static const char* const names[] = {"p", "q", "r", "s", "u", "v", "w"};
  if (vars == 0 || vars > std::size(names))
    throw InvalidSpec("universe variable count must be between 1 and " +
                      std::to_string(std::size(names)));
  for (std::size_t i = 0; i < vars; ++i) {
    vars_.push_back(names[i]);
    add(Op::Var, static_cast<int>(i), -1, 0);
  }
  add(Op::Bot, -1, -1, 0);
  add(Op::Top, -1, -1, 0);
  std::vector<Op> un, bin{Op::Meet, Op::Join};
  if (sig.qneg) un.push_back(Op::QNeg);
  if (sig.cqneg) un.push_back(Op::CqNeg);
  if (sig.imp) bin.push_back(Op::Imp);
  if (sig.coimp) bin.push_back(Op::Coimp);

  std::size_t prev_begin = 0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::size_t end = nodes_.size();
    const std::size_t fresh = end - prev_begin;
    const double grow =
        static_cast<double>(un.size() * fresh) +
        static_cast<double>(bin.size()) *
            (static_cast<double>(end) * end - static_cast<double>(prev_begin) * prev_begin);
    if (static_cast<double>(end) + grow > static_cast<double>(bound))
      throw TooLarge("formula universe", bound);
    for (Op op : un)
      for (std::size_t x = prev_begin; x < end; ++x) add(op, static_cast<int>(x), -1, d);
    for (Op op : bin)
      for (std::size_t x = 0; x < end; ++x)
        for (std::size_t y = 0; y < end; ++y)
          if (x >= prev_begin || y >= prev_begin)
            add(op, static_cast<int>(x), static_cast<int>(y), d);
    prev_begin = end;
  }
  cache_.resize(nodes_.size());
}

int Universe::add(Op op, int a, int b, std::size_t d) {
  const int id = static_cast<int>(nodes_.size());
  index_.emplace(node_key(op, a, b), id);
  nodes_.push_back({op, a, b});
  depth_.push_back(d);
  return id;
}

int Universe::find(Op op, int a, int b) const {
  auto it = index_.find(node_key(op, a, b));
  return it == index_.end() ? -1 : it->second;
}

int Universe::find(const Formula& f) const {
  switch (f.op) {
    case Op::Var: {
      auto it = std::find(vars_.begin(), vars_.end(), f.name);
      return it == vars_.end() ? -1 : find(Op::Var, static_cast<int>(it - vars_.begin()), -1);
    }
    case Op::Bot:
    case Op::Top: return find(f.op, -1, -1);
    // ¬ and ⌐ are stored through their definitions p⇒⊥ and ⊤⤙p.
    case Op::HNeg: {
      const int a = find(*f.a);
      return a < 0 ? -1 : find(Op::Imp, a, find(Op::Bot, -1, -1));
    }
    case Op::BNeg: {
      const int a = find(*f.a);
      return a < 0 ? -1 : find(Op::Coimp, find(Op::Top, -1, -1), a);
    }
    default: break;
  }
  const int a = find(*f.a);
  if (a < 0) return -1;
  if (is_unary(f.op)) return find(f.op, a, -1);
  const int b = find(*f.b);
  return b < 0 ? -1 : find(f.op, a, b);
}

FormulaPtr Universe::formula(std::size_t i) const {
  if (cache_[i]) return cache_[i];
  const Node& nd = nodes_[i];
  FormulaPtr f;
  if (nd.op == Op::Var)
    f = var(vars_[static_cast<std::size_t>(nd.a)]);
  else if (nd.op == Op::Bot)
    f = bot();
  else if (nd.op == Op::Top)
    f = top();
  else if (is_unary(nd.op))
    f = unary(nd.op, formula(static_cast<std::size_t>(nd.a)));
  else
    f = binary(nd.op, formula(static_cast<std::size_t>(nd.a)),
               formula(static_cast<std::size_t>(nd.b)));
  cache_[i] = f;
  return f;
}

// ---------------------------------------------------------------------------
// Value classes: each universe formula as its value vector over all
// assignments, deduplicated.

namespace {

struct Values {
  std::size_t n = 0, assignments = 0, vars = 0;
  std::vector<std::uint32_t> cls;   // per universe node
  std::vector<std::uint32_t> rep;   // first node of each class
  std::vector<std::uint16_t> pool;  // class vectors, stride `assignments`
  std::vector<std::uint8_t> leq;    // n*n

  std::size_t classes() const { return rep.size(); }
  const std::uint16_t* vec(std::size_t c) const { return pool.data() + c * assignments; }

  // First assignment where class a exceeds class b, or npos.
  std::size_t first_failure(std::size_t a, std::size_t b) const {
    const std::uint16_t* x = vec(a);
    const std::uint16_t* y = vec(b);
    for (std::size_t i = 0; i < assignments; ++i)
      if (!leq[static_cast<std::size_t>(x[i]) * n + y[i]]) return i;
    return std::string::npos;
  }

  Assignment assignment(const Universe& U, std::size_t index) const {
    Assignment a(vars);
    for (std::size_t j = vars; j-- > 0;) {
      a[j] = {U.vars()[j], index % n};
      index /= n;
    }
    return a;
  }
};

Values compute_values(const Universe& U, const AlgebraModel& M, std::uint64_t max_assignments) {
  Ops ops(M);
  Values V;
  V.n = ops.size();
  V.vars = U.vars().size();
  if (V.n > 65535) throw TooLarge("model size for universe evaluation", 65535);
  const double count = std::pow(static_cast<double>(V.n), static_cast<double>(V.vars));
  if (count > static_cast<double>(max_assignments))
    throw TooManyAssignments(count, max_assignments);
  const std::size_t A = static_cast<std::size_t>(count);
  V.assignments = A;
  V.leq.resize(V.n * V.n);
  for (Elem x = 0; x < V.n; ++x)
    for (Elem y = 0; y < V.n; ++y) V.leq[x * V.n + y] = ops.lattice().leq(x, y);

  std::vector<std::size_t> stride(V.vars, 1);
  for (std::size_t j = V.vars; j-- > 1;) stride[j - 1] = stride[j] * V.n;

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  std::vector<std::uint16_t> buf(A);
  V.cls.resize(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    const Universe::Node& nd = U.node(i);
    if (nd.op == Op::Var) {
      const std::size_t s = stride[static_cast<std::size_t>(nd.a)];
      for (std::size_t a = 0; a < A; ++a) buf[a] = static_cast<std::uint16_t>((a / s) % V.n);
    } else if (nd.op == Op::Bot || nd.op == Op::Top) {
      std::fill(buf.begin(), buf.end(), static_cast<std::uint16_t>(ops.constant(nd.op)));
    } else if (is_unary(nd.op)) {
      ops.require(nd.op);
      const std::uint16_t* x = V.vec(V.cls[static_cast<std::size_t>(nd.a)]);
      for (std::size_t a = 0; a < A; ++a) buf[a] = static_cast<std::uint16_t>(ops.un(nd.op, x[a]));
    } else {
      ops.require(nd.op);
      const std::uint16_t* x = V.vec(V.cls[static_cast<std::size_t>(nd.a)]);
      const std::uint16_t* y = V.vec(V.cls[static_cast<std::size_t>(nd.b)]);
      for (std::size_t a = 0; a < A; ++a)
        buf[a] = static_cast<std::uint16_t>(ops.bin(nd.op, x[a], y[a]));
    }
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint16_t v : buf) h = (h ^ v) * 1099511628211ULL;
    auto& bucket = buckets[h];
    std::uint32_t found = UINT32_MAX;
    for (std::uint32_t c : bucket)
      if (std::memcmp(V.vec(c), buf.data(), A * sizeof(std::uint16_t)) == 0) {
        found = c;
        break;
      }
    if (found == UINT32_MAX) {
      found = static_cast<std::uint32_t>(V.rep.size());
      V.rep.push_back(static_cast<std::uint32_t>(i));
      V.pool.insert(V.pool.end(), buf.begin(), buf.end());
      bucket.push_back(found);
    }
    V.cls[i] = found;
  }
  return V;
}

// Square bit matrix over value classes.
struct BitMatrix {
  std::size_t n = 0, words = 0;
  std::vector<std::uint64_t> bits;
  BitMatrix(std::size_t size, bool fill)
      : n(size), words((size + 63) / 64), bits(size * words, fill ? ~0ULL : 0ULL) {
    if (fill && n % 64 != 0)
      for (std::size_t r = 0; r < n; ++r) bits[r * words + words - 1] = (1ULL << (n % 64)) - 1;
  }
  std::uint64_t* row(std::size_t r) { return bits.data() + r * words; }
  const std::uint64_t* row(std::size_t r) const { return bits.data() + r * words; }
  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= 1ULL << (c % 64); }
};

// Up[a] = {b : a ≤ b at every assignment}, one pass per assignment.
BitMatrix validity_matrix(const Values& V) {
  const std::size_t C = V.classes(), n = V.n, W = (C + 63) / 64;
  BitMatrix up(C, true);
  std::vector<std::uint64_t> eq(n * W), upe(n * W);
  for (std::size_t a = 0; a < V.assignments; ++a) {
    std::fill(eq.begin(), eq.end(), 0);
    for (std::size_t c = 0; c < C; ++c) {
      const std::size_t e = V.vec(c)[a];
      eq[e * W + c / 64] |= 1ULL << (c % 64);
    }
    std::fill(upe.begin(), upe.end(), 0);
    for (std::size_t e = 0; e < n; ++e)
      for (std::size_t f = 0; f < n; ++f)
        if (V.leq[e * n + f])
          for (std::size_t w = 0; w < W; ++w) upe[e * W + w] |= eq[f * W + w];
    for (std::size_t c = 0; c < C; ++c) {
      const std::uint64_t* src = upe.data() + static_cast<std::size_t>(V.vec(c)[a]) * W;
      std::uint64_t* dst = up.row(c);
      for (std::size_t w = 0; w < W; ++w) dst[w] &= src[w];
    }
  }
  return up;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.n, false);
  for (std::size_t r = 0; r < m.n; ++r)
    for (std::size_t c = 0; c < m.n; ++c)
      if (m.get(r, c)) t.set(c, r);
  return t;
}

// First class in (x & y) \ z, or npos.
std::size_t first_outside(const std::uint64_t* x, const std::uint64_t* y, const std::uint64_t* z,
                          std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t d = x[w] & y[w] & ~z[w];
    if (d) return w * 64 + static_cast<std::size_t>(std::countr_zero(d));
  }
  return std::string::npos;
}

}  // namespace

std::vector<RuleVerdict> rule_soundness_suite(const AlgebraModel& M, std::size_t depth,
                                              std::size_t vars, std::size_t max_universe,
                                              std::uint64_t max_work) {
  const Signature sig = M.designated();
  const Universe U(sig, depth, vars, max_universe);
  const Values V = compute_values(U, M, kDefaultMaxAssignments);
  const std::size_t C = V.classes(), W = (C + 63) / 64;
  const double work = static_cast<double>(V.assignments) *
                          (static_cast<double>(V.n) * V.n + static_cast<double>(C)) * W +
                      static_cast<double>(C) * C * W;
  if (work > static_cast<double>(max_work)) throw TooLarge("rule-suite work", max_work);
  const ModelClass mc = classify_model(M);
  const BitMatrix up = validity_matrix(V);
  const BitMatrix down = transpose(up);
  const std::vector<std::uint64_t> all(W, ~0ULL);

  auto text = [&](std::size_t node) { return print(*U.formula(node)); };
  auto rep = [&](std::size_t c) { return text(V.rep[c]); };
  auto valid = [&](std::size_t x, std::size_t y) { return up.get(V.cls[x], V.cls[y]); };

  std::vector<RuleVerdict> out;
  auto verdict = [&](std::string id, std::string dir, bool expected) -> RuleVerdict& {
    out.push_back({std::move(id), std::move(dir), true, expected, 0, ""});
    return out.back();
  };

  // r1: p⊢q, q⊢r ⇒ p⊢r.
  {
    RuleVerdict& r = verdict("r1", "", true);
    for (std::size_t p = 0; p < C && r.holds; ++p)
      for (std::size_t q = 0; q < C && r.holds; ++q) {
        if (q == p || !up.get(p, q)) continue;
        ++r.instances;
        const std::size_t z = first_outside(up.row(q), all.data(), up.row(p), W);
        if (z != std::string::npos) {
          r.holds = false;
          r.witness = rep(p) + " |- " + rep(q) + " and " + rep(q) + " |- " + rep(z);
        }
      }
  }

  std::vector<std::size_t> meets, joins, qnegs, cqnegs, imps, coimps;
  for (std::size_t i = 0; i < U.size(); ++i) {
    switch (U.node(i).op) {
      case Op::Meet: meets.push_back(i); break;
      case Op::Join: joins.push_back(i); break;
      case Op::QNeg: qnegs.push_back(i); break;
      case Op::CqNeg: cqnegs.push_back(i); break;
      case Op::Imp: imps.push_back(i); break;
      case Op::Coimp: coimps.push_back(i); break;
      default: break;
    }
  }
  auto child = [&](std::size_t i, bool right) {
    return static_cast<std::size_t>(right ? U.node(i).b : U.node(i).a);
  };

  // r2: p⊢q, p⊢r ⇒ p⊢q∧r.   r3: p⊢r, q⊢r ⇒ p∨q⊢r.
  for (int which = 2; which <= 3; ++which) {
    RuleVerdict& r = verdict(which == 2 ? "r2" : "r3", "", true);
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t m : which == 2 ? meets : joins) {
      const std::size_t x = V.cls[child(m, false)], y = V.cls[child(m, true)], z = V.cls[m];
      if (!seen.insert((static_cast<std::uint64_t>(x) * C + y) * C + z).second) continue;
      ++r.instances;
      const BitMatrix& mat = which == 2 ? down : up;
      const std::size_t w = first_outside(mat.row(x), mat.row(y), mat.row(z), W);
      if (w != std::string::npos && r.holds) {
        r.holds = false;
        const std::string f = rep(w);
        r.witness = which == 2
                        ? f + " |- " + text(child(m, false)) + " and " + f + " |- " +
                              text(child(m, true)) + " but not " + f + " |- " + text(m)
                        : text(child(m, false)) + " |- " + f + " and " + text(child(m, true)) +
                              " |- " + f + " but not " + text(m) + " |- " + f;
      }
    }
  }

  // r4 / r5: p⊢q ⇒ ∼q⊢∼p (resp. ∘).
  auto contraposition = [&](const char* id, const std::vector<std::size_t>& negs, bool expected) {
    RuleVerdict& r = verdict(id, "", expected);
    for (std::size_t a : negs)
      for (std::size_t b : negs) {
        if (!valid(child(a, false), child(b, false))) continue;
        ++r.instances;
        if (!valid(b, a) && r.holds) {
          r.holds = false;
          r.witness = text(child(a, false)) + " |- " + text(child(b, false)) + " but not " +
                      text(b) + " |- " + text(a);
        }
      }
  };
  if (sig.cqneg) contraposition("r4", cqnegs, mc.cqneg_antitone);
  if (sig.qneg) contraposition("r5", qnegs, mc.qneg_antitone);

  // Biconditional rules: instances are pairs (lhs sequent, rhs sequent).
  struct Pair {
    std::size_t l1, l2, r1, r2;
  };
  auto biconditional = [&](const char* id, const std::vector<Pair>& inst, bool exp_lr,
                           bool exp_rl) {
    RuleVerdict& lr = verdict(id, "lhs=>rhs", exp_lr);
    const std::size_t at = out.size() - 1;
    verdict(id, "rhs=>lhs", exp_rl);
    for (const Pair& s : inst) {
      const bool l = valid(s.l1, s.l2), rr = valid(s.r1, s.r2);
      const std::string ls = text(s.l1) + " |- " + text(s.l2);
      const std::string rs = text(s.r1) + " |- " + text(s.r2);
      RuleVerdict& a = out[at];
      RuleVerdict& b = out[at + 1];
      if (l) {
        ++a.instances;
        if (!rr && a.holds) a.holds = false, a.witness = ls + " valid, " + rs + " not";
      }
      if (rr) {
        ++b.instances;
        if (!l && b.holds) b.holds = false, b.witness = rs + " valid, " + ls + " not";
      }
    }
    (void)lr;
  };

  const std::size_t F = static_cast<std::size_t>(U.find(Op::Bot, -1, -1));
  const std::size_t T = static_cast<std::size_t>(U.find(Op::Top, -1, -1));
  // r6: p∧q⊢r iff p⊢q⇒r.
  if (sig.imp) {
    std::vector<Pair> inst;
    for (std::size_t m : meets)
      for (std::size_t i : imps)
        if (child(i, false) == child(m, true))
          inst.push_back({m, child(i, true), child(m, false), i});
    biconditional("r6", inst, mc.heyting, mc.heyting);
  }
  // r7: p⊢q∨r iff p⤙q⊢r.
  if (sig.coimp) {
    std::vector<Pair> inst;
    for (std::size_t j : joins)
      for (std::size_t c : coimps)
        if (child(c, true) == child(j, false))
          inst.push_back({child(c, false), j, c, child(j, true)});
    biconditional("r7", inst, mc.brouwer, mc.brouwer);
  }
  // r8: p∧q⊢⊥ iff p⊢∘q.
  if (sig.qneg) {
    std::vector<Pair> inst;
    for (std::size_t m : meets) {
      const int o = U.find(Op::QNeg, U.node(m).b, -1);
      if (o >= 0) inst.push_back({m, F, child(m, false), static_cast<std::size_t>(o)});
    }
    const auto& p = mc.qneg_profile;
    biconditional("r8", inst, p[4] && p[18], p[6]);
  }
  // r9: ⊤⊢p∨q iff ∼p⊢q.
  if (sig.cqneg) {
    std::vector<Pair> inst;
    for (std::size_t j : joins) {
      const int s = U.find(Op::CqNeg, U.node(j).a, -1);
      if (s >= 0) inst.push_back({T, j, static_cast<std::size_t>(s), child(j, true)});
    }
    const auto& p = mc.cqneg_profile;
    biconditional("r9", inst, p[5] && p[17], p[7]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturation

std::uint64_t Saturation::size() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : rows_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool Saturation::contains(const Sequent& s) const {
  const int l = universe_->find(*s.lhs), r = universe_->find(*s.rhs);
  return l >= 0 && r >= 0 && derived(static_cast<std::size_t>(l), static_cast<std::size_t>(r));
}

std::vector<Sequent> Saturation::sequents(std::size_t limit) const {
  std::vector<Sequent> out;
  const std::size_t n = universe_->size();
  for (std::size_t i = 0; i < n && out.size() < limit; ++i)
    for (std::size_t j = 0; j < n && out.size() < limit; ++j)
      if (derived(i, j)) out.push_back({universe_->formula(i), universe_->formula(j)});
  return out;
}

Saturation saturate(Logic l, std::size_t depth, std::size_t vars, std::size_t max_universe) {
  Saturation S;
  S.logic_ = l;
  S.depth_ = depth;
  S.vars_ = vars;
  auto U = std::make_shared<const Universe>(signature_of(l), depth, vars, max_universe);
  S.universe_ = U;
  const std::size_t n = U->size(), W = (n + 63) / 64;
  S.words_ = W;
  S.rows_.assign(n * W, 0);
  std::vector<std::uint64_t>& D = S.rows_;
  bool changed = false;
  auto get = [&](std::size_t i, std::size_t j) { return (D[i * W + j / 64] >> (j % 64)) & 1U; };
  auto set = [&](std::size_t i, std::size_t j) {
    std::uint64_t& w = D[i * W + j / 64];
    const std::uint64_t bit = 1ULL << (j % 64);
    if (!(w & bit)) {
      w |= bit;
      changed = true;
    }
  };
  auto set_row_all = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) set(i, j);
  };

  const bool co = l != Logic::QInt, qu = l != Logic::CoQInt, ak = l == Logic::Akchurin;
  std::vector<std::size_t> meets, joins, qnegs, cqnegs, imps, coimps;
  for (std::size_t i = 0; i < n; ++i) {
    switch (U->node(i).op) {
      case Op::Meet: meets.push_back(i); break;
      case Op::Join: joins.push_back(i); break;
      case Op::QNeg: qnegs.push_back(i); break;
      case Op::CqNeg: cqnegs.push_back(i); break;
      case Op::Imp: imps.push_back(i); break;
      case Op::Coimp: coimps.push_back(i); break;
      default: break;
    }
  }
  auto A = [&](std::size_t i) { return static_cast<std::size_t>(U->node(i).a); };
  auto B = [&](std::size_t i) { return static_cast<std::size_t>(U->node(i).b); };
  const std::size_t F = static_cast<std::size_t>(U->find(Op::Bot, -1, -1));
  const std::size_t T = static_cast<std::size_t>(U->find(Op::Top, -1, -1));

  // Axiom instances.
  for (std::size_t i = 0; i < n; ++i) {
    set(i, i);  // a1
    set(i, T);  // a13
    set(F, i);  // a14
  }
  for (std::size_t m : meets) {
    set(m, A(m));  // a2
    set(m, B(m));  // a3
    // a6: p∧(q∨r) ⊢ (p∧q)∨(p∧r)
    if (U->node(B(m)).op == Op::Join) {
      const int m2 = U->find(Op::Meet, U->node(m).a, U->node(B(m)).a);
      const int m3 = U->find(Op::Meet, U->node(m).a, U->node(B(m)).b);
      if (m2 >= 0 && m3 >= 0) {
        const int j = U->find(Op::Join, m2, m3);
        if (j >= 0) set(m, static_cast<std::size_t>(j));
      }
    }
    // a10: p∧∘p ⊢ q
    if (qu && U->node(B(m)).op == Op::QNeg && A(B(m)) == A(m)) set_row_all(m);
    // a17: p∧(p⇒q) ⊢ q
    if (ak && U->node(B(m)).op == Op::Imp && A(B(m)) == A(m)) set(m, B(B(m)));
  }
  for (std::size_t j : joins) {
    set(A(j), j);  // a4
    set(B(j), j);  // a5
    // a8: q ⊢ p∨∼p
    if (co && U->node(B(j)).op == Op::CqNeg && A(B(j)) == A(j))
      for (std::size_t q = 0; q < n; ++q) set(q, j);
    // a18: q ⊢ p∨(q⤙p)
    if (ak && U->node(B(j)).op == Op::Coimp && B(B(j)) == A(j)) set(A(B(j)), j);
  }
  if (co) {
    for (std::size_t c : cqnegs)  // a7: ∼∼p ⊢ p
      if (U->node(A(c)).op == Op::CqNeg) set(c, A(A(c)));
    const int c = U->find(Op::CqNeg, static_cast<int>(T), -1);  // a11: ∼⊤ ⊢ ⊥
    if (c >= 0) set(static_cast<std::size_t>(c), F);
  }
  if (qu) {
    for (std::size_t c : qnegs)  // a9: p ⊢ ∘∘p
      if (U->node(A(c)).op == Op::QNeg) set(A(A(c)), c);
    const int c = U->find(Op::QNeg, static_cast<int>(F), -1);  // a12: ⊤ ⊢ ∘⊥
    if (c >= 0) set(T, static_cast<std::size_t>(c));
  }

  std::vector<std::vector<std::size_t>> imps_by_left(n), coimps_by_right(n);
  for (std::size_t i : imps) imps_by_left[A(i)].push_back(i);
  for (std::size_t c : coimps) coimps_by_right[B(c)].push_back(c);

  do {
    changed = false;
    ++S.rounds_;
    // r1: transitive closure.
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t* rk = D.data() + k * W;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k || !get(i, k)) continue;
        std::uint64_t* ri = D.data() + i * W;
        for (std::size_t w = 0; w < W; ++w) {
          const std::uint64_t merged = ri[w] | rk[w];
          if (merged != ri[w]) {
            ri[w] = merged;
            changed = true;
          }
        }
      }
    }
    // The closure is complete here; another round is needed only if a rule
    // below adds a sequent.
    changed = false;
    // r2: p⊢q, p⊢r ⇒ p⊢q∧r.
    for (std::size_t m : meets)
      for (std::size_t p = 0; p < n; ++p)
        if (get(p, A(m)) && get(p, B(m))) set(p, m);
    // r3: p⊢r, q⊢r ⇒ p∨q⊢r.
    for (std::size_t j : joins) {
      std::uint64_t* rj = D.data() + j * W;
      const std::uint64_t* ra = D.data() + A(j) * W;
      const std::uint64_t* rb = D.data() + B(j) * W;
      for (std::size_t w = 0; w < W; ++w) {
        const std::uint64_t merged = rj[w] | (ra[w] & rb[w]);
        if (merged != rj[w]) {
          rj[w] = merged;
          changed = true;
        }
      }
    }
    // r4 / r5: contraposition.
    if (co)
      for (std::size_t a : cqnegs)
        for (std::size_t b : cqnegs)
          if (get(A(a), A(b))) set(b, a);
    if (qu)
      for (std::size_t a : qnegs)
        for (std::size_t b : qnegs)
          if (get(A(a), A(b))) set(b, a);
    if (ak) {
      // r6: p∧q⊢r iff p⊢q⇒r.
      for (std::size_t m : meets)
        for (std::size_t i : imps_by_left[B(m)]) {
          if (get(m, B(i)))
            set(A(m), i);
          else if (get(A(m), i))
            set(m, B(i));
        }
      // r7: p⊢q∨r iff p⤙q⊢r.
      for (std::size_t j : joins)
        for (std::size_t c : coimps_by_right[A(j)]) {
          if (get(A(c), j))
            set(c, B(j));
          else if (get(c, B(j)))
            set(A(c), j);
        }
    }
  } while (changed);
  return S;
}

// ---------------------------------------------------------------------------
// Model bank, audit, countermodels

std::vector<BankModel> model_bank(std::size_t max_points) {
  std::vector<BankModel> bank;
  auto push = [&](AlgebraModel M) {
    ModelClass c = classify_model(M);
    bank.push_back({std::move(M), std::move(c)});
  };
  auto subclop = [&](const char* name) {
    auto L = std::make_shared<const FiniteOrthoLattice>(catalog(name));
    auto P = std::make_shared<const SpectralPresheaf>(L);
    SubclopAlgebra A(P, max_points);
    push(subclop_model(A, std::string("subclop:") + name));
  };
  subclop("O6");
  subclop("MO2");
  subclop("MO3");
  subclop("B2");
  push(chain_model(3));
  subclop("B3");
  for (const char* name : {"B1", "B2", "B3", "B4"})
    push(lattice_model(std::make_shared<const FiniteOrthoLattice>(catalog(name)),
                       std::string("catalog:") + name));
  return bank;
}

std::vector<AuditResult> soundness_audit(const Saturation& S, const std::vector<BankModel>& bank,
                                         std::uint64_t max_assignments) {
  std::vector<AuditResult> out;
  const Universe& U = S.universe();
  const std::size_t n = U.size();
  for (const BankModel& bm : bank) {
    if (!bm.cls.models(S.logic())) continue;
    const Values V = compute_values(U, bm.model, max_assignments);
    const std::size_t C = V.classes();
    std::vector<std::uint64_t> seen((C * C + 63) / 64, 0);
    AuditResult r{bm.model.name, true, 0, ""};
    for (std::size_t i = 0; i < n && r.sound; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!S.derived(i, j)) continue;
        const std::size_t a = V.cls[i], b = V.cls[j];
        if (a == b) continue;
        const std::size_t key = a * C + b;
        if ((seen[key / 64] >> (key % 64)) & 1U) continue;
        seen[key / 64] |= 1ULL << (key % 64);
        ++r.checked;
        const std::size_t at = V.first_failure(a, b);
        if (at != std::string::npos) {
          r.sound = false;
          r.witness = print(*U.formula(i)) + " |- " + print(*U.formula(j)) + " fails at " +
                      format_assignment(bm.model, V.assignment(U, at));
          break;
        }
      }
    out.push_back(std::move(r));
  }
  return out;
}

Logic minimal_logic(const Sequent& s) {
  const Signature g = signature_of(s);
  if (g.imp || g.coimp) return Logic::Akchurin;
  if (g.qneg && g.cqneg) return Logic::BiQInt;
  if (g.qneg) return Logic::QInt;
  return Logic::CoQInt;
}

CountermodelResult countermodel_search(const Sequent& s, Logic l,
                                       const std::vector<BankModel>& bank, std::size_t bound) {
  if (!within(signature_of(s), signature_of(l)))
    throw InvalidSpec("sequent uses connectives outside the signature of " + to_string(l));
  CountermodelResult r;
  for (const BankModel& bm : bank) {
    if (!bm.cls.models(l)) continue;
    Validity v;
    try {
      v = sequent_valid(s, bm.model, bound);
    } catch (const TooManyAssignments&) {
      r.scanned.push_back(bm.model.name + " (skipped: assignment bound)");
      continue;
    }
    r.scanned.push_back(bm.model.name);
    if (!v.valid) {
      r.model = bm.model.name;
      r.assignment = v.counter;
      r.assignment_text = format_assignment(bm.model, v.counter);
      return r;
    }
  }
  return r;
}

}  // namespace fourneg

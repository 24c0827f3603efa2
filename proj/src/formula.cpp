#include "fourneg/formula.hpp"

#include <algorithm>
#include <cctype>

#include "fourneg/errors.hpp"

namespace fourneg {

FormulaPtr var(std::string name) {
  return std::make_shared<const Formula>(Formula{Op::Var, std::move(name), nullptr, nullptr});
}
FormulaPtr bot() { return std::make_shared<const Formula>(Formula{Op::Bot, {}, nullptr, nullptr}); }
FormulaPtr top() { return std::make_shared<const Formula>(Formula{Op::Top, {}, nullptr, nullptr}); }
FormulaPtr unary(Op op, FormulaPtr a) {
  return std::make_shared<const Formula>(Formula{op, {}, std::move(a), nullptr});
}
FormulaPtr binary(Op op, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<const Formula>(Formula{op, {}, std::move(a), std::move(b)});
}

bool is_unary(Op op) {
  return op == Op::QNeg || op == Op::CqNeg || op == Op::HNeg || op == Op::BNeg;
}
bool is_binary(Op op) {
  return op == Op::Meet || op == Op::Join || op == Op::Imp || op == Op::Coimp;
}

std::string symbol(Op op) {
  switch (op) {
    case Op::QNeg: return "@";
    case Op::CqNeg: return "*";
    case Op::HNeg: return "!";
    case Op::BNeg: return "?";
    case Op::Meet: return "&";
    case Op::Join: return "|";
    case Op::Imp: return "->";
    case Op::Coimp: return "-<";
    case Op::Bot: return "F";
    case Op::Top: return "T";
    case Op::Var: return "var";
  }
  return "?";
}

bool same(const Formula& x, const Formula& y) {
  if (&x == &y) return true;
  if (x.op != y.op) return false;
  if (x.op == Op::Var) return x.name == y.name;
  if (is_unary(x.op)) return same(*x.a, *y.a);
  if (is_binary(x.op)) return same(*x.a, *y.a) && same(*x.b, *y.b);
  return true;
}

std::size_t depth(const Formula& f) {
  if (is_unary(f.op)) return 1 + depth(*f.a);
  if (is_binary(f.op)) return 1 + std::max(depth(*f.a), depth(*f.b));
  return 0;
}

namespace {

void collect(const Formula& f, std::vector<std::string>& out) {
  if (f.op == Op::Var) {
    if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
    return;
  }
  if (f.a) collect(*f.a, out);
  if (f.b) collect(*f.b, out);
}

int precedence(Op op) {
  switch (op) {
    case Op::Imp:
    case Op::Coimp: return 1;
    case Op::Join: return 2;
    case Op::Meet: return 3;
    default: return 4;
  }
}

void print_to(const Formula& f, int ctx, std::string& out) {
  switch (f.op) {
    case Op::Var: out += f.name; return;
    case Op::Bot: out += 'F'; return;
    case Op::Top: out += 'T'; return;
    default: break;
  }
  if (is_unary(f.op)) {
    out += symbol(f.op);
    print_to(*f.a, 4, out);
    return;
  }
  const int p = precedence(f.op);
  const bool wrap = p < ctx;
  if (wrap) out += '(';
  // & and | associate to the left, -> and -< to the right.
  const int left = p == 1 ? 2 : p;
  const int right = p == 1 ? 1 : p + 1;
  print_to(*f.a, left, out);
  out += ' ';
  out += symbol(f.op);
  out += ' ';
  print_to(*f.b, right, out);
  if (wrap) out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  FormulaPtr formula() { return implication(); }

  Sequent sequent() {
    FormulaPtr lhs = formula();
    skip();
    if (!starts("|-")) fail("'|-'");
    pos_ += 2;
    FormulaPtr rhs = formula();
    end();
    return {lhs, rhs};
  }

  void end() {
    skip();
    if (pos_ != s_.size()) fail("end of input");
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(pos_, expected); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool starts(std::string_view tok) const { return s_.substr(pos_, tok.size()) == tok; }

  FormulaPtr implication() {
    FormulaPtr lhs = join();
    skip();
    Op op;
    if (starts("->"))
      op = Op::Imp;
    else if (starts("-<"))
      op = Op::Coimp;
    else
      return lhs;
    pos_ += 2;
    return binary(op, lhs, implication());
  }

  FormulaPtr join() {
    FormulaPtr acc = meet();
    for (;;) {
      skip();
      if (!starts("|") || starts("|-")) return acc;
      ++pos_;
      acc = binary(Op::Join, acc, meet());
    }
  }

  FormulaPtr meet() {
    FormulaPtr acc = prefix();
    for (;;) {
      skip();
      if (!starts("&")) return acc;
      ++pos_;
      acc = binary(Op::Meet, acc, prefix());
    }
  }

  FormulaPtr prefix() {
    skip();
    if (pos_ >= s_.size()) fail("formula");
    const char c = s_[pos_];
    switch (c) {
      case '@': ++pos_; return unary(Op::QNeg, prefix());
      case '*': ++pos_; return unary(Op::CqNeg, prefix());
      case '!': ++pos_; return unary(Op::HNeg, prefix());
      case '?': ++pos_; return unary(Op::BNeg, prefix());
      case 'T': ++pos_; return top();
      case 'F': ++pos_; return bot();
      case '(': {
        ++pos_;
        FormulaPtr f = implication();
        skip();
        if (!starts(")")) fail("')'");
        ++pos_;
        return f;
      }
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && ((s_[pos_] >= 'a' && s_[pos_] <= 'z') ||
                                  (s_[pos_] >= '0' && s_[pos_] <= '9') || s_[pos_] == '_'))
        ++pos_;
      return var(std::string(s_.substr(start, pos_ - start)));
    }
    fail("atom, constant, prefix operator or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  collect(f, out);
  return out;
}

std::vector<std::string> variables(const Sequent& s) {
  std::vector<std::string> out;
  collect(*s.lhs, out);
  collect(*s.rhs, out);
  return out;
}

std::string print(const Formula& f) {
  std::string out;
  print_to(f, 1, out);
  return out;
}

std::string print(const Sequent& s) { return print(*s.lhs) + " |- " + print(*s.rhs); }

FormulaPtr parse_formula(std::string_view text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.end();
  return f;
}

Sequent parse_sequent(std::string_view text) { return Parser(text).sequent(); }

}  // namespace fourneg

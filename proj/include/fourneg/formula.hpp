#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fourneg {

// QNeg is ∘ (`@`), CqNeg is ∼ (`*`), HNeg is ¬ = p⇒⊥ (`!`), BNeg is ⌐ = ⊤⤙p (`?`).
enum class Op { Var, Bot, Top, Meet, Join, QNeg, CqNeg, HNeg, BNeg, Imp, Coimp };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op;
  std::string name;  // Var only
  FormulaPtr a, b;   // unary operand in a
};

FormulaPtr var(std::string name);
FormulaPtr bot();
FormulaPtr top();
FormulaPtr unary(Op op, FormulaPtr a);
FormulaPtr binary(Op op, FormulaPtr a, FormulaPtr b);

bool is_unary(Op op);
bool is_binary(Op op);
// ASCII symbol of a connective: "@", "*", "!", "?", "&", "|", "->", "-<".
std::string symbol(Op op);

bool same(const Formula& x, const Formula& y);
std::size_t depth(const Formula& f);
// Variables in order of first occurrence, without repeats.
std::vector<std::string> variables(const Formula& f);

struct Sequent {
  FormulaPtr lhs, rhs;
};

// Minimal parentheses under the grammar's precedence; parse(print(f)) = f.
std::string print(const Formula& f);
std::string print(const Sequent& s);

// Throw SyntaxError with the 0-based character position.
FormulaPtr parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

std::vector<std::string> variables(const Sequent& s);

}  // namespace fourneg

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fourneg {

// Base for every error the library raises. `input_error()` separates bad user
// input (CLI exit 2) from contract violations inside the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, bool input = true)
      : std::runtime_error(what), input_(input) {}
  bool input_error() const { return input_; }

 private:
  bool input_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class CyclicCovers : public Error {
 public:
  explicit CyclicCovers(const std::string& where)
      : Error("cover relation is cyclic through " + where) {}
};

class NotALattice : public Error {
 public:
  NotALattice(std::string x, std::string y, const std::string& missing)
      : Error("elements " + x + " and " + y + " have no unique " + missing),
        x_(std::move(x)),
        y_(std::move(y)) {}
  const std::string& x() const { return x_; }
  const std::string& y() const { return y_; }

 private:
  std::string x_, y_;
};

class NotAnOrthocomplementation : public Error {
 public:
  NotAnOrthocomplementation(int axiom, std::vector<std::string> witness)
      : Error(describe(axiom, witness)), axiom_(axiom), witness_(std::move(witness)) {}
  int axiom() const { return axiom_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  static std::string describe(int axiom, const std::vector<std::string>& w) {
    std::string s = "ortho table violates n" + std::to_string(axiom) + " at (";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i];
    return s + ")";
  }
  int axiom_;
  std::vector<std::string> witness_;
};

class NoOrthocomplementation : public Error {
 public:
  NoOrthocomplementation() : Error("lattice has no orthocomplementation") {}
};

class UnknownCatalogName : public Error {
 public:
  explicit UnknownCatalogName(const std::string& name)
      : Error("unknown catalog lattice '" + name + "'") {}
};

class UnknownElement : public Error {
 public:
  explicit UnknownElement(const std::string& label) : Error("unknown element '" + label + "'") {}
};

class NotHeyting : public Error {
 public:
  NotHeyting() : Error("lattice is not a Heyting algebra") {}
};

class NotBrouwer : public Error {
 public:
  NotBrouwer() : Error("lattice is not a Brouwer algebra") {}
};

class TrivialLattice : public Error {
 public:
  TrivialLattice() : Error("the two-element lattice has no contexts") {}
};

class ElementNotInContext : public Error {
 public:
  explicit ElementNotInContext(const std::string& label)
      : Error("element '" + label + "' is not in the context", false) {}
};

class PresheafMismatch : public Error {
 public:
  PresheafMismatch() : Error("subpresheaves belong to different presheaves", false) {}
};

class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, std::size_t bound)
      : Error(what + " exceeds the bound " + std::to_string(bound)), bound_(bound) {}
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

class WrongAlgebraClass : public Error {
 public:
  explicit WrongAlgebraClass(const std::string& what) : Error(what) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::string expected)
      : Error("syntax error at position " + std::to_string(position) + ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class MissingConnective : public Error {
 public:
  explicit MissingConnective(const std::string& name)
      : Error("model does not designate connective " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class TooManyAssignments : public Error {
 public:
  TooManyAssignments(double count, std::size_t bound)
      : Error("assignment count " + std::to_string(static_cast<long long>(count)) +
              " exceeds the bound " + std::to_string(bound)) {}
};

}  // namespace fourneg

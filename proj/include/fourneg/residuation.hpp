#pragma once

#include "fourneg/lattice.hpp"

namespace fourneg {

struct Residual {
  Elem value;
  bool adjoint;  // the candidate actually satisfies the adjunction at this pair
};

// y⇒z := ⋁{x : x∧y ≤ z}; adjoint iff (y⇒z)∧y ≤ z.
Residual heyting_implication(const FiniteOrthoLattice& L, Elem y, Elem z);
// x⤙y := ⋀{z : x ≤ y∨z}; adjoint iff x ≤ y∨(x⤙y).
Residual brouwer_coimplication(const FiniteOrthoLattice& L, Elem x, Elem y);

bool is_heyting(const FiniteOrthoLattice& L);
bool is_brouwer(const FiniteOrthoLattice& L);
bool is_skolem(const FiniteOrthoLattice& L);

// ¬x := x⇒0 and ⌐x := 1⤙x. Throw NotHeyting / NotBrouwer.
Elem heyting_negation(const FiniteOrthoLattice& L, Elem x);
Elem brouwer_negation(const FiniteOrthoLattice& L, Elem x);
ElemMap heyting_negation_table(const FiniteOrthoLattice& L);
ElemMap brouwer_negation_table(const FiniteOrthoLattice& L);

// Row-major n*n tables of the residual values (flags ignored).
std::vector<Elem> heyting_table(const FiniteOrthoLattice& L);
std::vector<Elem> brouwer_table(const FiniteOrthoLattice& L);

}  // namespace fourneg

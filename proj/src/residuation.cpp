#include "fourneg/residuation.hpp"

#include "fourneg/errors.hpp"

namespace fourneg {

Residual heyting_implication(const FiniteOrthoLattice& L, Elem y, Elem z) {
  Elem r = L.bottom();
  for (Elem x = 0; x < L.size(); ++x)
    if (L.leq(L.meet(x, y), z)) r = L.join(r, x);
  return {r, L.leq(L.meet(r, y), z)};
}

Residual brouwer_coimplication(const FiniteOrthoLattice& L, Elem x, Elem y) {
  Elem r = L.top();
  for (Elem z = 0; z < L.size(); ++z)
    if (L.leq(x, L.join(y, z))) r = L.meet(r, z);
  return {r, L.leq(x, L.join(y, r))};
}

bool is_heyting(const FiniteOrthoLattice& L) {
  for (Elem y = 0; y < L.size(); ++y)
    for (Elem z = 0; z < L.size(); ++z)
      if (!heyting_implication(L, y, z).adjoint) return false;
  return true;
}

bool is_brouwer(const FiniteOrthoLattice& L) {
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (!brouwer_coimplication(L, x, y).adjoint) return false;
  return true;
}

bool is_skolem(const FiniteOrthoLattice& L) { return is_heyting(L) && is_brouwer(L); }

Elem heyting_negation(const FiniteOrthoLattice& L, Elem x) {
  if (!is_heyting(L)) throw NotHeyting();
  return heyting_implication(L, x, L.bottom()).value;
}

Elem brouwer_negation(const FiniteOrthoLattice& L, Elem x) {
  if (!is_brouwer(L)) throw NotBrouwer();
  return brouwer_coimplication(L, L.top(), x).value;
}

ElemMap heyting_negation_table(const FiniteOrthoLattice& L) {
  if (!is_heyting(L)) throw NotHeyting();
  ElemMap out(L.size());
  for (Elem x = 0; x < L.size(); ++x) out[x] = heyting_implication(L, x, L.bottom()).value;
  return out;
}

ElemMap brouwer_negation_table(const FiniteOrthoLattice& L) {
  if (!is_brouwer(L)) throw NotBrouwer();
  ElemMap out(L.size());
  for (Elem x = 0; x < L.size(); ++x) out[x] = brouwer_coimplication(L, L.top(), x).value;
  return out;
}

std::vector<Elem> heyting_table(const FiniteOrthoLattice& L) {
  const std::size_t n = L.size();
  std::vector<Elem> t(n * n);
  for (Elem y = 0; y < n; ++y)
    for (Elem z = 0; z < n; ++z) t[y * n + z] = heyting_implication(L, y, z).value;
  return t;
}

std::vector<Elem> brouwer_table(const FiniteOrthoLattice& L) {
  const std::size_t n = L.size();
  std::vector<Elem> t(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) t[x * n + y] = brouwer_coimplication(L, x, y).value;
  return t;
}

}  // namespace fourneg

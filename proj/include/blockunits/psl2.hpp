#pragma once

#include "blockunits/brauer.hpp"
#include "blockunits/grouprep.hpp"

namespace blockunits::psl2 {

using brauer::BrauerTree;
using grouprep::CharacterTable;

// Generic ordinary character table of PSL(2,q) with class power maps.
// Classes are named by element order (identity first, orders ascending);
// characters are chi1, chi2, ... in ascending degree with Galois families
// contiguous.
CharacterTable character_table(long long q);

struct TreeBundle {
  BrauerTree principal;
  std::vector<BrauerTree> nonprincipal;
};

// Brauer trees of the defect-1 t-blocks (t odd prime, t != p, t^2 not
// dividing the group order). Non-principal trees are produced for even q
// when t divides q-1; they are the split trees, one per Galois class.
TreeBundle brauer_trees(long long q, long long t);

struct ExceptionalChoice {
  std::string chi;       // exceptional character with eta(g0^i) = sign*(z^i + z^-i)
  int sign;              // +1 when q = 1 mod 4, -1 when q = 3 mod 4
  std::string g0_class;  // class of the chosen element of order 2t
};

// The exceptional character of the principal t-block taking the values
// sign*(zeta_t^i + zeta_t^-i) on the powers of an order-2t element.
ExceptionalChoice burkhardt_exceptional(const CharacterTable& table,
                                        long long q, long long t);

}  // namespace blockunits::psl2

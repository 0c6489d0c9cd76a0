#pragma once

#include "norm1lat/cohomology.hpp"

namespace norm1lat {

// 0 -> left -> mid -> right -> 0.
struct ExactTriple {
  enum class Kind { FlabbyResolution, CoflabbyResolution, General };
  GLattice left, mid, right;
  LatticeMap inj, surj;
  Kind kind = Kind::General;
  // Subgroups whose coset lattices make up mid, in block order (resolutions only).
  std::vector<Subgroup> blocks;
};
const char* to_string(ExactTriple::Kind k);

// 0 -> Q -> P -> M -> 0 with P = sum over subgroup classes U of Z[G/U]^{rank M^U},
// each coset block sent to the orbit of a basis vector of M^U. Throws
// InternalError if Q fails the coflabby check.
ExactTriple coflabby_resolution(const GLattice& m);
// 0 -> M -> P -> F -> 0, the dual of coflabby_resolution(dual(M)); F is flabby.
ExactTriple flabby_resolution(const GLattice& m);

struct FlabbyClassInvariants {
  GLattice representative;
  std::vector<CohomologyRow> rows;
  bool h1_vanishes() const;
};
FlabbyClassInvariants flabby_class_invariants(const GLattice& m);

}  // namespace norm1lat

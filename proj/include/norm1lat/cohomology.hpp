#pragma once

#include <optional>
#include <vector>

#include "norm1lat/glattice.hpp"

namespace norm1lat {

// Tate cohomology of U acting on M, in degrees -1, 0, +1 (H^1 = \hat H^1).
AbelianInvariants tate(int degree, const GLattice& m, const Subgroup& u);
// ker(N_U) / sum (s - 1) M over generators s of U.
AbelianInvariants tate_minus1(const GLattice& m, const Subgroup& u);
// M^U / N_U M.
AbelianInvariants tate_zero(const GLattice& m, const Subgroup& u);
// Z^1 / B^1 from a presentation of U: cyclic <a | a^k> or dihedral
// <a, b | a^k, b^2, (ab)^2>; other shapes use cocycles on the Cayley graph.
AbelianInvariants h1(const GLattice& m, const Subgroup& u);
// Cocycles f: U -> M with f(s g) = f(s) + s f(g) for generators s, all g.
AbelianInvariants h1_cayley(const GLattice& m, const Subgroup& u);

enum class H1Route { Trivial, Cyclic, Dihedral, Cayley };
H1Route h1_route(const FiniteGroup& g, const Subgroup& u);
const char* to_string(H1Route r);

struct CohomologyWitness {
  Subgroup subgroup;
  AbelianInvariants value;
};

struct PredicateResult {
  bool holds = true;
  std::optional<CohomologyWitness> witness;  // first failing class
};

// Scans one representative per conjugacy class of subgroups.
PredicateResult is_flabby(const GLattice& m);
PredicateResult is_coflabby(const GLattice& m);

struct CohomologyRow {
  Subgroup subgroup;
  std::size_t class_size = 0;
  AbelianInvariants minus1, zero, one;
};
std::vector<CohomologyRow> cohomology_table(const GLattice& m);
std::vector<CohomologyRow> cohomology_table(const GLattice& m, const std::vector<SubgroupClass>& classes);

}  // namespace norm1lat

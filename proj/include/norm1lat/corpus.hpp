#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "norm1lat/glattice.hpp"

namespace norm1lat {

// Lattice specs, '+' joins summands:
//   Z, Z^k         trivial
//   P:<H>          Z[G/H]
//   I:<H>, J:<H>   augmentation ideal and its dual
//   F:<H>          flabby resolution right term of J_{G/H}
//   Q:<H>          coflabby resolution left term of I_{G/H}
GLattice parse_lattice_spec(GroupPtr g, std::string_view spec);

// Fixed list of group specs, all of order <= 48.
const std::vector<std::string>& corpus_group_specs();

struct CorpusLattice {
  std::string group_spec;
  std::string lattice_spec;
};
// Deterministic pseudo-random lattices over corpus groups of order <= max_order.
// Each is one to two summands of type P, I or J.
std::vector<CorpusLattice> corpus_lattices(std::size_t count, std::uint64_t seed, std::size_t max_order,
                                           std::size_t max_rank);

}  // namespace norm1lat

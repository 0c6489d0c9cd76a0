#pragma once

#include <optional>
#include <string>
#include <vector>

#include "norm1lat/dihedral_cases.hpp"

namespace norm1lat {

// An isomorphism G -> S onto a standard model carrying H onto a standard
// subgroup, written as psi followed by the dihedral automorphism (power 0/1)
// and conjugation by `conjugator`.
struct Transport {
  GroupPtr source;
  GroupPtr target;
  Subgroup h;                // in source
  Subgroup h_target;         // in target, = image of h
  std::vector<int> map;      // source element -> target element
  int automorphism_power = 0;
  int conjugator = 0;
};

// G dihedral (rotation order n >= 3) or cyclic; h of order <= 2 a reflection
// subgroup or trivial. target must have generators x, y (or just x).
// h_std: the standard subgroup to land on. nullopt if no such map exists.
std::optional<Transport> make_transport(GroupPtr g, const Subgroup& h, GroupPtr target, const Subgroup& h_std);
CheckResult verify_transport(const Transport& t);
// The same matrices relabeled through the map, as a lattice over the target.
GLattice pull_back(const GLattice& m, const Transport& t);

// J_{G/H} pulled back to the target, mapped to the dual of the augmentation
// ideal of `perm` (a transitive permutation lattice whose basis vector `base`
// has stabilizer h_target).
std::optional<IsoCertificate> transport_chevalley(const Transport& t, const GLattice& perm, std::size_t base,
                                                  std::string* why = nullptr);

struct ClassifyOptions {
  CaseOptions cases{{3, 2'000'000}, false, false, false};
  std::size_t max_group_order = 400;
};

struct Classification {
  Verdict verdict = Verdict::Unsupported;
  std::string rule;         // decision rule id, e.g. "dihedral-2mod4-c2"
  std::string explanation;
  std::string group_spec, subgroup_spec;
  GroupPtr group;
  Subgroup h;
  int n = 0;  // rotation order (dihedral) or group order (cyclic)
  std::optional<Transport> transport;
  // Subgroup of the model the obstruction lives on (n = 0 mod 4 case).
  std::optional<Subgroup> restricted_to;
  std::vector<NamedIso> isos;
  std::vector<NamedObstruction> obstructions;
  // Flabby resolution with permutation right term (cyclic case).
  std::optional<ExactTriple> resolution;
  // Explicit construction behind stably rational dihedral verdicts.
  std::optional<DihedralCase> construction;
};

// Rule ids:
//   cyclic-galois            G cyclic, H = 1
//   dihedral-odd-galois      D_n, n odd, H = 1
//   dihedral-even-galois     D_n, n even, H = 1 (noncyclic Sylow 2)
//   dihedral-odd-c2          D_n, n odd, H = <reflection>
//   dihedral-2mod4-c2        D_n, n = 2 mod 4, H = <reflection>
//   dihedral-0mod4-c2        D_n, n = 0 mod 4, H = <reflection>
//   not-core-free, unsupported-group
Classification classify(GroupPtr g, const Subgroup& h, const ClassifyOptions& opt = {});
Classification classify(std::string_view group_spec, std::string_view subgroup_spec, const ClassifyOptions& opt = {});

// Re-checks every attached certificate without any search.
CheckResult verify_classification(const Classification& c);

}  // namespace norm1lat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "norm1lat/resolution.hpp"

namespace norm1lat {

struct CheckResult {
  bool ok = true;
  std::string failure;  // empty when ok
  explicit operator bool() const { return ok; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

// Injective, surjective over Z, image(inj) = ker(surj), both maps equivariant.
// Throws UsageError on shape mismatches.
CheckResult verify_exact(const ExactTriple& t);

// Z-basis of {X : B(s) X = X A(s) for all generators s} for M -> N (A on M, B on N).
std::vector<IntMatrix> hom_basis(const GLattice& m, const GLattice& n);

// An equivariant unimodular matrix source -> target.
struct IsoCertificate {
  GLattice source;
  GLattice target;
  IntMatrix matrix;
};
CheckResult verify_iso(const IsoCertificate& c);

struct IsoResult {
  enum class Status { Found, NotIsomorphic, Unknown };
  Status status = Status::Unknown;
  std::optional<IsoCertificate> certificate;
  std::string detail;
  std::size_t candidates = 0;  // search nodes visited
};
const char* to_string(IsoResult::Status s);

struct IsoSearchOptions {
  int search_bound = 3;
  std::size_t node_budget = 5'000'000;
};

// One-sided: Found carries a certificate; NotIsomorphic only for rank mismatch
// or an empty hom lattice. When either side has a permutation basis the search
// runs over images of orbit base points in the fixed sublattices; otherwise
// over small combinations of hom_basis in shells of increasing max-norm.
IsoResult find_iso(const GLattice& m, const GLattice& n, IsoSearchOptions opt = {});

// M + Z^pad against the permutation lattice on the given subgroups.
IsoResult stably_permutation_certificate(const GLattice& m, std::size_t pad, const std::vector<Subgroup>& targets,
                                         IsoSearchOptions opt = {});

// Exhausted search over permutation lattices of the right rank, each ruled out
// by Ĥ⁰ at some subgroup class.
struct MultisetRecord {
  std::vector<Subgroup> classes;              // subgroup class representatives
  std::vector<std::size_t> indices;           // [G : U] per class
  std::vector<AbelianInvariants> h0_lattice;  // Ĥ⁰(U, M) per class
  struct Entry {
    std::vector<int> counts;  // multiplicity per class
    std::size_t witness = 0;  // class where Ĥ⁰ differs
  };
  std::vector<Entry> entries;
  std::size_t rank = 0;
};

struct ObstructionCertificate {
  enum class Kind { NoncyclicSylow, NonzeroH1, RankMultiset };
  Kind kind = Kind::NonzeroH1;
  GLattice lattice;
  // NoncyclicSylow: a Sylow subgroup of group with no element of full order.
  GroupPtr group;
  int prime = 0;
  Subgroup sylow;
  // NonzeroH1
  Subgroup subgroup;
  AbelianInvariants invariants;
  // RankMultiset
  MultisetRecord record;
};
const char* to_string(ObstructionCertificate::Kind k);
// Re-checks the payload without repeating any search.
CheckResult verify_obstruction(const ObstructionCertificate& c);

struct MultisetOptions {
  std::size_t max_rank = 64;
  std::size_t max_multisets = 1'000'000;
};
// Ĥ⁰(V, Z[G/U]) as the V-orbits on G/U: one Z/|stabilizer| per orbit.
AbelianInvariants permutation_h0(const FiniteGroup& g, const Subgroup& v, const Subgroup& u);
// nullopt means inconclusive: some permutation lattice matches every Ĥ⁰.
// Throws ResourceError past the bounds.
std::optional<ObstructionCertificate> permutation_decomposition_obstruction(const GLattice& m,
                                                                            MultisetOptions opt = {});

// The group G and subgroup H for lattices that represent [J_{G/H}]^fl.
struct FlabbyOrigin {
  GroupPtr group;
  Subgroup h;
};
struct NonInvertibility {
  std::optional<ObstructionCertificate> sylow;  // strategy (a)
  std::optional<ObstructionCertificate> h1;     // strategy (b)
  // First success in strategy order, if any.
  const ObstructionCertificate* certificate() const;
};
// Runs both strategies. The Sylow rule applies only to [J_G]^fl, i.e. origin
// with H = 1.
NonInvertibility non_invertibility_certificate(const GLattice& m, const std::optional<FlabbyOrigin>& origin = {});

}  // namespace norm1lat

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "norm1lat/groups.hpp"
#include "norm1lat/intmat.hpp"

namespace norm1lat {

// Z^r with a left action of a finite group by unimodular matrices, stored on
// the generators. Matrices of other elements are built from the word tree on
// first use and cached; the cache is shared by copies and guarded by a mutex.
class GLattice {
 public:
  GLattice() = default;
  // Checks unimodularity and that the matrices define a homomorphism (relators
  // when the group has a presentation, otherwise A(s)A(g) = A(sg) for all g).
  // Throws UsageError on failure.
  GLattice(GroupPtr g, std::vector<IntMatrix> generator_matrices, std::string label);
  // For lattices derived from already verified ones, where the caller has
  // checked a sufficient condition (e.g. an equivariant injection).
  // The rank is taken from the matrices unless the group has no generators.
  static GLattice derived(GroupPtr g, std::vector<IntMatrix> generator_matrices, std::string label,
                          std::size_t rank = 0);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const std::string& label() const noexcept { return label_; }
  GLattice relabeled(std::string label) const;

  const std::vector<IntMatrix>& generator_matrices() const noexcept { return gens_; }
  const IntMatrix& generator_matrix(std::size_t i) const { return gens_[i]; }
  const IntMatrix& action(int element) const;
  // Sum of the action matrices over the members of U.
  IntMatrix norm_matrix(const Subgroup& u) const;

  // Every generator acts by a permutation matrix.
  bool has_permutation_basis() const;

 private:
  struct Cache;
  GroupPtr group_;
  std::size_t rank_ = 0;
  std::vector<IntMatrix> gens_;
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

// Equivariant Z-linear map; matrix is target.rank() x source.rank().
struct LatticeMap {
  GLattice source;
  GLattice target;
  IntMatrix matrix;

  // Throws InternalError unless the matrix has the right shape and is equivariant.
  static LatticeMap make(GLattice source, GLattice target, IntMatrix matrix);
  LatticeMap compose_after(const LatticeMap& first) const;  // this o first
};

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m);

GLattice trivial_lattice(GroupPtr g, std::size_t rank = 1);
GLattice coset_lattice(GroupPtr g, const Subgroup& h);
// Direct sum of coset lattices in the given order.
GLattice permutation_lattice(GroupPtr g, const std::vector<Subgroup>& subgroups);

struct AugmentationSequence {
  GLattice ideal;        // I_{G/H}, basis f_i = e_i - e_{i+1}
  GLattice permutation;  // Z[G/H]
  GLattice trivial;      // Z
  LatticeMap incl;
  LatticeMap eps;
};
AugmentationSequence augmentation_sequence(GroupPtr g, const Subgroup& h);
GLattice augmentation_ideal(GroupPtr g, const Subgroup& h);
// J_{G/H} = dual of I_{G/H}.
GLattice chevalley_module(GroupPtr g, const Subgroup& h);

// Matrices A(g^-1)^T, i.e. the inverse transposes.
GLattice dual(const GLattice& m);
GLattice direct_sum(const GLattice& a, const GLattice& b);
GLattice direct_sum(const std::vector<GLattice>& parts);
// The same matrices viewed as a lattice over U (as a group in its own right).
GLattice restriction(const GLattice& m, const Subgroup& u);
// Generator s acts by A(phi(s)); phi an automorphism given on element indices.
GLattice twist(const GLattice& m, const std::vector<int>& phi);

// Saturated basis (columns) of M^U.
IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& u);
// Lattice on the span of the columns of k, which must be a saturated basis of
// a G-stable sublattice. Throws InternalError otherwise.
GLattice sublattice(const GLattice& m, const IntMatrix& k, std::string label);

// Permutation matrix Z[G/H] -> Z[G/cHc^-1], gH -> g c^-1 (cHc^-1).
LatticeMap coset_conjugation_map(GroupPtr g, const Subgroup& h, int c);

}  // namespace norm1lat

#include "norm1lat/resolution.hpp"

#include "norm1lat/errors.hpp"
#include "norm1lat/parallel.hpp"

namespace norm1lat {

const char* to_string(ExactTriple::Kind k) {
  switch (k) {
    case ExactTriple::Kind::FlabbyResolution: return "flabby_resolution";
    case ExactTriple::Kind::CoflabbyResolution: return "coflabby_resolution";
    case ExactTriple::Kind::General: return "general";
  }
  return "?";
}

ExactTriple coflabby_resolution(const GLattice& m) {
  const GroupPtr& g = m.group_ptr();
  const auto& classes = g->subgroup_classes();
  const std::size_t r = m.rank();
  // Per class: the coset representatives and the fixed basis.
  struct Block {
    Cosets cs;
    IntMatrix fixed;
  };
  auto parts = parallel_map(classes.size(), [&](std::size_t i) {
    const Subgroup& u = classes[i].rep;
    return Block{cosets(*g, u), u.is_trivial() ? IntMatrix::identity(r) : fixed_sublattice(m, u)};
  });
  std::vector<Subgroup> blocks;
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < parts[i].fixed.cols(); ++j) {
      IntVector v = parts[i].fixed.column(j);
      blocks.push_back(classes[i].rep);
      for (int rep : parts[i].cs.reps) cols.push_back(m.action(rep) * std::span<const Integer>(v));
    }
  GLattice p = permutation_lattice(g, blocks);
  IntMatrix phi = IntMatrix::from_columns(cols, r);
  LatticeMap surj = LatticeMap::make(p, m, phi);
  IntMatrix k = kernel_basis(phi);
  GLattice q = sublattice(p, k, "Q(" + m.label() + ")");
  LatticeMap inj = LatticeMap::make(q, p, k);
  PredicateResult c = is_coflabby(q);
  if (!c.holds)
    throw InternalError("kernel of the coflabby resolution of " + m.label() + " has H^1(" +
                        c.witness->subgroup.describe(*g) + ") = " + c.witness->value.to_string());
  return ExactTriple{q, p, m, std::move(inj), std::move(surj), ExactTriple::Kind::CoflabbyResolution,
                     std::move(blocks)};
}

ExactTriple flabby_resolution(const GLattice& m) {
  ExactTriple co = coflabby_resolution(dual(m));
  // Permutation matrices are their own inverse transposes, so P is self-dual.
  GLattice p = co.mid.relabeled("P(" + m.label() + ")");
  GLattice f = dual(co.left).relabeled("F(" + m.label() + ")");
  LatticeMap inj = LatticeMap::make(m, p, co.surj.matrix.transpose());
  LatticeMap surj = LatticeMap::make(p, f, co.inj.matrix.transpose());
  PredicateResult fl = is_flabby(f);
  if (!fl.holds)
    throw InternalError("right term of the flabby resolution of " + m.label() + " has H^-1(" +
                        fl.witness->subgroup.describe(m.group()) + ") = " + fl.witness->value.to_string());
  return ExactTriple{m, p, f, std::move(inj), std::move(surj), ExactTriple::Kind::FlabbyResolution,
                     std::move(co.blocks)};
}

bool FlabbyClassInvariants::h1_vanishes() const {
  for (const auto& row : rows)
    if (!row.one.is_trivial()) return false;
  return true;
}

FlabbyClassInvariants flabby_class_invariants(const GLattice& m) {
  GLattice f = flabby_resolution(m).right;
  auto rows = cohomology_table(f);
  return {std::move(f), std::move(rows)};
}

}  // namespace norm1lat

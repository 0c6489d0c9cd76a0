#include "norm1lat/cohomology.hpp"

#include "norm1lat/errors.hpp"
#include "norm1lat/parallel.hpp"

namespace norm1lat {

namespace {

void check_subgroup(const GLattice& m, const Subgroup& u) {
  const FiniteGroup& g = m.group();
  if (u.members().empty() || static_cast<std::size_t>(u.members().back()) >= g.order())
    throw UsageError("subgroup does not belong to the group of " + m.label());
  for (int a : u.members())
    for (int s : u.generators())
      if (!u.contains(g.mul(a, s))) throw UsageError("not a subgroup of the group of " + m.label());
}

AbelianInvariants torsion_only(AbelianInvariants inv) {
  inv.free_rank = 0;
  return inv;
}

// Z^1 / B^1 given a saturated basis z of the cocycles and generators b of the
// coboundaries, both as columns in the same coordinates.
AbelianInvariants quotient(const IntMatrix& z, const IntMatrix& b) {
  if (z.cols() == 0) return {};
  IntMatrix zp = left_inverse(z);
  IntMatrix coords = zp * b;
  if (z * coords != b) throw InternalError("coboundaries are not cocycles");
  AbelianInvariants inv = cokernel_invariants(coords);
  if (inv.free_rank != 0) throw InternalError("H^1 has a free part; cocycle constraints are incomplete");
  return inv;
}

}  // namespace

AbelianInvariants tate_minus1(const GLattice& m, const Subgroup& u) {
  check_subgroup(m, u);
  if (u.is_trivial() || m.rank() == 0) return {};
  // ker N_U is saturated and contains (s - 1)M with finite index, so the
  // quotient is exactly the torsion of M / sum (s - 1)M.
  std::vector<IntMatrix> parts;
  for (int s : u.generators()) parts.push_back(m.action(s) - IntMatrix::identity(m.rank()));
  return torsion_only(cokernel_invariants(hstack(parts, m.rank())));
}

AbelianInvariants tate_zero(const GLattice& m, const Subgroup& u) {
  check_subgroup(m, u);
  if (u.is_trivial() || m.rank() == 0) return {};
  // Likewise M^U is saturated and contains N_U M with finite index.
  return torsion_only(cokernel_invariants(m.norm_matrix(u)));
}

H1Route h1_route(const FiniteGroup& g, const Subgroup& u) {
  switch (subgroup_shape(g, u).kind) {
    case SubgroupShape::Kind::Trivial: return H1Route::Trivial;
    case SubgroupShape::Kind::Cyclic: return H1Route::Cyclic;
    case SubgroupShape::Kind::Dihedral: return H1Route::Dihedral;
    case SubgroupShape::Kind::Other: return H1Route::Cayley;
  }
  return H1Route::Cayley;
}

const char* to_string(H1Route r) {
  switch (r) {
    case H1Route::Trivial: return "trivial";
    case H1Route::Cyclic: return "cyclic";
    case H1Route::Dihedral: return "dihedral";
    case H1Route::Cayley: return "cayley";
  }
  return "?";
}

AbelianInvariants h1(const GLattice& m, const Subgroup& u) {
  check_subgroup(m, u);
  const FiniteGroup& g = m.group();
  const std::size_t r = m.rank();
  if (r == 0) return {};
  SubgroupShape sh = subgroup_shape(g, u);
  const IntMatrix id = IntMatrix::identity(r);
  switch (sh.kind) {
    case SubgroupShape::Kind::Trivial: return {};
    case SubgroupShape::Kind::Cyclic: {
      // <a | a^k>: the relator's Fox derivative is N_a.
      const IntMatrix& a = m.action(sh.a);
      IntMatrix norm(r, r);
      IntMatrix p = id;
      for (int i = 0; i < sh.k; ++i) {
        norm += p;
        p = a * p;
      }
      return quotient(kernel_basis(norm), a - id);
    }
    case SubgroupShape::Kind::Dihedral: {
      // <a, b | a^k, b^2, (ab)^2>; unknowns (f(a), f(b)).
      const IntMatrix& a = m.action(sh.a);
      const IntMatrix& b = m.action(sh.b);
      IntMatrix norm(r, r);
      IntMatrix p = id;
      for (int i = 0; i < sh.k; ++i) {
        norm += p;
        p = a * p;
      }
      IntMatrix ab = a * b;
      IntMatrix zero(r, r);
      std::vector<IntMatrix> rel_a{norm, zero};
      std::vector<IntMatrix> rel_b{zero, id + b};
      std::vector<IntMatrix> rel_ab{id + ab, a + ab * a};
      std::vector<IntMatrix> blocks{hstack(rel_a, r), hstack(rel_b, r), hstack(rel_ab, r)};
      IntMatrix z = kernel_of_stack(blocks, 2 * r);
      std::vector<IntMatrix> cob{a - id, b - id};
      return quotient(z, vstack(cob, r));
    }
    case SubgroupShape::Kind::Other: return h1_cayley(m, u);
  }
  return h1_cayley(m, u);
}

AbelianInvariants h1_cayley(const GLattice& m, const Subgroup& u) {
  check_subgroup(m, u);
  const FiniteGroup& g = m.group();
  const std::size_t r = m.rank();
  if (u.is_trivial() || r == 0) return {};
  const auto& mem = u.members();
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < mem.size(); ++i) pos[static_cast<std::size_t>(mem[i])] = static_cast<int>(i);
  const std::size_t n = mem.size();
  // Unknowns f(g) for every member, identity included (forced to 0 below).
  std::vector<IntMatrix> blocks;
  IntMatrix id0(r, n * r);
  for (std::size_t i = 0; i < r; ++i) id0(i, static_cast<std::size_t>(pos[0]) * r + i) = 1;
  blocks.push_back(std::move(id0));
  for (int s : u.generators()) {
    const IntMatrix& as = m.action(s);
    const std::size_t ps = static_cast<std::size_t>(pos[static_cast<std::size_t>(s)]);
    IntMatrix eq(n * r, n * r);
    for (std::size_t gi = 0; gi < n; ++gi) {
      const std::size_t sg = static_cast<std::size_t>(pos[static_cast<std::size_t>(g.mul(s, mem[gi]))]);
      for (std::size_t i = 0; i < r; ++i) {
        std::size_t row = gi * r + i;
        eq(row, sg * r + i) += Integer(1);
        eq(row, ps * r + i) -= Integer(1);
        for (std::size_t j = 0; j < r; ++j)
          if (!as(i, j).is_zero()) eq(row, gi * r + j) -= as(i, j);
      }
    }
    blocks.push_back(std::move(eq));
  }
  IntMatrix z = kernel_of_stack(blocks, n * r);
  IntMatrix b(n * r, r);
  for (std::size_t gi = 0; gi < n; ++gi) {
    IntMatrix d = m.action(mem[gi]) - IntMatrix::identity(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) b(gi * r + i, j) = d(i, j);
  }
  return quotient(z, b);
}

AbelianInvariants tate(int degree, const GLattice& m, const Subgroup& u) {
  switch (degree) {
    case -1: return tate_minus1(m, u);
    case 0: return tate_zero(m, u);
    case 1: return h1(m, u);
    default: throw UsageError("only degrees -1, 0, 1 are implemented");
  }
}

namespace {

PredicateResult scan(const GLattice& m, AbelianInvariants (*f)(const GLattice&, const Subgroup&)) {
  const auto& classes = m.group().subgroup_classes();
  auto values = parallel_map(classes.size(), [&](std::size_t i) { return f(m, classes[i].rep); });
  PredicateResult res;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!values[i].is_trivial()) {
      res.holds = false;
      res.witness = CohomologyWitness{classes[i].rep, values[i]};
      break;
    }
  return res;
}

}  // namespace

PredicateResult is_flabby(const GLattice& m) { return scan(m, &tate_minus1); }
PredicateResult is_coflabby(const GLattice& m) { return scan(m, &h1); }

std::vector<CohomologyRow> cohomology_table(const GLattice& m, const std::vector<SubgroupClass>& classes) {
  return parallel_map(classes.size(), [&](std::size_t i) {
    const Subgroup& u = classes[i].rep;
    return CohomologyRow{u, classes[i].size, tate_minus1(m, u), tate_zero(m, u), h1(m, u)};
  });
}

std::vector<CohomologyRow> cohomology_table(const GLattice& m) {
  return cohomology_table(m, m.group().subgroup_classes());
}

}  // namespace norm1lat

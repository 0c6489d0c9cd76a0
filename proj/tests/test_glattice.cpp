#include <doctest.h>

#include "norm1lat/errors.hpp"
#include "norm1lat/glattice.hpp"

using namespace norm1lat;

namespace {

std::vector<GroupPtr> corpus48() {
  std::vector<GroupPtr> gs;
  for (int n = 3; n <= 12; ++n) gs.push_back(dihedral_on_cosets(n));
  gs.push_back(dihedral_on_cosets(24));
  for (int n = 2; n <= 6; ++n) gs.push_back(cyclic_group(n));
  gs.push_back(parse_group_spec("perm:a=(1 2);b=(3 4)"));
  gs.push_back(parse_group_spec("perm:a=(1 2 3 4);b=(1 2)"));
  return gs;
}

bool same_span(const IntMatrix& a, const IntMatrix& b) {
  return canonical_column_basis(a) == canonical_column_basis(b);
}

}  // namespace

TEST_CASE("coset lattices") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  GLattice p = coset_lattice(g, h);
  CHECK(p.rank() == 6);
  const IntMatrix& x = p.generator_matrix(0);
  for (std::size_t i = 0; i < 6; ++i) CHECK(x((i + 1) % 6, i) == Integer(1));
  CHECK(coset_lattice(g, Subgroup::whole(*g)).rank() == 1);
  CHECK(coset_lattice(g, Subgroup::whole(*g)).generator_matrix(1).is_identity());
  GLattice reg = coset_lattice(g, Subgroup::trivial(*g));
  CHECK(reg.rank() == 12);
  // the regular representation: only the identity fixes a basis vector
  for (int e = 1; e < 12; ++e) {
    const IntMatrix& a = reg.action(e);
    for (std::size_t i = 0; i < 12; ++i) CHECK(a(i, i).is_zero());
  }
  // the checked constructor accepts it too
  CHECK_NOTHROW(GLattice(g, p.generator_matrices(), "check"));
}

TEST_CASE("constructor rejects non-actions") {
  auto c2 = cyclic_group(2);
  CHECK_THROWS_AS(GLattice(c2, {IntMatrix::from_rows({{2}})}, "bad"), UsageError);
  auto d3 = dihedral_on_cosets(3);
  auto swap = IntMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(GLattice(d3, {swap, swap}, "bad"), UsageError);
  auto v4 = parse_group_spec("perm:a=(1 2);b=(3 4)");
  auto rot = IntMatrix::from_rows({{0, -1}, {1, 0}});
  CHECK_THROWS_AS(GLattice(v4, {rot, IntMatrix::identity(2)}, "bad"), UsageError);
  CHECK_NOTHROW(GLattice(v4, {swap, IntMatrix::from_rows({{-1, 0}, {0, -1}})}, "ok"));
}

TEST_CASE("augmentation sequence") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  auto seq = augmentation_sequence(g, h);
  CHECK(seq.ideal.rank() == 5);
  IntMatrix yf1 = seq.ideal.generator_matrix(1) * IntMatrix::from_columns({{1, 0, 0, 0, 0}}, 5);
  CHECK(yf1 == IntMatrix::from_columns({{0, 0, 0, 0, -1}}, 5));
  // y: f_i <-> -f_{n-i}
  for (std::size_t i = 0; i < 5; ++i) CHECK(seq.ideal.generator_matrix(1)(4 - i, i) == Integer(-1));

  auto c2 = cyclic_group(2);
  GLattice sign = augmentation_ideal(c2, Subgroup::trivial(*c2));
  CHECK(sign.rank() == 1);
  CHECK(sign.generator_matrix(0) == IntMatrix::from_rows({{-1}}));

  for (const auto& gr : corpus48())
    for (const auto& c : gr->subgroup_classes()) {
      auto s = augmentation_sequence(gr, c.rep);
      CHECK((s.eps.matrix * s.incl.matrix).is_zero());
      CHECK(cokernel_invariants(s.eps.matrix).is_trivial());
      CHECK(rank(s.incl.matrix) == s.ideal.rank());
      CHECK(same_span(kernel_basis(s.eps.matrix), s.incl.matrix));
    }
}

TEST_CASE("Chevalley module and duals") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  GLattice j = chevalley_module(g, h);
  CHECK(j.rank() == 5);
  GLattice jj = dual(dual(j));
  CHECK(jj.generator_matrices() == j.generator_matrices());
  for (std::size_t i = 0; i < 2; ++i) {
    IntMatrix a = augmentation_ideal(g, h).generator_matrix(i);
    CHECK(j.generator_matrix(i) * a.transpose() == IntMatrix::identity(5));
  }
  auto c2 = cyclic_group(2);
  CHECK(chevalley_module(c2, Subgroup::trivial(*c2)).generator_matrix(0) == IntMatrix::from_rows({{-1}}));
  GLattice p = coset_lattice(g, h);
  CHECK(dual(p).generator_matrices() == p.generator_matrices());
}

TEST_CASE("restriction, sums, fixed sublattices") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  auto gp = parse_subgroup_spec(*g, "<x^2, y>");
  GLattice p = coset_lattice(g, h);
  GLattice r = restriction(p, gp);
  CHECK(r.rank() == 6);
  CHECK(r.group().order() == 6);
  CHECK(r.has_permutation_basis());
  std::vector<char> seen(6, 0);
  std::vector<std::size_t> orbit{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const auto& a : r.generator_matrices()) {
      std::size_t t = static_cast<std::size_t>(a.permutation_images()[orbit[i]]);
      if (!seen[t]) {
        seen[t] = 1;
        orbit.push_back(t);
      }
    }
  CHECK(orbit.size() == 6);

  GLattice j = chevalley_module(g, h);
  CHECK(direct_sum(p, j).rank() == 11);
  CHECK(restriction(dual(j), gp).generator_matrices() == dual(restriction(j, gp)).generator_matrices());
  CHECK(restriction(direct_sum(p, j), gp).generator_matrices() ==
        direct_sum(restriction(p, gp), restriction(j, gp)).generator_matrices());

  IntMatrix fx = fixed_sublattice(p, Subgroup::whole(*g));
  CHECK(fx == IntMatrix::from_columns({{1, 1, 1, 1, 1, 1}}, 6));
  auto c2 = cyclic_group(2);
  CHECK(fixed_sublattice(chevalley_module(c2, Subgroup::trivial(*c2)), Subgroup::whole(*c2)).cols() == 0);
  CHECK(fixed_sublattice(j, Subgroup::trivial(*g)).cols() == 5);
}

TEST_CASE("conjugate subgroups give isomorphic coset lattices") {
  for (const auto& gr : corpus48())
    for (const auto& c : gr->subgroup_classes())
      for (int e = 0; e < static_cast<int>(gr->order()); e += 3) {
        LatticeMap m = coset_conjugation_map(gr, c.rep, e);
        CHECK(m.matrix.is_permutation_matrix());
      }
}

TEST_CASE("twist by the dihedral automorphism") {
  auto g = dihedral_on_cosets(6);
  auto phi = dihedral_automorphism(*g);
  GLattice t = twist(coset_lattice(g, parse_subgroup_spec(*g, "<x*y>")), phi);
  CHECK(t.generator_matrix(1) == coset_lattice(g, parse_subgroup_spec(*g, "<x*y>")).action(g->parse_element("x*y")));
  CHECK_NOTHROW(GLattice(g, t.generator_matrices(), "twisted"));
}

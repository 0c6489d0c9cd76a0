#include <doctest.h>

#include "norm1lat/certify.hpp"
#include "norm1lat/errors.hpp"

using namespace norm1lat;

namespace {

AbelianInvariants cyc(std::initializer_list<long long> ds) {
  std::vector<Integer> v;
  for (long long d : ds) v.emplace_back(d);
  return AbelianInvariants::from_cyclic_orders(v);
}

// Cohomology agrees on every class; required of every found certificate.
void check_same_cohomology(const IsoCertificate& c) {
  for (const auto& cl : c.source.group().subgroup_classes())
    for (int d = -1; d <= 1; ++d) CHECK(tate(d, c.source, cl.rep) == tate(d, c.target, cl.rep));
}

}  // namespace

TEST_CASE("hom bases") {
  auto c2 = cyclic_group(2);
  auto hz = hom_basis(trivial_lattice(c2), trivial_lattice(c2));
  REQUIRE(hz.size() == 1);
  CHECK(hz[0] == IntMatrix::from_rows({{1}}));
  GLattice sign = augmentation_ideal(c2, Subgroup::trivial(*c2));
  CHECK(hom_basis(trivial_lattice(c2), sign).empty());

  auto d3 = dihedral_on_cosets(3);
  GLattice p = coset_lattice(d3, parse_subgroup_spec(*d3, "<x*y>"));
  auto b = hom_basis(p, p);
  CHECK(b.size() == 2);
  for (const auto& x : b) CHECK(is_equivariant(p, p, x));
}

TEST_CASE("hom basis counts orbits") {
  for (int n : {4, 5, 6}) {
    auto g = dihedral_on_cosets(n);
    for (const auto& c : g->subgroup_classes()) {
      GLattice q = coset_lattice(g, c.rep);
      Cosets cs = cosets(*g, c.rep);
      std::vector<char> seen(cs.size(), 0);
      std::size_t orbits = 0;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        for (int e : c.rep.members()) seen[static_cast<std::size_t>(cs.act(*g, e, static_cast<int>(i)))] = 1;
      }
      CHECK(hom_basis(q, q).size() == orbits);
    }
  }
}

TEST_CASE("find_iso") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  GLattice j = chevalley_module(g, h);
  IsoResult self = find_iso(j, j);
  REQUIRE(self.status == IsoResult::Status::Found);
  CHECK(self.certificate->matrix.is_identity());

  auto c2 = cyclic_group(2);
  GLattice sign = augmentation_ideal(c2, Subgroup::trivial(*c2));
  CHECK(find_iso(trivial_lattice(c2), sign).status == IsoResult::Status::NotIsomorphic);
  CHECK(find_iso(sign, trivial_lattice(c2)).status == IsoResult::Status::NotIsomorphic);
  CHECK(find_iso(trivial_lattice(c2), trivial_lattice(c2, 2)).status == IsoResult::Status::NotIsomorphic);
  // H^0 is 0 for Z[C2] and Z/2 for Z + sign
  GLattice reg = coset_lattice(c2, Subgroup::trivial(*c2));
  CHECK(find_iso(reg, direct_sum(trivial_lattice(c2), sign)).status != IsoResult::Status::Found);

  for (const auto& c : g->subgroup_classes())
    for (int e : {1, 5, 7}) {
      Subgroup cu = conjugate(*g, c.rep, e);
      IsoResult r = find_iso(coset_lattice(g, c.rep), coset_lattice(g, cu));
      REQUIRE(r.status == IsoResult::Status::Found);
      CHECK(verify_iso(*r.certificate));
      IsoResult rj = find_iso(chevalley_module(g, c.rep), chevalley_module(g, cu));
      if (rj.status == IsoResult::Status::Found) check_same_cohomology(*rj.certificate);
    }

  // automorphism x -> x, y -> xy moves <y> to <xy>
  auto phi = dihedral_automorphism(*g);
  GLattice jy = twist(chevalley_module(g, parse_subgroup_spec(*g, "<y>")), phi);
  IsoResult r = find_iso(jy, j);
  REQUIRE(r.status == IsoResult::Status::Found);
  CHECK(verify_iso(*r.certificate));
  check_same_cohomology(*r.certificate);
}

TEST_CASE("stably permutation certificates") {
  auto g = dihedral_on_cosets(5);
  auto h = parse_subgroup_spec(*g, "<y>");
  // Z[G/H] with pad 0 against itself
  IsoResult self = stably_permutation_certificate(coset_lattice(g, h), 0, {h});
  REQUIRE(self.status == IsoResult::Status::Found);
  // I_{G/H} + Z against Z[G/H] is not found: H^0(G, I) = 0 while H^0(G, Z[G/H]) = Z/2
  IsoResult no = stably_permutation_certificate(augmentation_ideal(g, h), 1, {h}, {1, 200000});
  CHECK(no.status != IsoResult::Status::Found);
  CHECK_THROWS_AS(stably_permutation_certificate(coset_lattice(g, h), 1, {h}), UsageError);

  // a coset lattice in a non-standard basis
  auto d3 = dihedral_on_cosets(3);
  auto u = parse_subgroup_spec(*d3, "<x>");
  GLattice p = permutation_lattice(d3, {parse_subgroup_spec(*d3, "<y>"), u});
  IntMatrix t = IntMatrix::from_rows({{1, 0, 0, 1, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 0}, {1, 1, 0, 0, 1}});
  std::vector<IntMatrix> mats;
  IntMatrix ti = unimodular_inverse(t);
  for (const auto& a : p.generator_matrices()) mats.push_back(ti * a * t);
  GLattice q(d3, mats, "q");
  IsoResult r = stably_permutation_certificate(q, 0, {parse_subgroup_spec(*d3, "<y>"), u});
  REQUIRE(r.status == IsoResult::Status::Found);
  CHECK(verify_iso(*r.certificate));
  check_same_cohomology(*r.certificate);
}

TEST_CASE("permutation decomposition obstruction") {
  auto c2 = cyclic_group(2);
  GLattice sign = augmentation_ideal(c2, Subgroup::trivial(*c2));
  auto ob = permutation_decomposition_obstruction(sign);
  REQUIRE(ob.has_value());
  CHECK(ob->kind == ObstructionCertificate::Kind::RankMultiset);
  CHECK(ob->record.entries.size() == 1);
  CHECK(verify_obstruction(*ob));

  auto g = dihedral_on_cosets(6);
  CHECK_FALSE(permutation_decomposition_obstruction(coset_lattice(g, parse_subgroup_spec(*g, "<x*y>"))).has_value());
  CHECK_FALSE(permutation_decomposition_obstruction(trivial_lattice(g)).has_value());

  // H^0(D5, J_{D5}) = 0 forces free blocks only, but the rank 9 is not a multiple of 10
  auto d5 = dihedral_on_cosets(5);
  GLattice j = chevalley_module(d5, Subgroup::trivial(*d5));
  auto oj = permutation_decomposition_obstruction(j);
  REQUIRE(oj.has_value());
  CHECK(verify_obstruction(*oj));
  ObstructionCertificate tampered = *oj;
  tampered.record.entries.pop_back();
  CHECK_FALSE(verify_obstruction(tampered));
  tampered = *oj;
  tampered.record.h0_lattice[tampered.record.entries[0].witness] = cyc({7});
  CHECK_FALSE(verify_obstruction(tampered));

  CHECK_THROWS_AS(permutation_decomposition_obstruction(j, {3, 1000}), ResourceError);
  CHECK_THROWS_AS(permutation_decomposition_obstruction(j, {64, 2}), ResourceError);
}

TEST_CASE("Shapiro H^0 of coset lattices matches the orbit count") {
  for (int n : {4, 6, 9}) {
    auto g = dihedral_on_cosets(n);
    for (const auto& v : g->subgroup_classes())
      for (const auto& u : g->subgroup_classes())
        CHECK(permutation_h0(*g, v.rep, u.rep) == tate_zero(coset_lattice(g, u.rep), v.rep));
  }
}

TEST_CASE("non-invertibility") {
  auto v4 = parse_group_spec("perm:a=(1 2);b=(3 4)");
  GLattice f = flabby_resolution(chevalley_module(v4, Subgroup::trivial(*v4))).right;
  NonInvertibility ni = non_invertibility_certificate(f, FlabbyOrigin{v4, Subgroup::trivial(*v4)});
  REQUIRE(ni.sylow.has_value());
  REQUIRE(ni.h1.has_value());
  CHECK(ni.certificate() == &*ni.sylow);
  CHECK(ni.sylow->prime == 2);
  CHECK(verify_obstruction(*ni.sylow));
  CHECK(verify_obstruction(*ni.h1));
  CHECK(ni.h1->invariants == cyc({2}));
  ObstructionCertificate bad = *ni.h1;
  bad.invariants = cyc({4});
  CHECK_FALSE(verify_obstruction(bad));

  auto g = dihedral_on_cosets(5);
  GLattice p = flabby_resolution(coset_lattice(g, parse_subgroup_spec(*g, "<y>"))).right;
  NonInvertibility none = non_invertibility_certificate(p);
  CHECK(none.certificate() == nullptr);
  // D5 has cyclic Sylow subgroups, so the group rule stays silent
  CHECK_FALSE(non_invertibility_certificate(p, FlabbyOrigin{g, Subgroup::trivial(*g)}).sylow.has_value());
}

#include <doctest.h>

#include "norm1lat/certify.hpp"
#include "norm1lat/errors.hpp"
#include "norm1lat/parallel.hpp"
#include "norm1lat/resolution.hpp"

using namespace norm1lat;

TEST_CASE("coflabby resolutions") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  for (const GLattice& m : {trivial_lattice(g), coset_lattice(g, h), augmentation_ideal(g, h), chevalley_module(g, h)}) {
    INFO(m.label());
    ExactTriple t = coflabby_resolution(m);
    CHECK(t.kind == ExactTriple::Kind::CoflabbyResolution);
    CHECK(t.mid.has_permutation_basis());
    CHECK(t.mid.rank() == t.left.rank() + t.right.rank());
    CHECK(verify_exact(t));
    CHECK(is_coflabby(t.left).holds);
  }
  ExactTriple z = coflabby_resolution(trivial_lattice(g));
  // one Z[G/U] block per class, each with a single fixed vector
  CHECK(z.blocks.size() == g->subgroup_classes().size());
}

TEST_CASE("flabby resolutions") {
  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  ExactTriple t = flabby_resolution(chevalley_module(g, h));
  CHECK(t.kind == ExactTriple::Kind::FlabbyResolution);
  CHECK(verify_exact(t));
  CHECK(t.mid.rank() == t.left.rank() + t.right.rank());
  for (const auto& c : g->subgroup_classes()) CHECK(tate_minus1(t.right, c.rep).is_trivial());

  ExactTriple p = flabby_resolution(coset_lattice(g, h));
  CHECK(is_flabby(p.right).holds);
  CHECK(is_coflabby(p.right).holds);

  for (int n : {3, 4, 5}) {
    auto d = dihedral_on_cosets(n);
    for (const auto& c : d->subgroup_classes()) {
      for (const GLattice& m : {augmentation_ideal(d, c.rep), chevalley_module(d, c.rep)}) {
        ExactTriple f = flabby_resolution(m);
        CHECK(verify_exact(f));
        CHECK(is_flabby(f.right).holds);
      }
    }
  }
}

TEST_CASE("flabby class fingerprints") {
  auto v4 = parse_group_spec("perm:a=(1 2);b=(3 4)");
  auto fj = flabby_class_invariants(chevalley_module(v4, Subgroup::trivial(*v4)));
  CHECK_FALSE(fj.h1_vanishes());
  CHECK(fj.rows.back().one == AbelianInvariants::from_cyclic_orders(std::vector<Integer>{Integer(2)}));

  auto g = dihedral_on_cosets(6);
  auto h = parse_subgroup_spec(*g, "<x*y>");
  CHECK(flabby_class_invariants(coset_lattice(g, h)).h1_vanishes());
  CHECK(flabby_class_invariants(chevalley_module(g, h)).h1_vanishes());
}

TEST_CASE("resolutions do not depend on the thread count") {
  auto g = dihedral_on_cosets(6);
  GLattice j = chevalley_module(g, parse_subgroup_spec(*g, "<x*y>"));
  set_thread_count(1);
  ExactTriple a = flabby_resolution(j);
  set_thread_count(4);
  ExactTriple b = flabby_resolution(j);
  set_thread_count(0);
  CHECK(a.inj.matrix == b.inj.matrix);
  CHECK(a.surj.matrix == b.surj.matrix);
  CHECK(a.right.generator_matrices() == b.right.generator_matrices());
}

TEST_CASE("verify_exact rejects broken triples") {
  auto g = dihedral_on_cosets(5);
  auto h = parse_subgroup_spec(*g, "<y>");
  auto seq = augmentation_sequence(g, h);
  ExactTriple t{seq.ideal, seq.permutation, seq.trivial, seq.incl, seq.eps, ExactTriple::Kind::General, {}};
  CHECK(verify_exact(t));
  ExactTriple doubled = t;
  doubled.surj.matrix = t.surj.matrix.scaled(Integer(2));
  CheckResult r = verify_exact(doubled);
  CHECK_FALSE(r);
  CHECK(r.failure.find("Z/2") != std::string::npos);
  ExactTriple thin = t;
  thin.inj.matrix = t.inj.matrix.scaled(Integer(3));
  CHECK_FALSE(verify_exact(thin));
  ExactTriple bad = t;
  bad.inj.matrix = IntMatrix(2, 2);
  CHECK_THROWS_AS(verify_exact(bad), UsageError);
}

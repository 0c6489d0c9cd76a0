#include <doctest.h>

#include "norm1lat/cohomology.hpp"
#include "norm1lat/corpus.hpp"
#include "norm1lat/errors.hpp"
#include "oracles.hpp"

using namespace norm1lat;

TEST_CASE("lattice spec ranks") {
  GroupPtr g = dihedral_on_cosets(6);
  CHECK(parse_lattice_spec(g, "Z").rank() == 1);
  CHECK(parse_lattice_spec(g, "Z^3").rank() == 3);
  CHECK(parse_lattice_spec(g, "P:<x*y>").rank() == 6);
  CHECK(parse_lattice_spec(g, "P:1").rank() == 12);
  CHECK(parse_lattice_spec(g, "I:<x*y>").rank() == 5);
  CHECK(parse_lattice_spec(g, "J:<y>").rank() == 5);
  CHECK(parse_lattice_spec(g, "P:<x> + J:<x*y> + Z^2").rank() == 2 + 5 + 2);
}

TEST_CASE("lattice spec semantics") {
  GroupPtr g = dihedral_on_cosets(4);
  Subgroup whole = Subgroup::whole(*g);
  for (const auto& c : g->subgroup_classes()) {
    std::string h = c.rep.describe(*g);
    // Round trip through describe.
    CHECK(parse_subgroup_spec(*g, h) == c.rep);
    GLattice p = parse_lattice_spec(g, "P:" + h);
    CHECK(p.rank() * c.rep.order() == g->order());
    CHECK(oracle::h0_direct(p, whole) == tate_zero(p, whole));
    CHECK(oracle::h0_direct(p, whole).order() == Integer(static_cast<long long>(c.rep.order())));
    if (c.rep.order() == g->order()) continue;
    GLattice i = parse_lattice_spec(g, "I:" + h);
    GLattice j = parse_lattice_spec(g, "J:" + h);
    // J = Hom(I, Z): generators act by the inverse transpose.
    for (std::size_t k = 0; k < g->num_generators(); ++k)
      CHECK(j.generator_matrix(k) * i.generator_matrix(k).transpose() == IntMatrix::identity(i.rank()));
    CHECK(is_flabby(parse_lattice_spec(g, "F:" + h)).holds);
    CHECK(is_coflabby(parse_lattice_spec(g, "Q:" + h)).holds);
  }
}

TEST_CASE("malformed lattice specs") {
  GroupPtr g = dihedral_on_cosets(5);
  for (const char* bad : {"", "Z^0", "Z^x", "X:<x>", "P:<z>", "I:<x,y>", "J:<x, y>", "P:<x>+", "P:<x>++Z", "P"})
    CHECK_THROWS_AS(parse_lattice_spec(g, bad), UsageError);
}

TEST_CASE("corpus lattices are deterministic and within bounds") {
  auto a = corpus_lattices(30, 7, 16, 12);
  auto b = corpus_lattices(30, 7, 16, 12);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].group_spec == b[i].group_spec);
    CHECK(a[i].lattice_spec == b[i].lattice_spec);
    GroupPtr g = parse_group_spec(a[i].group_spec);
    CHECK(g->order() <= 16);
    CHECK(parse_lattice_spec(g, a[i].lattice_spec).rank() <= 12);
  }
  for (const auto& s : corpus_group_specs()) CHECK(parse_group_spec(s)->order() <= 48);
}

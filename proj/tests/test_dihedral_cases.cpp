#include <doctest.h>

#include <chrono>

#include "norm1lat/dihedral_cases.hpp"
#include "norm1lat/errors.hpp"
#include "oracles.hpp"

using namespace norm1lat;

namespace {

const Claim* claim(const DihedralCase& c, const std::string& id) {
  for (const auto& cl : c.claims)
    if (cl.id == id) return &cl;
  return nullptr;
}

void require_all_pass(const DihedralCase& c) {
  for (const auto& cl : c.claims) {
    INFO(to_string(c.id) << " n=" << c.n << " " << cl.id << ": " << cl.detail);
    CHECK(cl.passed);
  }
}

CaseOptions no_search() {
  CaseOptions o;
  o.search_route = false;
  return o;
}

}  // namespace

TEST_CASE("bezout_two") {
  CHECK(bezout_two(3) == std::pair<long long, long long>{-1, 1});
  CHECK(bezout_two(1) == std::pair<long long, long long>{0, 1});
  for (long long m : {5, 7, 9, 11, 15, 21}) {
    auto [u, v] = bezout_two(m);
    CHECK(2 * u + m * v == 1);
    CHECK(2 * (u < 0 ? -u : u) <= m);
  }
  CHECK_THROWS_AS(bezout_two(4), UsageError);
}

TEST_CASE("case ids") {
  CHECK(parse_case_id("main_ii") == CaseId::MainII);
  CHECK(parse_case_id("appendix-galois") == CaseId::AppendixGalois);
  CHECK_FALSE(parse_case_id("main-iii").has_value());
  CHECK(std::string(to_string(CaseId::AppendixC2)) == "appendix-c2");
}

TEST_CASE("parameter ranges") {
  CHECK_THROWS_AS(build_main_ii(8), UsageError);
  CHECK_THROWS_AS(build_main_ii(2), UsageError);
  CHECK_THROWS_AS(build_main_i(6), UsageError);
  CHECK_THROWS_AS(build_appendix_galois(4), UsageError);
  CHECK_THROWS_AS(build_appendix_c2(1), UsageError);
}

TEST_CASE("main ii, n = 6") {
  DihedralCase c = build_main_ii(6);
  REQUIRE(c.claims.size() == 7);
  require_all_pass(c);
  CHECK(c.verdict == Verdict::StablyRational);
  CHECK(c.u == -1);
  CHECK(c.v == 1);
  REQUIRE(c.lattice("P"));
  CHECK(c.lattice("P")->rank() == 12);
  REQUIRE(c.lattice("C"));
  CHECK(c.lattice("C")->rank() == 7);
  CHECK(c.dimensions.to_string() == "5 + 3 + 3 + 2 = 13 = 6 + 6 + 1");

  // C + Z against its permutation target, by cohomology alone.
  const GLattice* cz = c.lattice("C + Z");
  REQUIRE(cz);
  GroupPtr d3 = cz->group_ptr();
  GLattice target = permutation_lattice(d3, {parse_subgroup_spec(*d3, "<x^2*y>"), parse_subgroup_spec(*d3, "<x*y>"),
                                             parse_subgroup_spec(*d3, "<x>")});
  for (const auto& cl : d3->subgroup_classes()) {
    CHECK(oracle::h1_bar(*cz, cl.rep) == oracle::h1_bar(target, cl.rep));
    CHECK(oracle::h0_direct(*cz, cl.rep) == oracle::h0_direct(target, cl.rep));
  }
  // H^0(D_3, C + Z) = Z/2 + Z/6 by the direct quotient.
  std::vector<Integer> orders{Integer(2), Integer(6)};
  CHECK(oracle::h0_direct(*cz, Subgroup::whole(*d3)) == AbelianInvariants::from_cyclic_orders(orders));
  bool search_found = false;
  for (const auto& r : c.routes)
    if (r.name == "search") search_found = r.status == "found";
  CHECK(search_found);
}

TEST_CASE("main ii, n = 10") {
  DihedralCase c = build_main_ii(10, no_search());
  REQUIRE(c.claims.size() == 7);
  require_all_pass(c);
  CHECK(c.lattice("C")->rank() == 11);
  CHECK(c.u == -2);
  CHECK(c.v == 1);
  CHECK(c.dimensions.holds());
}

TEST_CASE("main ii negative control") {
  CaseOptions o = no_search();
  o.perturb_gamma = true;
  DihedralCase c = build_main_ii(6, o);
  CHECK_FALSE(c.all_claims_pass());
  CHECK_FALSE(claim(c, "phi_surjective")->passed);
  CHECK_FALSE(claim(c, "rank_C")->passed);
  CHECK_FALSE(claim(c, "flabby_resolution")->passed);
  CHECK(c.verdict == Verdict::Unsupported);
}

TEST_CASE("main i") {
  for (int n : {4, 8}) {
    DihedralCase c = build_main_i(n);
    CAPTURE(n);
    REQUIRE(c.claims.size() == 6);
    require_all_pass(c);
    CHECK(c.verdict == Verdict::NotRetractRational);
    CHECK_FALSE(c.dimensions.applicable);
    REQUIRE(!c.obstructions.empty());
    CHECK(c.obstructions[0].cert.kind == ObstructionCertificate::Kind::NoncyclicSylow);
    for (const auto& o : c.obstructions) CHECK(verify_obstruction(o.cert).ok);
  }
}

TEST_CASE("appendix galois") {
  for (int n : {3, 5}) {
    DihedralCase c = build_appendix_galois(n, n == 3 ? CaseOptions{} : no_search());
    CAPTURE(n);
    require_all_pass(c);
    CHECK(c.verdict == Verdict::StablyRational);
    CHECK(c.lattice("C")->rank() == static_cast<std::size_t>(2 * n + 1));
    for (const auto& f : c.findings) {
      INFO(f.id);
      CHECK(f.confirmed);
    }
    const std::size_t nn = static_cast<std::size_t>(n);
    CHECK(c.dimensions.lhs_total() == 4 * nn + 1);
    CHECK(c.dimensions.rhs_total() == 4 * nn + 1);
  }
  DihedralCase c3 = build_appendix_galois(3);
  bool found = false;
  for (const auto& r : c3.routes) found = found || (r.name == "search" && r.status == "found");
  CHECK(found);
  CHECK(c3.dimensions.to_string() == "5 + 3 + 3 + 2 = 13 = 6 + 6 + 1");
}

TEST_CASE("appendix c2") {
  for (int n : {3, 5, 9}) {
    DihedralCase c = build_appendix_c2(n, no_search());
    CAPTURE(n);
    require_all_pass(c);
    CHECK(c.verdict == Verdict::StablyRational);
    CHECK(c.lattice("C")->rank() == static_cast<std::size_t>(n + 1));
    REQUIRE(c.findings.size() == 3);
    for (const auto& f : c.findings) {
      INFO(f.id);
      CHECK(f.confirmed);
    }
    CHECK(c.dimensions.holds());
    CHECK(c.dimensions.lhs_total() == static_cast<std::size_t>(2 * n + 1));
  }
}

TEST_CASE("permuted basis certificates") {
  auto d3 = dihedral_on_cosets(3);
  Subgroup h = parse_subgroup_spec(*d3, "<x*y>");
  GLattice p = coset_lattice(d3, h);
  // The block is based at any point of the orbit.
  auto cert = certificate_from_permuted_basis(p, IntMatrix::identity(3), {parse_subgroup_spec(*d3, "<y>")});
  REQUIRE(cert.has_value());
  CHECK(verify_iso(*cert).ok);
  std::string why;
  CHECK_FALSE(certificate_from_permuted_basis(p, IntMatrix::identity(3), {parse_subgroup_spec(*d3, "<x>")}, &why));
  CHECK(!why.empty());
  IntMatrix b = IntMatrix::identity(3);
  b(0, 1) = 1;
  CHECK_FALSE(certificate_from_permuted_basis(p, b, {h}, &why));
  CHECK(why == "the group does not permute the basis");
}

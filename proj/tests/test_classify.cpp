#include <doctest.h>

#include "norm1lat/classify.hpp"
#include "norm1lat/errors.hpp"

using namespace norm1lat;

namespace {

// Independent statement of the decision table on (n, |H|).
Verdict expected(int n, std::size_t h_order) {
  if (h_order == 1) return n % 2 == 1 ? Verdict::StablyRational : Verdict::NotRetractRational;
  return n % 4 == 0 ? Verdict::NotRetractRational : Verdict::StablyRational;
}

}  // namespace

TEST_CASE("decision table, n = 3..12") {
  for (int n = 3; n <= 12; ++n) {
    GroupPtr g = dihedral_on_cosets(n);
    for (const auto& cl : g->subgroup_classes()) {
      if (!core_is_trivial(*g, cl.rep)) continue;
      CAPTURE(n);
      CAPTURE(cl.rep.describe(*g));
      Classification c = classify(g, cl.rep);
      CHECK(c.verdict == expected(n, cl.rep.order()));
      CHECK(c.verdict != Verdict::RetractNotKnownStable);
      CheckResult v = verify_classification(c);
      INFO(v.failure);
      CHECK(v.ok);
      if (c.verdict == Verdict::NotRetractRational) CHECK(!c.obstructions.empty());
      if (c.verdict == Verdict::StablyRational) CHECK(c.construction.has_value());
    }
  }
}

TEST_CASE("automorphism and conjugation invariance") {
  for (int n : {4, 6, 8, 10}) {
    GroupPtr g = dihedral_on_cosets(n);
    Classification a = classify(g, parse_subgroup_spec(*g, "<y>"));
    Classification b = classify(g, parse_subgroup_spec(*g, "<x*y>"));
    Classification c = classify(g, parse_subgroup_spec(*g, "<x^2*y>"));
    CHECK(a.verdict == b.verdict);
    CHECK(a.verdict == c.verdict);
    CHECK(a.rule == b.rule);
    // <y> and <xy> are not conjugate for n even, so exactly one needs the automorphism.
    CHECK(a.transport->automorphism_power + b.transport->automorphism_power == 1);
    CHECK(c.transport->automorphism_power == a.transport->automorphism_power);
  }
}

TEST_CASE("spec examples") {
  Classification a = classify("dihedral:n=4", "<x*y>");
  CHECK(a.verdict == Verdict::NotRetractRational);
  CHECK(a.rule == "dihedral-0mod4-c2");
  Classification b = classify("dihedral:n=6", "<x*y>");
  CHECK(b.verdict == Verdict::StablyRational);
  CHECK(b.rule == "dihedral-2mod4-c2");
  REQUIRE(b.construction);
  CHECK(b.construction->id == CaseId::MainII);
  Classification c = classify("dihedral:n=3", "1");
  CHECK(c.verdict == Verdict::StablyRational);
  CHECK(c.rule == "dihedral-odd-galois");
}

TEST_CASE("other presentations") {
  // S_3 and D_4 given by arbitrary generators.
  Classification a = classify("perm:x=(1 2 3);y=(1 2)", "<y>");
  CHECK(a.verdict == Verdict::StablyRational);
  CHECK(verify_classification(a).ok);
  Classification b = classify("perm:a=(1 2 3 4);b=(1 3)", "<b>");
  CHECK(b.verdict == Verdict::NotRetractRational);
  CHECK(verify_classification(b).ok);
  Classification c = classify("dihedral-regular:n=5", "1");
  CHECK(c.verdict == Verdict::StablyRational);
  CHECK(verify_classification(c).ok);
}

TEST_CASE("cyclic and unsupported") {
  for (int m : {2, 5, 8}) {
    Classification c = classify("cyclic:n=" + std::to_string(m), "1");
    CHECK(c.verdict == Verdict::StablyRational);
    CHECK(c.rule == "cyclic-galois");
    REQUIRE(c.resolution);
    CHECK(verify_classification(c).ok);
  }
  CHECK(classify("dihedral:n=6", "<x^3>").rule == "not-core-free");
  CHECK(classify("dihedral:n=6", "<x^3>").verdict == Verdict::Unsupported);
  CHECK(classify("perm:x=(1 2)(3 4);y=(1 3)(2 4)", "1").rule == "unsupported-group");
  CHECK(classify("perm:x=(1 2 3);y=(2 3 4)", "1").verdict == Verdict::Unsupported);
  CHECK_THROWS_AS(classify("dihedral:n=6", "<q>"), UsageError);
}

TEST_CASE("tampered classifications are rejected") {
  Classification c = classify("dihedral:n=6", "<y>");
  REQUIRE(verify_classification(c).ok);
  Classification t = c;
  t.isos[0].cert.matrix(0, 0) += Integer(1);
  CHECK_FALSE(verify_classification(t).ok);
  t = c;
  t.transport->map[1] = t.transport->map[2];
  CHECK_FALSE(verify_classification(t).ok);
  t = c;
  t.construction->claims[0].passed = false;
  CHECK_FALSE(verify_classification(t).ok);

  Classification d = classify("dihedral:n=8", "<y>");
  REQUIRE(verify_classification(d).ok);
  Classification u = d;
  u.obstructions[0].cert.sylow = Subgroup::trivial(*u.obstructions[0].cert.group);
  CHECK_FALSE(verify_classification(u).ok);
}

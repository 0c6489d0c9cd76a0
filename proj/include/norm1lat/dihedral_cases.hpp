#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "norm1lat/certify.hpp"

namespace norm1lat {

enum class CaseId { MainI, MainII, AppendixGalois, AppendixC2 };
const char* to_string(CaseId c);  // "main-i", "main-ii", "appendix-galois", "appendix-c2"
// Accepts the names above with '-' or '_'.
std::optional<CaseId> parse_case_id(std::string_view s);

struct Claim {
  std::string id;
  std::string statement;
  bool passed = false;
  std::string detail;
};

// A discrepancy between a printed formula and the computed object, checked by
// evaluating the printed version.
struct Finding {
  std::string id;
  std::string text;
  bool confirmed = false;  // the printed version really fails
};

struct DimensionTerm {
  std::string label;
  std::size_t value = 0;
};
struct DimensionReport {
  bool applicable = false;
  std::vector<DimensionTerm> lhs, rhs;
  std::size_t lhs_total() const;
  std::size_t rhs_total() const;
  bool holds() const { return applicable && lhs_total() == rhs_total(); }
  std::string to_string() const;  // "5 + 3 + 3 + 2 = 13 = 6 + 6 + 1"
};

struct NamedIso {
  std::string name;
  IsoCertificate cert;
};
struct NamedObstruction {
  std::string name;
  ObstructionCertificate cert;
};

// Which route produced (or failed to produce) a certificate.
struct RouteRecord {
  std::string name;
  std::string status;
  std::string detail;
};

enum class Verdict { StablyRational, NotRetractRational, RetractNotKnownStable, Unsupported };
const char* to_string(Verdict v);

struct DihedralCase {
  CaseId id = CaseId::MainII;
  int n = 0;
  int m = 0;  // n / 2 for the main cases, n for the appendix cases
  GroupPtr group;
  Subgroup h;
  long long u = 0, v = 0;  // 2u + mv = 1 (stably rational cases)
  std::vector<std::pair<std::string, GLattice>> lattices;
  std::vector<std::pair<std::string, IntMatrix>> maps;
  std::vector<Claim> claims;
  std::vector<Finding> findings;
  std::vector<NamedIso> isos;
  std::vector<NamedObstruction> obstructions;
  std::vector<RouteRecord> routes;
  DimensionReport dimensions;
  Verdict verdict = Verdict::Unsupported;

  bool all_claims_pass() const;
  const GLattice* lattice(std::string_view name) const;
};

struct CaseOptions {
  IsoSearchOptions search{3, 2'000'000};
  // Also run the generic isomorphism search as a second certificate route.
  bool search_route = true;
  // Negative control: add f_1 to every gamma image in the main (ii) map.
  bool perturb_gamma = false;
  // Compare H^1 of C° with the generic flabby resolution of J (costly for |G| > 20).
  bool compare_generic = true;
};

// 2u + m v = 1 with |u| minimal (ties to positive u); m odd.
std::pair<long long, long long> bezout_two(long long m);

// Throw UsageError on a parameter outside the case's range.
DihedralCase build_main_ii(int n, const CaseOptions& opt = {});         // n = 2 mod 4, n >= 6
DihedralCase build_main_i(int n, const CaseOptions& opt = {});          // n = 0 mod 4, n >= 4
DihedralCase build_appendix_galois(int n, const CaseOptions& opt = {});  // n odd >= 3
DihedralCase build_appendix_c2(int n, const CaseOptions& opt = {});      // n odd >= 3
DihedralCase build_case(CaseId id, int n, const CaseOptions& opt = {});

DimensionReport dimension_report(const DihedralCase& c);

// Z^N with the group's permutation action on its points.
GLattice point_lattice(GroupPtr g);

// Orbits of a basis permuted by the group, matched up to conjugacy with the
// target subgroups, give a certificate Z[G/U_1] + ... -> m. The columns of b
// are the basis in the coordinates of m.
std::optional<IsoCertificate> certificate_from_permuted_basis(const GLattice& m, const IntMatrix& b,
                                                              const std::vector<Subgroup>& targets,
                                                              std::string* why = nullptr);

}  // namespace norm1lat

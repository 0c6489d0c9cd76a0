// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

// The oracles use doctest assertions; compiled out here.
#define DOCTEST_CONFIG_DISABLE
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "norm1lat/parallel.hpp"
#include "norm1lat/report.hpp"
#include "oracles.hpp"

using namespace norm1lat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  double s = seconds_since(t);
  if (budget_s > 0) o.expect(s < budget_s, "over the time budget of " + std::to_string(int(budget_s)) + " s");
  std::printf("%s [%d] %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, s, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
  std::fflush(stdout);
  return o.ok;
}

const Claim* claim(const DihedralCase& c, std::string_view id) {
  for (const auto& cl : c.claims)
    if (cl.id == id) return &cl;
  return nullptr;
}

void all_claims(Outcome& o, const DihedralCase& c) {
  for (const auto& cl : c.claims)
    o.expect(cl.passed, std::string(to_string(c.id)) + " n=" + std::to_string(c.n) + " " + cl.id + ": " + cl.detail);
}

AbelianInvariants cyclic_of(std::size_t k) {
  if (k == 1) return {};
  return AbelianInvariants{{Integer(static_cast<long long>(k))}, 0};
}

// Built once, shared by criteria 1, 2 and 5.
std::map<int, DihedralCase> main_ii;
std::vector<GLattice> small_lattices;

void collect_small(const DihedralCase& c) {
  for (const auto& [name, l] : c.lattices)
    if (l.rank() <= 12) small_lattices.push_back(l);
}

}  // namespace

int main() {
  bool all = true;

  all &= run(1, "main-ii n = 6, 10, 14: phi onto, rank C = 2m+1, C + Z certificate, det = -1", 60, [](Outcome& o) {
    std::string notes;
    for (int n : {6, 10, 14}) {
      DihedralCase c = build_main_ii(n);
      int m = n / 2;
      all_claims(o, c);
      o.expect(claim(c, "phi_surjective") && claim(c, "phi_surjective")->passed, "phi_surjective missing");
      o.expect(c.lattice("C") && c.lattice("C")->rank() == static_cast<std::size_t>(2 * m + 1), "rank C");
      const GLattice* cz = c.lattice("C + Z");
      o.expect(cz && cz->group().order() == static_cast<std::size_t>(n), "C + Z is not over D_m");
      bool certified = false;
      for (const auto& i : c.isos)
        if (i.cert.target.label() == "C + Z" || i.cert.source.label() == "C + Z") certified |= verify_iso(i.cert).ok;
      o.expect(certified, "no verified certificate for C + Z at n=" + std::to_string(n));
      o.expect(-2 * c.u - m * c.v == -1, "-2u - mv != -1");
      const Claim* sp = claim(c, "stably_permutation");
      o.expect(sp && sp->detail.find("det = -1") != std::string::npos, "completion determinant not -1");
      notes += (notes.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " rank C=" +
               std::to_string(c.lattice("C")->rank());
      collect_small(c);
      main_ii.emplace(n, std::move(c));
    }
    o.detail = notes;
  });

  all &= run(2, "H^0(D_m, C) = Z/2 and C is not permutation, m = 3, 5, 7", 60, [](Outcome& o) {
    std::string notes;
    for (int n : {6, 10, 14}) {
      auto it = main_ii.find(n);
      if (it == main_ii.end()) it = main_ii.emplace(n, build_main_ii(n)).first;
      const DihedralCase& c = it->second;
      o.expect(!c.obstructions.empty(), "no obstruction recorded at m=" + std::to_string(n / 2));
      if (c.obstructions.empty()) continue;
      const GLattice& cq = c.obstructions.front().cert.lattice;
      o.expect(cq.group().order() == static_cast<std::size_t>(n), "C is not over D_m");
      Subgroup whole = Subgroup::whole(cq.group());
      AbelianInvariants h0 = oracle::h0_direct(cq, whole);
      o.expect(h0 == cyclic_of(2), "H^0 = " + h0.to_string() + " at m=" + std::to_string(n / 2));
      o.expect(tate_zero(cq, whole) == h0, "engine and oracle disagree on H^0");
      auto ob = permutation_decomposition_obstruction(cq);
      o.expect(ob && verify_obstruction(*ob).ok, "obstruction not found at m=" + std::to_string(n / 2));
      if (ob)
        notes += (notes.empty() ? "" : "; ") + std::string("m=") + std::to_string(n / 2) + " " +
                 std::to_string(ob->record.entries.size()) + " decompositions ruled out";
    }
    o.detail = notes;
  });

  all &= run(3, "main-i n = 4, 8, 12: restriction claims, Sylow obstruction, NotRetractRational", 300, [](Outcome& o) {
    std::string notes;
    for (int n : {4, 8, 12}) {
      DihedralCase c = build_main_i(n);
      all_claims(o, c);
      std::string sylow = "missing", h1 = "missing";
      for (const auto& r : c.routes) {
        if (r.name == "sylow") sylow = r.status;
        if (r.name == "h1") h1 = r.status;
      }
      o.expect(sylow == "found", "Sylow strategy did not fire at n=" + std::to_string(n));
      for (const auto& ob : c.obstructions) o.expect(verify_obstruction(ob.cert).ok, ob.name + " does not verify");
      Classification cl = classify("dihedral:n=" + std::to_string(n), "<x*y>");
      o.expect(cl.verdict == Verdict::NotRetractRational, "classify verdict " + std::string(to_string(cl.verdict)));
      o.expect(verify_classification(cl).ok, "classification does not verify");
      notes += (notes.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " sylow " + sylow + ", h1 " + h1;
      collect_small(c);
    }
    o.detail = notes;
  });

  all &= run(4, "appendix Galois and C2 cases, n = 3, 5, 7, with 4n+1 and 2n+1 identities", 120, [](Outcome& o) {
    std::string notes;
    for (int n : {3, 5, 7}) {
      for (bool galois : {true, false}) {
        DihedralCase c = galois ? build_appendix_galois(n) : build_appendix_c2(n);
        all_claims(o, c);
        std::size_t want_rank = static_cast<std::size_t>(galois ? 2 * n + 1 : n + 1);
        std::size_t want_dim = static_cast<std::size_t>(galois ? 4 * n + 1 : 2 * n + 1);
        o.expect(c.lattice("C") && c.lattice("C")->rank() == want_rank, "rank C");
        o.expect(c.dimensions.holds() && c.dimensions.lhs_total() == want_dim,
                 "dimension identity " + c.dimensions.to_string());
        bool certified = false;
        for (const auto& i : c.isos) certified |= verify_iso(i.cert).ok;
        o.expect(certified, "no verified stably permutation certificate");
        notes += (notes.empty() ? "" : "; ") + std::string(galois ? "galois" : "c2") + " n=" + std::to_string(n) +
                 " " + c.dimensions.to_string();
        collect_small(c);
      }
    }
    o.detail = notes;
  });

  all &= run(5, "presentation H^1 equals the bar-complex oracle", 0, [](Outcome& o) {
    std::size_t lattices = 0, comparisons = 0;
    auto compare = [&](const GLattice& m, const std::string& what) {
      ++lattices;
      for (const auto& cls : m.group().subgroup_classes()) {
        ++comparisons;
        AbelianInvariants want = oracle::h1_bar(m, cls.rep);
        o.expect(h1(m, cls.rep) == want, what + " at " + cls.rep.describe(m.group()));
      }
    };
    for (const auto& m : small_lattices) compare(m, m.label() + " over " + m.group().describe());
    for (const auto& l : corpus_lattices(20, 5, 16, 8))
      compare(parse_lattice_spec(parse_group_spec(l.group_spec), l.lattice_spec), l.group_spec + " " + l.lattice_spec);
    o.detail = std::to_string(lattices) + " lattices, " + std::to_string(comparisons) + " subgroup classes";
  });

  all &= run(6, "Shapiro: H^0(G, Z[G/U]) = Z/|U|, H^-1 and H^1 of permutation lattices vanish", 0, [](Outcome& o) {
    std::size_t checks = 0;
    for (const auto& spec : corpus_group_specs()) {
      GroupPtr g = parse_group_spec(spec);
      const auto& classes = g->subgroup_classes();
      Subgroup whole = Subgroup::whole(*g);
      for (const auto& u : classes) {
        GLattice p = parse_lattice_spec(g, "P:" + u.rep.describe(*g));
        ++checks;
        o.expect(tate_zero(p, whole) == cyclic_of(u.rep.order()), spec + " H^0 of P:" + u.rep.describe(*g));
        for (const auto& v : classes) {
          checks += 2;
          o.expect(tate_minus1(p, v.rep).is_trivial(), spec + " H^-1 at " + v.rep.describe(*g));
          o.expect(h1(p, v.rep).is_trivial(), spec + " H^1 at " + v.rep.describe(*g));
        }
      }
    }
    o.detail = std::to_string(corpus_group_specs().size()) + " groups, " + std::to_string(checks) + " checks";
  });

  all &= run(7, "flabby resolutions of 50 corpus lattices, byte-identical across thread counts", 0, [](Outcome& o) {
    auto lattices = corpus_lattices(50, 11, 16, 10);
    auto pass = [&](std::size_t threads) {
      set_thread_count(threads);
      std::string dump;
      for (const auto& l : lattices) {
        GLattice m = parse_lattice_spec(parse_group_spec(l.group_spec), l.lattice_spec);
        ExactTriple t = flabby_resolution(m);
        CheckResult ex = verify_exact(t);
        o.expect(ex.ok, l.group_spec + " " + l.lattice_spec + ": " + ex.failure);
        o.expect(is_flabby(t.right).holds, l.group_spec + " " + l.lattice_spec + ": right term not flabby");
        dump += to_json(t, {true}).dump() + "\n";
      }
      return dump;
    };
    std::size_t saved = thread_count();
    std::string a = pass(1), b = pass(4);
    set_thread_count(saved);
    o.expect(a == b, "reports differ between 1 and 4 threads");
    o.detail = std::to_string(lattices.size()) + " lattices, report " + std::to_string(a.size()) + " bytes";
  });

  all &= run(8, "decision table n = 3..16, every core-free H, certificates and automorphism invariance", 0,
             [](Outcome& o) {
               std::size_t cases = 0;
               for (int n = 3; n <= 16; ++n) {
                 GroupPtr g = dihedral_on_cosets(n);
                 for (const auto& cls : g->subgroup_classes()) {
                   if (!core_is_trivial(*g, cls.rep)) continue;
                   ++cases;
                   std::size_t k = cls.rep.order();
                   Verdict want = k == 1 ? (n % 2 ? Verdict::StablyRational : Verdict::NotRetractRational)
                                         : (n % 4 == 0 ? Verdict::NotRetractRational : Verdict::StablyRational);
                   Classification c = classify(g, cls.rep);
                   std::string where = "n=" + std::to_string(n) + " H=" + cls.rep.describe(*g);
                   o.expect(c.verdict == want, where + ": " + to_string(c.verdict));
                   o.expect(!c.isos.empty() || !c.obstructions.empty() || c.construction, where + ": no certificate");
                   CheckResult v = verify_classification(c);
                   o.expect(v.ok, where + ": " + v.failure);
                 }
                 Verdict a = classify(g, parse_subgroup_spec(*g, "<y>")).verdict;
                 Verdict b = classify(g, parse_subgroup_spec(*g, "<x*y>")).verdict;
                 o.expect(a == b, "n=" + std::to_string(n) + ": <y> and <x*y> differ");
               }
               o.detail = std::to_string(cases) + " (n, H) classes";
             });

  return all ? 0 : 1;
}

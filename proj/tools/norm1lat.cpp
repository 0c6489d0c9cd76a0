#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

#include "norm1lat/errors.hpp"
#include "norm1lat/parallel.hpp"
#include "norm1lat/report.hpp"

using namespace norm1lat;

namespace {

enum Exit { kOk = 0, kClaimFailed = 1, kUsage = 2, kResource = 3 };

struct Args {
  std::string group, subgroup = "1", lattice, case_name, format = "json";
  int n = 0;
  int search_bound = 3;
  std::size_t max_group_order = 400;
  bool matrices = false, timings = false;
};

int emit(const Json& j, const Args& a) {
  if (a.format == "text")
    std::cout << render_text(j);
  else
    std::cout << j.dump(2) << "\n";
  return kOk;
}

Json header(const char* command) { return Json{{"schema", kReportSchema}, {"command", command}}; }

int run_classify(const Args& a, Json& out) {
  ClassifyOptions opt;
  opt.cases.search.search_bound = a.search_bound;
  opt.max_group_order = a.max_group_order;
  Classification c = classify(a.group, a.subgroup, opt);
  out["result"] = to_json(c, {a.matrices});
  return out["result"]["verified"].get<bool>() ? kOk : kClaimFailed;
}

int run_verify(const Args& a, Json& out) {
  auto id = parse_case_id(a.case_name);
  if (!id) throw UsageError("unknown case '" + a.case_name + "' (main-i, main-ii, appendix-galois, appendix-c2)");
  CaseOptions opt;
  opt.search.search_bound = a.search_bound;
  DihedralCase c = build_case(*id, a.n, opt);
  out["result"] = to_json(c, {a.matrices});
  return c.all_claims_pass() ? kOk : kClaimFailed;
}

int run_cohomology(const Args& a, Json& out) {
  GroupPtr g = parse_group_spec(a.group, a.max_group_order);
  GLattice m = parse_lattice_spec(g, a.lattice);
  std::vector<CohomologyRow> rows;
  if (a.subgroup == "all") {
    rows = cohomology_table(m);
  } else {
    Subgroup u = parse_subgroup_spec(*g, a.subgroup);
    std::size_t size = 0;
    for (const auto& cls : g->subgroup_classes())
      if (is_conjugate(*g, cls.rep, u).has_value()) size = cls.size;
    rows = cohomology_table(m, {SubgroupClass{u, size}});
  }
  out["group"] = to_json(*g);
  out["lattice"] = to_json(m, {a.matrices});
  out["lattice"]["spec"] = a.lattice;
  out["rows"] = cohomology_json(m, rows);
  return kOk;
}

int run_resolve(const Args& a, Json& out) {
  GroupPtr g = parse_group_spec(a.group, a.max_group_order);
  std::string spec = a.lattice.empty() ? "J:" + a.subgroup : a.lattice;
  GLattice m = parse_lattice_spec(g, spec);
  ExactTriple t = flabby_resolution(m);
  PredicateResult fl = is_flabby(t.right);
  out["group"] = to_json(*g);
  out["lattice_spec"] = spec;
  out["resolution"] = to_json(t, {true});
  out["right_flabby"] = fl.holds;
  out["right_h1_vanishes"] = is_coflabby(t.right).holds;
  return out["resolution"]["exact"].get<bool>() && fl.holds ? kOk : kClaimFailed;
}

// Small end-to-end pass over every command path.
int run_selftest(const Args& a, Json& out) {
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back({{"check", name}, {"passed", ok}});
    all = all && ok;
  };
  CaseOptions copt;
  copt.search.search_bound = a.search_bound;
  record("main-ii n=6", build_main_ii(6, copt).all_claims_pass());
  record("main-i n=4", build_main_i(4, copt).all_claims_pass());
  record("appendix-galois n=3", build_appendix_galois(3, copt).all_claims_pass());
  record("appendix-c2 n=3", build_appendix_c2(3, copt).all_claims_pass());
  const std::pair<int, Verdict> table[] = {{3, Verdict::StablyRational}, {4, Verdict::NotRetractRational},
                                           {5, Verdict::StablyRational}, {6, Verdict::StablyRational},
                                           {8, Verdict::NotRetractRational}};
  for (auto [n, v] : table) {
    Classification c = classify("dihedral:n=" + std::to_string(n), "<x*y>");
    record("classify dihedral:n=" + std::to_string(n) + " <x*y>", c.verdict == v && verify_classification(c).ok);
  }
  GroupPtr d6 = parse_group_spec("dihedral:n=6");
  for (const auto& cls : d6->subgroup_classes()) {
    GLattice p = parse_lattice_spec(d6, "P:" + cls.rep.describe(*d6));
    std::string want = cls.rep.order() == 1 ? "0" : "Z/" + std::to_string(cls.rep.order());
    bool ok = tate_zero(p, Subgroup::whole(*d6)).to_string() == want && is_flabby(p).holds && is_coflabby(p).holds;
    record("shapiro dihedral:n=6 " + cls.rep.describe(*d6), ok);
  }
  GLattice j = parse_lattice_spec(d6, "J:<x*y>");
  ExactTriple t = flabby_resolution(j);
  record("flabby resolution J:<x*y> over dihedral:n=6", verify_exact(t).ok && is_flabby(t.right).holds);
  out["checks"] = checks;
  out["passed"] = all;
  return all ? kOk : kClaimFailed;
}

// {"command": "classify", "group": ..., ...} -> argv tokens.
std::vector<std::string> job_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read job file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("job file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
    throw UsageError("job file must be an object with a string \"command\"");
  std::vector<std::string> tok{j["command"].get<std::string>()};
  for (const auto& [k, v] : j.items()) {
    if (k == "command") continue;
    std::string flag = "--" + k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (v.is_boolean()) {
      if (v.get<bool>()) tok.push_back(flag);
    } else if (v.is_string()) {
      tok.insert(tok.end(), {flag, v.get<std::string>()});
    } else if (v.is_number_integer()) {
      tok.insert(tok.end(), {flag, std::to_string(v.get<long long>())});
    } else {
      throw UsageError("job file: unsupported value for '" + k + "'");
    }
  }
  return tok;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  std::string job;
  CLI::App app{"Norm one tori and G-lattices: classification, certificates and cohomology"};
  app.require_subcommand(0, 1);
  app.add_option("--job", job, "JSON job file: {\"command\": ..., flag names as keys}");

  auto common = [&](CLI::App* s) {
    s->add_option("--format", a.format)->check(CLI::IsMember({"json", "text"}));
    s->add_option("--search-bound", a.search_bound, "coefficient bound for isomorphism search")->check(CLI::Range(1, 64));
    s->add_option("--max-group-order", a.max_group_order)->check(CLI::Range(1, 100000));
    s->add_flag("--matrices", a.matrices, "include generator and certificate matrices");
    s->add_flag("--timings", a.timings, "add elapsed time (breaks byte-identity)");
  };
  auto* cl = app.add_subcommand("classify", "Classify the norm one torus of (G, H)");
  cl->add_option("--group", a.group)->required();
  cl->add_option("--subgroup", a.subgroup);
  common(cl);
  auto* vp = app.add_subcommand("verify-paper", "Rebuild and check a dihedral construction");
  vp->add_option("--case", a.case_name)->required();
  vp->add_option("--n", a.n)->required();
  common(vp);
  auto* co = app.add_subcommand("cohomology", "Tate cohomology table of a lattice");
  co->add_option("--group", a.group)->required();
  co->add_option("--lattice", a.lattice)->required();
  co->add_option("--subgroup", a.subgroup, "'all' or a subgroup spec")->default_val("all");
  common(co);
  auto* rs = app.add_subcommand("resolve", "Flabby resolution of J_{G/H} (or --lattice)");
  rs->add_option("--group", a.group)->required();
  rs->add_option("--subgroup", a.subgroup);
  rs->add_option("--lattice", a.lattice);
  common(rs);
  auto* st = app.add_subcommand("selftest", "Quick end-to-end check");
  common(st);

  try {
    app.parse(argc, argv);
    if (!job.empty()) {
      if (app.get_subcommands().size()) throw UsageError("--job cannot be combined with a command");
      std::vector<std::string> tok = job_tokens(job);
      std::reverse(tok.begin(), tok.end());  // CLI11 consumes the vector from the back
      app.parse(tok);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Json out = header(cmd->get_name().c_str());
  auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (cmd == cl) code = run_classify(a, out);
    else if (cmd == vp) code = run_verify(a, out);
    else if (cmd == co) code = run_cohomology(a, out);
    else if (cmd == rs) code = run_resolve(a, out);
    else code = run_selftest(a, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource bound exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kClaimFailed;
  }
  if (a.timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out["timings"] = {{"elapsed_ms", ms.count()}, {"threads", thread_count()}};
  }
  out["exit_code"] = code;
  emit(out, a);
  return code;
}

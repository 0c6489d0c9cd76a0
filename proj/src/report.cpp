#include "norm1lat/report.hpp"

namespace norm1lat {

Json to_json(const Integer& v) {
  if (v.fits_int64()) return v.to_int64();
  return v.to_string();
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const AbelianInvariants& a) {
  Json d = Json::array();
  for (const auto& x : a.divisors) d.push_back(to_json(x));
  return Json{{"text", a.to_string()}, {"divisors", d}, {"free_rank", a.free_rank}};
}

Json to_json(const FiniteGroup& g) {
  Json gens = Json::object();
  for (std::size_t i = 0; i < g.num_generators(); ++i) gens[g.generator_name(i)] = g.element(g.generator(i)).to_string();
  return Json{{"spec", g.spec().empty() ? g.describe() : g.spec()}, {"order", g.order()}, {"degree", g.degree()},
              {"generators", gens}};
}

Json to_json(const FiniteGroup& g, const Subgroup& u) {
  return Json{{"spec", u.describe(g)}, {"order", u.order()}};
}

Json to_json(const GLattice& m, const ReportOptions& opt) {
  Json j{{"label", m.label()}, {"rank", m.rank()}, {"group", m.group().spec().empty() ? m.group().describe() : m.group().spec()}};
  if (opt.matrices) {
    Json gens = Json::object();
    for (std::size_t i = 0; i < m.group().num_generators(); ++i)
      gens[m.group().generator_name(i)] = to_json(m.generator_matrix(i));
    j["generators"] = gens;
  }
  return j;
}

Json to_json(const IsoCertificate& c, const ReportOptions& opt) {
  CheckResult ok = verify_iso(c);
  Json j{{"type", "isomorphism"},
         {"source", to_json(c.source, opt)},
         {"target", to_json(c.target, opt)},
         {"determinant", to_json(determinant(c.matrix))},
         {"verified", ok.ok}};
  if (!ok.ok) j["failure"] = ok.failure;
  if (opt.matrices) j["matrix"] = to_json(c.matrix);
  return j;
}

Json to_json(const ObstructionCertificate& c, const ReportOptions& opt) {
  CheckResult ok = verify_obstruction(c);
  Json j{{"type", "obstruction"}, {"kind", to_string(c.kind)}, {"lattice", to_json(c.lattice, opt)}};
  switch (c.kind) {
    case ObstructionCertificate::Kind::NoncyclicSylow:
      j["group"] = to_json(*c.group);
      j["prime"] = c.prime;
      j["sylow"] = to_json(*c.group, c.sylow);
      break;
    case ObstructionCertificate::Kind::NonzeroH1:
      j["subgroup"] = to_json(c.lattice.group(), c.subgroup);
      j["h1"] = to_json(c.invariants);
      break;
    case ObstructionCertificate::Kind::RankMultiset: {
      const auto& r = c.record;
      Json classes = Json::array();
      for (std::size_t i = 0; i < r.classes.size(); ++i)
        classes.push_back({{"subgroup", r.classes[i].describe(c.lattice.group())},
                           {"index", r.indices[i]},
                           {"h0", r.h0_lattice[i].to_string()}});
      Json entries = Json::array();
      for (const auto& e : r.entries) entries.push_back({{"counts", e.counts}, {"witness", e.witness}});
      j["rank"] = r.rank;
      j["classes"] = classes;
      j["candidates"] = entries;
      break;
    }
  }
  j["verified"] = ok.ok;
  if (!ok.ok) j["failure"] = ok.failure;
  return j;
}

Json to_json(const ExactTriple& t, const ReportOptions& opt) {
  CheckResult ok = verify_exact(t);
  Json blocks = Json::array();
  for (const auto& b : t.blocks) blocks.push_back(b.describe(t.mid.group()));
  Json j{{"kind", to_string(t.kind)},
         {"left", to_json(t.left, opt)},
         {"mid", to_json(t.mid, opt)},
         {"right", to_json(t.right, opt)},
         {"mid_blocks", blocks},
         {"exact", ok.ok}};
  if (!ok.ok) j["failure"] = ok.failure;
  if (opt.matrices) {
    j["inj"] = to_json(t.inj.matrix);
    j["surj"] = to_json(t.surj.matrix);
  }
  return j;
}

Json to_json(const DihedralCase& c, const ReportOptions& opt) {
  Json claims = Json::array();
  for (const auto& cl : c.claims)
    claims.push_back({{"id", cl.id}, {"statement", cl.statement}, {"passed", cl.passed}, {"detail", cl.detail}});
  Json findings = Json::array();
  for (const auto& f : c.findings) findings.push_back({{"id", f.id}, {"text", f.text}, {"confirmed", f.confirmed}});
  Json lattices = Json::array();
  for (const auto& [name, l] : c.lattices) {
    Json e = to_json(l, opt);
    e["name"] = name;
    lattices.push_back(std::move(e));
  }
  Json maps = Json::array();
  for (const auto& [name, m] : c.maps) {
    Json e{{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}};
    if (opt.matrices) e["matrix"] = to_json(m);
    maps.push_back(std::move(e));
  }
  Json certs = Json::array();
  for (const auto& i : c.isos) {
    Json e = to_json(i.cert, opt);
    e["name"] = i.name;
    certs.push_back(std::move(e));
  }
  for (const auto& o : c.obstructions) {
    Json e = to_json(o.cert, opt);
    e["name"] = o.name;
    certs.push_back(std::move(e));
  }
  Json routes = Json::array();
  for (const auto& r : c.routes) routes.push_back({{"name", r.name}, {"status", r.status}, {"detail", r.detail}});
  Json dims{{"applicable", c.dimensions.applicable}};
  if (c.dimensions.applicable) {
    Json lhs = Json::array(), rhs = Json::array();
    for (const auto& t : c.dimensions.lhs) lhs.push_back({{"label", t.label}, {"value", t.value}});
    for (const auto& t : c.dimensions.rhs) rhs.push_back({{"label", t.label}, {"value", t.value}});
    dims["lhs"] = lhs;
    dims["rhs"] = rhs;
    dims["holds"] = c.dimensions.holds();
    dims["text"] = c.dimensions.to_string();
  }
  Json j{{"case", to_string(c.id)}, {"n", c.n}, {"m", c.m}, {"group", to_json(*c.group)}, {"h", to_json(*c.group, c.h)}};
  if (c.id != CaseId::MainI) {
    j["u"] = c.u;
    j["v"] = c.v;
  }
  j["claims"] = claims;
  j["all_claims_pass"] = c.all_claims_pass();
  j["verdict"] = to_string(c.verdict);
  j["findings"] = findings;
  j["dimensions"] = dims;
  j["lattices"] = lattices;
  j["maps"] = maps;
  j["certificates"] = certs;
  j["routes"] = routes;
  return j;
}

Json to_json(const Classification& c, const ReportOptions& opt) {
  Json j{{"verdict", to_string(c.verdict)},
         {"rule", c.rule},
         {"explanation", c.explanation},
         {"inputs", {{"group", c.group_spec}, {"subgroup", c.subgroup_spec}}},
         {"group", to_json(*c.group)},
         {"subgroup", to_json(*c.group, c.h)}};
  if (c.transport) {
    const Transport& t = *c.transport;
    j["model"] = {{"group", to_json(*t.target)},
                  {"subgroup", to_json(*t.target, t.h_target)},
                  {"automorphism_power", t.automorphism_power},
                  {"conjugator", t.target->element_name(t.conjugator)},
                  {"verified", verify_transport(t).ok}};
  }
  Json certs = Json::array();
  for (const auto& i : c.isos) {
    Json e = to_json(i.cert, opt);
    e["name"] = i.name;
    certs.push_back(std::move(e));
  }
  for (const auto& o : c.obstructions) {
    Json e = to_json(o.cert, opt);
    e["name"] = o.name;
    certs.push_back(std::move(e));
  }
  if (c.resolution) {
    Json e = to_json(*c.resolution, opt);
    e["type"] = "resolution";
    e["name"] = "flabby resolution";
    certs.push_back(std::move(e));
  }
  j["certificates"] = certs;
  if (c.construction) j["construction"] = to_json(*c.construction, opt);
  CheckResult v = verify_classification(c);
  j["verified"] = v.ok;
  if (!v.ok) j["failure"] = v.failure;
  return j;
}

Json cohomology_json(const GLattice& m, const std::vector<CohomologyRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"subgroup", r.subgroup.describe(m.group())},
                   {"order", r.subgroup.order()},
                   {"class_size", r.class_size},
                   {"h1_route", to_string(h1_route(m.group(), r.subgroup))},
                   {"tate_minus1", r.minus1.to_string()},
                   {"tate_zero", r.zero.to_string()},
                   {"h1", r.one.to_string()}});
  return out;
}

namespace {

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool all_scalars(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured() && !(e.is_array() && all_scalars(e))) return false;
  return true;
}

std::string inline_array(const Json& j) {
  std::string s = "[";
  bool first = true;
  for (const auto& e : j) {
    s += first ? "" : ", ";
    s += e.is_array() ? inline_array(e) : scalar(e);
    first = false;
  }
  return s + "]";
}

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() && !v.empty()) {
        out += pad + k + ":\n";
        render(v, indent + 2, out);
      } else if (v.is_array() && !v.empty() && !all_scalars(v)) {
        out += pad + k + ":\n";
        render(v, indent + 2, out);
      } else if (v.is_array()) {
        out += pad + k + ": " + inline_array(v) + "\n";
      } else {
        out += pad + k + ": " + (v.is_object() ? std::string("{}") : scalar(v)) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_object()) {
        std::string inner;
        render(e, indent + 2, inner);
        inner.replace(static_cast<std::size_t>(indent), 2, "- ");
        out += inner;
      } else {
        out += pad + "- " + (e.is_array() ? inline_array(e) : scalar(e)) + "\n";
      }
    }
  } else {
    out += pad + scalar(j) + "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::string out;
  render(j, 0, out);
  return out;
}

}  // namespace norm1lat

#include "norm1lat/classify.hpp"

#include <algorithm>

#include "norm1lat/errors.hpp"

namespace norm1lat {

namespace {

IntMatrix incl_matrix(std::size_t r) {
  IntMatrix k(r, r - 1);
  for (std::size_t i = 0; i + 1 < r; ++i) {
    k(i, i) = 1;
    k(i + 1, i) = -1;
  }
  return k;
}

bool same_matrices(const GLattice& a, const GLattice& b) {
  return a.rank() == b.rank() && a.generator_matrices() == b.generator_matrices();
}

GLattice restrict_to(const GLattice& m, const Subgroup& u, GroupPtr gu) {
  std::vector<IntMatrix> mats;
  for (int e : u.generators()) mats.push_back(m.action(e));
  return GLattice::derived(std::move(gu), std::move(mats), m.label() + "|" + u.describe(m.group()), m.rank());
}

}  // namespace

std::optional<Transport> make_transport(GroupPtr g, const Subgroup& h, GroupPtr target, const Subgroup& h_std) {
  const FiniteGroup& src = *g;
  const FiniteGroup& tgt = *target;
  if (src.order() != tgt.order()) return std::nullopt;
  SubgroupShape sh = subgroup_shape(src, Subgroup::whole(src));
  Transport t;
  t.source = g;
  t.target = target;
  t.h = h;
  t.map.assign(src.order(), -1);
  const int x = tgt.generator(0);
  if (sh.kind == SubgroupShape::Kind::Cyclic && tgt.num_generators() == 1) {
    for (int i = 0; i < sh.k; ++i) t.map[static_cast<std::size_t>(src.power(sh.a, i))] = tgt.power(x, i);
  } else if (sh.kind == SubgroupShape::Kind::Dihedral && tgt.num_generators() == 2) {
    const int y = tgt.generator(1);
    for (int i = 0; i < sh.k; ++i)
      for (int j = 0; j < 2; ++j) {
        int e = src.mul(src.power(sh.a, i), j ? sh.b : FiniteGroup::identity());
        t.map[static_cast<std::size_t>(e)] = tgt.mul(tgt.power(x, i), j ? y : FiniteGroup::identity());
      }
  } else {
    return std::nullopt;
  }
  for (int v : t.map)
    if (v < 0) return std::nullopt;
  auto image = [&](const Subgroup& u) {
    std::vector<int> gens;
    for (int e : u.generators()) gens.push_back(t.map[static_cast<std::size_t>(e)]);
    return Subgroup::generated_by(tgt, gens);
  };
  Subgroup hi = image(h);
  std::optional<int> c = is_conjugate(tgt, hi, h_std);
  if (!c && tgt.num_generators() == 2) {
    std::vector<int> alpha = dihedral_automorphism(tgt);
    c = is_conjugate(tgt, apply_automorphism(tgt, alpha, hi), h_std);
    if (c) {
      t.automorphism_power = 1;
      for (int& v : t.map) v = alpha[static_cast<std::size_t>(v)];
    }
  }
  if (!c) return std::nullopt;
  t.conjugator = *c;
  for (int& v : t.map) v = tgt.conj(*c, v);
  t.h_target = image(h);
  if (!(t.h_target == h_std)) throw InternalError("transport does not land on the standard subgroup");
  if (!verify_transport(t)) throw InternalError("transport map is not an isomorphism");
  return t;
}

CheckResult verify_transport(const Transport& t) {
  if (!t.source || !t.target) return CheckResult::fail("transport without groups");
  const FiniteGroup& src = *t.source;
  const FiniteGroup& tgt = *t.target;
  if (t.map.size() != src.order() || src.order() != tgt.order()) return CheckResult::fail("orders differ");
  std::vector<char> hit(tgt.order(), 0);
  for (int v : t.map) {
    if (v < 0 || static_cast<std::size_t>(v) >= tgt.order() || hit[static_cast<std::size_t>(v)]++)
      return CheckResult::fail("map is not a bijection");
  }
  for (int s : src.generators())
    for (int e = 0; e < static_cast<int>(src.order()); ++e)
      if (t.map[static_cast<std::size_t>(src.mul(s, e))] !=
          tgt.mul(t.map[static_cast<std::size_t>(s)], t.map[static_cast<std::size_t>(e)]))
        return CheckResult::fail("map is not a homomorphism");
  std::vector<int> img;
  for (int e : t.h.members()) img.push_back(t.map[static_cast<std::size_t>(e)]);
  std::sort(img.begin(), img.end());
  if (img != t.h_target.members()) return CheckResult::fail("H does not map onto the target subgroup");
  return {};
}

GLattice pull_back(const GLattice& m, const Transport& t) {
  std::vector<int> inv(t.map.size());
  for (std::size_t e = 0; e < t.map.size(); ++e) inv[static_cast<std::size_t>(t.map[e])] = static_cast<int>(e);
  std::vector<IntMatrix> mats;
  for (int s : t.target->generators()) mats.push_back(m.action(inv[static_cast<std::size_t>(s)]));
  return GLattice::derived(t.target, std::move(mats), m.label(), m.rank());
}

std::optional<IsoCertificate> transport_chevalley(const Transport& t, const GLattice& perm, std::size_t base,
                                                  std::string* why) {
  auto fail = [&](std::string s) -> std::optional<IsoCertificate> {
    if (why) *why = std::move(s);
    return std::nullopt;
  };
  const FiniteGroup& src = *t.source;
  GLattice cl = pull_back(coset_lattice(t.source, t.h), t);
  const std::size_t r = cl.rank();
  if (perm.rank() != r || r < 2) return fail("rank mismatch");
  Cosets cs = cosets(src, t.h);
  IntMatrix x(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    int e = t.map[static_cast<std::size_t>(cs.reps[i])];
    const IntMatrix& a = perm.action(e);
    if (!a.is_permutation_matrix()) return fail("target is not a permutation lattice");
    x(static_cast<std::size_t>(a.permutation_images()[base]), i) = 1;
  }
  CheckResult ok = verify_iso({cl, perm, x});
  if (!ok) return fail("coset bijection: " + ok.failure);
  // X preserves the augmentation, so it restricts to the ideals; the dual of
  // the inverse is then J -> J.
  IntMatrix k = incl_matrix(r);
  IntMatrix xi = left_inverse(k) * x * k;
  IntMatrix y = unimodular_inverse(xi).transpose();
  GLattice js = pull_back(chevalley_module(t.source, t.h), t);
  GLattice jt = dual(sublattice(perm, k, "I")).relabeled("J_{G/H}");
  IsoCertificate cert{js, jt, y};
  ok = verify_iso(cert);
  if (!ok) return fail("J transport: " + ok.failure);
  return cert;
}

namespace {

void unsupported(Classification& c, std::string rule, std::string why) {
  c.verdict = Verdict::Unsupported;
  c.rule = std::move(rule);
  c.explanation = std::move(why);
}

void attach_transport(Classification& c, GroupPtr model, const Subgroup& h_std, const GLattice& perm) {
  c.transport = make_transport(c.group, c.h, model, h_std);
  if (!c.transport) throw InternalError("no isomorphism onto the standard model");
  std::string why;
  auto cert = transport_chevalley(*c.transport, perm, 0, &why);
  if (!cert) throw InternalError(why);
  c.isos.push_back({"J transport", *cert});
}

void from_construction(Classification& c, DihedralCase dc, const std::string& rule) {
  c.rule = rule;
  attach_transport(c, dc.group, dc.h, point_lattice(dc.group));
  if (!dc.all_claims_pass()) {
    c.verdict = Verdict::Unsupported;
    c.explanation = "the explicit construction failed a claim";
  } else {
    c.verdict = Verdict::StablyRational;
    c.explanation = "J_{G/H} has a flabby resolution whose right term is stably permutation";
  }
  c.construction = std::move(dc);
}

void classify_cyclic(Classification& c, const ClassifyOptions& opt) {
  const int k = static_cast<int>(c.group->order());
  GroupPtr s = cyclic_group(k, opt.max_group_order);
  Subgroup one = Subgroup::trivial(*s);
  GLattice p = coset_lattice(s, one);
  attach_transport(c, s, one, p);
  // J_G = Z[G]/(N) -> I_G, v -> (x - 1) v, gives 0 -> J_G -> Z[G] -> Z -> 0.
  const std::size_t r = p.rank();
  IntMatrix incl = incl_matrix(r);
  IntMatrix back = left_inverse(incl);
  IntMatrix mu = back * (p.generator_matrix(0) - IntMatrix::identity(r));
  IntMatrix y = mu * back.transpose();
  GLattice i = sublattice(p, incl, "I_G");
  GLattice j = dual(i).relabeled("J_G");
  IsoCertificate cert{j, i, y};
  if (!verify_iso(cert)) throw InternalError("J_G -> I_G is not an isomorphism");
  c.isos.push_back({"J_G = I_G", cert});
  GLattice z = trivial_lattice(s, 1);
  IntMatrix eps(1, r);
  for (std::size_t a = 0; a < r; ++a) eps(0, a) = 1;
  c.resolution = ExactTriple{j,
                             p,
                             z,
                             LatticeMap::make(j, p, incl * y),
                             LatticeMap::make(p, z, eps),
                             ExactTriple::Kind::FlabbyResolution,
                             {one}};
  c.verdict = Verdict::StablyRational;
  c.rule = "cyclic-galois";
  c.explanation = "0 -> J_G -> Z[G] -> Z -> 0 is a flabby resolution with permutation right term";
}

void classify_dihedral(Classification& c, const ClassifyOptions& opt) {
  const FiniteGroup& g = *c.group;
  const int n = c.n;
  if (c.h.is_trivial()) {
    if (n % 2 == 1) {
      from_construction(c, build_appendix_galois(n, opt.cases), "dihedral-odd-galois");
      return;
    }
    GroupPtr s = dihedral_on_cosets(n, opt.max_group_order);
    Subgroup one = Subgroup::trivial(*s);
    attach_transport(c, s, one, coset_lattice(s, one));
    SylowReport rep = sylow_all_cyclic(*s);
    for (const auto& e : rep.entries)
      if (e.p == 2 && !e.cyclic) {
        ObstructionCertificate ob;
        ob.kind = ObstructionCertificate::Kind::NoncyclicSylow;
        ob.lattice = chevalley_module(s, one);
        ob.group = s;
        ob.prime = 2;
        ob.sylow = e.sylow;
        c.obstructions.push_back({"noncyclic Sylow 2-subgroup of G", ob});
      }
    if (c.obstructions.empty()) throw InternalError("D_n with n even has a cyclic Sylow 2-subgroup");
    c.verdict = Verdict::NotRetractRational;
    c.rule = "dihedral-even-galois";
    c.explanation = "a Sylow 2-subgroup of G is not cyclic";
    return;
  }
  (void)g;
  if (n % 2 == 1) {
    from_construction(c, build_appendix_c2(n, opt.cases), "dihedral-odd-c2");
    return;
  }
  if (n % 4 == 2) {
    from_construction(c, build_main_ii(n, opt.cases), "dihedral-2mod4-c2");
    return;
  }
  GroupPtr s = dihedral_on_cosets(n, opt.max_group_order);
  Subgroup hs = parse_subgroup_spec(*s, "<x*y>");
  GLattice perm = coset_lattice(s, hs);
  attach_transport(c, s, hs, perm);
  Subgroup gr = parse_subgroup_spec(*s, "<x^2, y>");
  GroupPtr gg = subgroup_as_group(*s, gr);
  if (!intersection(*s, gr, hs).is_trivial()) throw InternalError("H meets <x^2, y>");
  IsoResult r = find_iso(restrict_to(perm, gr, gg), coset_lattice(gg, Subgroup::trivial(*gg)));
  if (!r.certificate) throw InternalError("Z[G/H] restricted to <x^2, y> is not certified regular");
  c.isos.push_back({"Z[G/H]|G' = Z[G']", *r.certificate});
  c.restricted_to = gr;
  for (const auto& e : sylow_all_cyclic(*gg).entries)
    if (e.p == 2 && !e.cyclic) {
      ObstructionCertificate ob;
      ob.kind = ObstructionCertificate::Kind::NoncyclicSylow;
      ob.lattice = restrict_to(chevalley_module(s, hs), gr, gg);
      ob.group = gg;
      ob.prime = 2;
      ob.sylow = e.sylow;
      c.obstructions.push_back({"noncyclic Sylow 2-subgroup of G'", ob});
    }
  if (c.obstructions.empty()) throw InternalError("<x^2, y> has a cyclic Sylow 2-subgroup");
  c.verdict = Verdict::NotRetractRational;
  c.rule = "dihedral-0mod4-c2";
  c.explanation = "G' = <x^2, y> is regular on G/H, so J_{G/H}|G' = J_{G'}, and G' has a noncyclic Sylow 2-subgroup";
}

}  // namespace

Classification classify(GroupPtr g, const Subgroup& h, const ClassifyOptions& opt) {
  Classification c;
  c.group = g;
  c.h = h;
  c.group_spec = g->spec().empty() ? g->describe() : g->spec();
  c.subgroup_spec = h.describe(*g);
  if (!h.is_subgroup_of(Subgroup::whole(*g))) throw UsageError("H is not a subgroup of G");
  if (!core_is_trivial(*g, h)) {
    unsupported(c, "not-core-free", "H contains a nontrivial normal subgroup of G, so G does not act faithfully on G/H");
    return c;
  }
  SubgroupShape sh = subgroup_shape(*g, Subgroup::whole(*g));
  if (sh.kind == SubgroupShape::Kind::Cyclic) {
    c.n = sh.k;
    classify_cyclic(c, opt);
    return c;
  }
  if (sh.kind == SubgroupShape::Kind::Dihedral && sh.k >= 3) {
    c.n = sh.k;
    if (h.order() > 2) throw InternalError("core-free subgroup of a dihedral group of order > 2");
    classify_dihedral(c, opt);
    return c;
  }
  unsupported(c, "unsupported-group", "only cyclic groups and dihedral groups D_n (n >= 3) are decided");
  return c;
}

Classification classify(std::string_view group_spec, std::string_view subgroup_spec, const ClassifyOptions& opt) {
  GroupPtr g = parse_group_spec(group_spec, opt.max_group_order);
  Subgroup h = parse_subgroup_spec(*g, subgroup_spec);
  Classification c = classify(g, h, opt);
  c.group_spec = std::string(group_spec);
  c.subgroup_spec = std::string(subgroup_spec);
  return c;
}

CheckResult verify_classification(const Classification& c) {
  if (c.verdict == Verdict::Unsupported) return {};
  if (!c.transport) return CheckResult::fail("no transport to the standard model");
  if (CheckResult t = verify_transport(*c.transport); !t) return t;
  if (c.isos.empty() || c.isos[0].name != "J transport") return CheckResult::fail("missing J transport");
  for (const auto& iso : c.isos)
    if (CheckResult r = verify_iso(iso.cert); !r) return CheckResult::fail(iso.name + ": " + r.failure);
  for (const auto& ob : c.obstructions)
    if (CheckResult r = verify_obstruction(ob.cert); !r) return CheckResult::fail(ob.name + ": " + r.failure);
  const GLattice& j = c.isos[0].cert.target;
  if (!same_matrices(c.isos[0].cert.source, pull_back(chevalley_module(c.group, c.h), *c.transport)))
    return CheckResult::fail("transport source is not J_{G/H}");

  if (c.verdict == Verdict::NotRetractRational) {
    if (c.obstructions.empty()) return CheckResult::fail("no obstruction attached");
    const GLattice& lat = c.obstructions[0].cert.lattice;
    if (c.restricted_to) {
      const FiniteGroup& s = *c.transport->target;
      std::vector<IntMatrix> want;
      for (int e : c.restricted_to->generators()) want.push_back(j.action(e));
      if (lat.generator_matrices() != want) return CheckResult::fail("obstruction lattice is not J restricted to G'");
      if (c.isos.size() < 2) return CheckResult::fail("missing restriction certificate");
      const IsoCertificate& ri = c.isos[1].cert;
      // Z[G/H] restricted to G' against Z[G']: G' acts regularly on the target basis.
      if (ri.source.rank() != j.rank() + 1 || !ri.target.has_permutation_basis() ||
          ri.target.group().order() != ri.target.rank() || ri.target.group().order() != c.restricted_to->order() ||
          s.order() / c.h.order() != ri.source.rank())
        return CheckResult::fail("restriction certificate is not Z[G/H]|G' = Z[G']");
    } else if (!same_matrices(lat, j)) {
      return CheckResult::fail("obstruction lattice is not J_G");
    }
    return {};
  }

  // StablyRational
  if (c.resolution) {
    if (CheckResult r = verify_exact(*c.resolution); !r) return r;
    if (!same_matrices(c.resolution->left, c.isos[1].cert.source) || !same_matrices(c.isos[0].cert.target, c.resolution->left))
      return CheckResult::fail("resolution does not start at J_G");
    const GLattice& right = c.resolution->right;
    if (!right.has_permutation_basis()) return CheckResult::fail("right term is not permutation");
    return {};
  }
  if (!c.construction) return CheckResult::fail("no construction attached");
  const DihedralCase& dc = *c.construction;
  if (!dc.all_claims_pass()) return CheckResult::fail("construction has a failing claim");
  const GLattice* jj = dc.lattice("J_{G/H}");
  const GLattice* p = dc.lattice("P");
  const GLattice* cd = dc.lattice("C°");
  const GLattice* cl = dc.lattice("C");
  const GLattice* cz = dc.lattice("C + Z");
  const IntMatrix *phi = nullptr, *ker = nullptr;
  for (const auto& [name, m] : dc.maps) {
    if (name == "phi") phi = &m;
    if (name == "kernel") ker = &m;
  }
  if (!jj || !p || !cd || !cl || !cz || !phi || !ker) return CheckResult::fail("construction data missing");
  if (!same_matrices(*jj, j)) return CheckResult::fail("transport target differs from the construction's J");
  ExactTriple t{*jj, *p, *cd, LatticeMap::make(*jj, *p, phi->transpose()), LatticeMap::make(*p, *cd, ker->transpose()),
                ExactTriple::Kind::FlabbyResolution, {}};
  if (CheckResult r = verify_exact(t); !r) return r;
  if (!is_flabby(*cd).holds) return CheckResult::fail("C° is not flabby");
  if (!same_matrices(dual(*cl), *cd)) return CheckResult::fail("C° is not the dual of C");
  bool found = false;
  for (const auto& iso : dc.isos) {
    if (!same_matrices(iso.cert.target, *cz) || !iso.cert.source.has_permutation_basis()) continue;
    if (CheckResult r = verify_iso(iso.cert); !r) return r;
    found = true;
  }
  if (!found) return CheckResult::fail("no certificate for C + Z");
  // C + Z is C (on the same generator matrices) plus a trivial summand.
  for (std::size_t i = 0; i < cl->generator_matrices().size(); ++i) {
    IntMatrix top = cz->generator_matrix(i).block(0, 0, cl->rank(), cl->rank());
    if (top != cl->generator_matrix(i)) return CheckResult::fail("C + Z does not contain C");
  }
  return {};
}

}  // namespace norm1lat

#include "norm1lat/dihedral_cases.hpp"

#include <functional>
#include <stdexcept>

#include "norm1lat/errors.hpp"

namespace norm1lat {

const char* to_string(CaseId c) {
  switch (c) {
    case CaseId::MainI: return "main-i";
    case CaseId::MainII: return "main-ii";
    case CaseId::AppendixGalois: return "appendix-galois";
    case CaseId::AppendixC2: return "appendix-c2";
  }
  return "?";
}

std::optional<CaseId> parse_case_id(std::string_view s) {
  std::string t(s);
  for (char& ch : t)
    if (ch == '_') ch = '-';
  for (CaseId c : {CaseId::MainI, CaseId::MainII, CaseId::AppendixGalois, CaseId::AppendixC2})
    if (t == to_string(c)) return c;
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::StablyRational: return "StablyRational";
    case Verdict::NotRetractRational: return "NotRetractRational";
    case Verdict::RetractNotKnownStable: return "RetractNotKnownStable";
    case Verdict::Unsupported: return "Unsupported";
  }
  return "?";
}

std::size_t DimensionReport::lhs_total() const {
  std::size_t s = 0;
  for (const auto& t : lhs) s += t.value;
  return s;
}

std::size_t DimensionReport::rhs_total() const {
  std::size_t s = 0;
  for (const auto& t : rhs) s += t.value;
  return s;
}

std::string DimensionReport::to_string() const {
  if (!applicable) return "not applicable";
  auto side = [](const std::vector<DimensionTerm>& ts) {
    std::string out;
    for (const auto& t : ts) out += (out.empty() ? "" : " + ") + std::to_string(t.value);
    return out;
  };
  return side(lhs) + " = " + std::to_string(lhs_total()) + " = " + side(rhs) + (holds() ? "" : " (mismatch: " + std::to_string(rhs_total()) + ")");
}

bool DihedralCase::all_claims_pass() const {
  if (claims.empty()) return false;
  for (const auto& c : claims)
    if (!c.passed) return false;
  return true;
}

const GLattice* DihedralCase::lattice(std::string_view name) const {
  for (const auto& [k, l] : lattices)
    if (k == name) return &l;
  return nullptr;
}

std::pair<long long, long long> bezout_two(long long m) {
  if (m % 2 == 0 || m < 1) throw UsageError("2u + mv = 1 needs m odd and positive");
  // u = 2^-1 mod m, taken in the symmetric range; m odd so |u| has no ties.
  long long u = (m + 1) / 2 % m;
  if (u > m / 2) u -= m;
  long long v = (1 - 2 * u) / m;
  if (2 * u + m * v != 1) throw InternalError("bezout_two failed");
  return {u, v};
}

GLattice point_lattice(GroupPtr g) {
  std::vector<IntMatrix> mats;
  for (int s : g->generators()) mats.push_back(IntMatrix::permutation(g->element(s).images()));
  std::size_t deg = static_cast<std::size_t>(g->degree());
  return GLattice::derived(std::move(g), std::move(mats), "Z^points", deg);
}

std::optional<IsoCertificate> certificate_from_permuted_basis(const GLattice& m, const IntMatrix& b,
                                                              const std::vector<Subgroup>& targets, std::string* why) {
  auto fail = [&](std::string s) -> std::optional<IsoCertificate> {
    if (why) *why = std::move(s);
    return std::nullopt;
  };
  const FiniteGroup& g = m.group();
  const std::size_t r = m.rank();
  if (b.rows() != r || b.cols() != r) return fail("basis matrix is not square of the lattice rank");
  IntMatrix binv;
  try {
    binv = unimodular_inverse(b);
  } catch (const std::domain_error&) {
    return fail("columns are not a Z-basis");
  }
  std::vector<IntMatrix> mats;
  for (const auto& a : m.generator_matrices()) {
    IntMatrix t = binv * a * b;
    if (!t.is_permutation_matrix()) return fail("the group does not permute the basis");
    mats.push_back(std::move(t));
  }
  GLattice lb = GLattice::derived(m.group_ptr(), std::move(mats), "basis", r);
  std::vector<std::vector<int>> images(g.order());
  for (int e = 0; e < static_cast<int>(g.order()); ++e) images[static_cast<std::size_t>(e)] = lb.action(e).permutation_images();
  struct Orb {
    std::size_t base;
    Subgroup stab;
    std::size_t size;
    bool used = false;
  };
  std::vector<Orb> orbits;
  std::vector<char> seen(r, 0);
  for (std::size_t p = 0; p < r; ++p) {
    if (seen[p]) continue;
    std::vector<int> stab;
    std::size_t size = 0;
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      std::size_t q = static_cast<std::size_t>(images[static_cast<std::size_t>(e)][p]);
      if (q == p) stab.push_back(e);
      if (!seen[q]) {
        seen[q] = 1;
        ++size;
      }
    }
    orbits.push_back({p, Subgroup::generated_by(g, stab), size});
  }
  std::size_t total = 0;
  for (const auto& u : targets) total += g.order() / u.order();
  if (total != r) return fail("target ranks sum to " + std::to_string(total) + ", lattice rank is " + std::to_string(r));
  IntMatrix x(r, r);
  std::size_t col = 0;
  for (const auto& u : targets) {
    bool matched = false;
    for (auto& o : orbits) {
      if (o.used || o.stab.order() != u.order()) continue;
      auto c = is_conjugate(g, u, o.stab);
      if (!c) continue;
      // stab(c^-1 . base) = c^-1 S c = U
      std::size_t q = static_cast<std::size_t>(images[static_cast<std::size_t>(g.inv(*c))][o.base]);
      Cosets cs = cosets(g, u);
      for (int rep : cs.reps) {
        std::size_t p = static_cast<std::size_t>(images[static_cast<std::size_t>(rep)][q]);
        x.set_column(col++, b.column(p));
      }
      o.used = true;
      matched = true;
      break;
    }
    if (!matched) return fail("no orbit with stabilizer conjugate to " + u.describe(g));
  }
  IsoCertificate cert{permutation_lattice(m.group_ptr(), targets), m, std::move(x)};
  CheckResult ok = verify_iso(cert);
  if (!ok) return fail(ok.failure);
  return cert;
}

namespace {

struct ClaimFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs fn; a normal return passes with the returned detail, any exception fails.
void check(DihedralCase& c, std::string id, std::string statement, const std::function<std::string()>& fn) {
  Claim cl{std::move(id), std::move(statement), false, {}};
  try {
    cl.detail = fn();
    cl.passed = true;
  } catch (const std::exception& e) {
    cl.detail = e.what();
  }
  c.claims.push_back(std::move(cl));
}

void require(bool cond, const std::string& why) {
  if (!cond) throw ClaimFailure(why);
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw ClaimFailure(std::string("requires ") + what);
  return *v;
}

// f_k (1-based, k = 1..npts) in the basis f_1..f_{npts-1}; f_npts = -sum.
IntVector fvec(std::size_t k, std::size_t npts) {
  IntVector v(npts - 1);
  if (k == npts) {
    for (auto& e : v) e = -1;
  } else {
    v[k - 1] = 1;
  }
  return v;
}

IntVector add(IntVector a, const IntVector& b, long long scale = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] * Integer(scale);
  return a;
}

IntMatrix incl_matrix(std::size_t npts) {
  IntMatrix k(npts, npts - 1);
  for (std::size_t i = 0; i + 1 < npts; ++i) {
    k(i, i) = 1;
    k(i + 1, i) = -1;
  }
  return k;
}

// Lattice whose generators act by the given basis permutations (0-based images).
GLattice permutation_action(GroupPtr g, const std::vector<std::vector<int>>& images, std::string label) {
  std::vector<IntMatrix> mats;
  for (const auto& im : images) mats.push_back(IntMatrix::permutation(im));
  return GLattice(std::move(g), std::move(mats), std::move(label));
}

IntVector unit(std::size_t i, std::size_t n) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

std::string describe_list(const FiniteGroup& g, const std::vector<Subgroup>& us) {
  std::string out;
  for (const auto& u : us) out += (out.empty() ? "Z[G/" : " + Z[G/") + u.describe(g) + "]";
  return out;
}


IntMatrix from_cols(const std::vector<IntVector>& cols, std::size_t rows) { return IntMatrix::from_columns(cols, rows); }

// Matrix sending basis vector i to images[i] (given as vectors).
IntMatrix action_matrix(const std::vector<IntVector>& images, std::size_t rank) { return from_cols(images, rank); }

// Partner index for the reflection i <-> (s - i) mod n on 1-based labels, 0 read as n.
std::size_t reflect(std::size_t i, std::size_t s, std::size_t n) {
  long long k = (static_cast<long long>(s) - static_cast<long long>(i)) % static_cast<long long>(n);
  if (k <= 0) k += static_cast<long long>(n);
  return static_cast<std::size_t>(k);
}

// Common tail of the stably rational constructions: 0 -> C -> P -> I -> 0,
// C + Z permutation via an explicit basis, and the dual flabby resolution.
struct Construction {
  GroupPtr g;
  std::optional<GLattice> p, i, c, cq;
  IntMatrix phi, k;
  bool equivariant = false;
};

void record_map(DihedralCase& c, std::string name, IntMatrix m) { c.maps.emplace_back(std::move(name), std::move(m)); }

std::string check_surjective(DihedralCase& c, Construction& s, const std::vector<Subgroup>& p_blocks) {
  std::string why;
  auto pc = certificate_from_permuted_basis(*s.p, IntMatrix::identity(s.p->rank()), p_blocks, &why);
  require(pc.has_value(), "P is not " + describe_list(*s.g, p_blocks) + ": " + why);
  c.isos.push_back({"P = " + describe_list(*s.g, p_blocks), *pc});
  require(s.equivariant, "phi is not G-equivariant");
  AbelianInvariants cok = cokernel_invariants(s.phi);
  require(cok.is_trivial(), "coker phi = " + cok.to_string());
  return "P = " + describe_list(*s.g, p_blocks) + ", phi equivariant with trivial cokernel";
}

std::string check_kernel_basis(DihedralCase& c, Construction& s, std::size_t expected_rank) {
  require(s.equivariant, "requires an equivariant phi");
  IntMatrix ker = kernel_basis(s.phi);
  require(ker.cols() == expected_rank,
          "rank ker phi = " + std::to_string(ker.cols()) + ", expected " + std::to_string(expected_rank));
  require(s.k.cols() == expected_rank && is_saturated_basis(s.k) && canonical_column_basis(s.k) == ker,
          "the listed vectors do not form a basis of ker phi");
  s.c = sublattice(*s.p, s.k, "C");
  c.lattices.emplace_back("C", *s.c);
  return "rank C = " + std::to_string(expected_rank) + " and the listed vectors are a Z-basis of ker phi";
}

std::string check_action(const Construction& s, const std::vector<IntMatrix>& expected) {
  const GLattice& cl = need(s.c, "C");
  for (std::size_t j = 0; j < expected.size(); ++j)
    require(cl.generator_matrix(j) == expected[j],
            "action of " + s.g->generator_name(j) + " on C differs from the listed formula");
  return "x and y act on the basis of C as listed";
}

IntMatrix printed_det_matrix(std::size_t k, long long u, long long v) {
  IntMatrix d(k + 2, k + 2);
  for (std::size_t i = 0; i < k; ++i) {
    d(i, i) = 1;
    d(i, k + 1) = v;
    d(k + 1, i) = 1;
  }
  d(k, k) = 1;
  d(k, k + 1) = -u;
  d(k + 1, k) = -1;
  d(k + 1, k + 1) = -u;
  return d;
}

// C + Z over cq's group with basis: coordinates in `shifted` get + v z0, the
// coordinate `special` becomes special - u z0, plus sum(a) - special - u z0.
std::string check_completion(DihedralCase& c, Construction& s, const std::vector<std::size_t>& shifted,
                             const std::vector<std::size_t>& a_all, std::size_t special,
                             const std::vector<Subgroup>& targets) {
  const GLattice& cq = need(s.cq, "C over the acting quotient");
  const FiniteGroup& q = cq.group();
  const long long u = c.u, v = c.v;
  require(2 * u + static_cast<long long>(c.m) * v == 1, "2u + mv != 1");
  const std::size_t r = cq.rank();
  GLattice cz = direct_sum(cq, trivial_lattice(cq.group_ptr(), 1)).relabeled("C + Z");
  const std::size_t z = r;
  std::vector<char> is_shifted(r, 0);
  for (std::size_t i : shifted) is_shifted[i] = 1;
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector col = unit(i, r + 1);
    if (is_shifted[i]) col[z] = v;
    if (i == special) col[z] = -u;
    cols.push_back(std::move(col));
  }
  IntVector last(r + 1);
  for (std::size_t i : a_all) last[i] = 1;
  last[special] = -1;
  last[z] = -u;
  cols.push_back(std::move(last));
  IntMatrix b = from_cols(cols, r + 1);
  record_map(c, "completion", b);

  // The listed determinant is the block on rows (shifted, special, z0) and
  // columns (shifted', special', last), written with basis vectors as rows.
  const std::size_t k = shifted.size();
  IntMatrix printed = printed_det_matrix(k, u, v);
  IntMatrix block(k + 2, k + 2);
  std::vector<std::size_t> rows = shifted, cidx = shifted;
  rows.push_back(special);
  rows.push_back(z);
  cidx.push_back(special);
  cidx.push_back(r);
  for (std::size_t a = 0; a < k + 2; ++a)
    for (std::size_t bb = 0; bb < k + 2; ++bb) block(a, bb) = b(rows[a], cidx[bb]);
  require(block.transpose() == printed, "the listed determinant matrix does not match the basis");
  Integer dp = determinant(printed);
  require(dp == Integer(-2 * u - static_cast<long long>(c.m) * v) && dp == Integer(-1),
          "listed determinant is " + dp.to_string() + ", expected -2u - mv = -1");
  require(is_unimodular(b), "the completed vectors are not a Z-basis of C + Z");

  std::string why;
  auto cert = certificate_from_permuted_basis(cz, b, targets, &why);
  require(cert.has_value(), "C + Z basis does not give " + describe_list(q, targets) + ": " + why);
  c.lattices.emplace_back("C + Z", cz);
  c.isos.push_back({describe_list(q, targets) + " = C + Z", *cert});
  return "C + Z = " + describe_list(q, targets) + " (u = " + std::to_string(u) + ", v = " + std::to_string(v) +
         ", det = " + dp.to_string() + ")";
}

std::string check_dual_resolution(DihedralCase& c, Construction& s, bool compare_generic) {
  const GLattice& cl = need(s.c, "C");
  GLattice j = dual(*s.i).relabeled("J_{G/H}");
  GLattice cd = dual(cl).relabeled("C°");
  ExactTriple t{j,
                *s.p,
                cd,
                LatticeMap::make(j, *s.p, s.phi.transpose()),
                LatticeMap::make(*s.p, cd, s.k.transpose()),
                ExactTriple::Kind::FlabbyResolution,
                {}};
  CheckResult ex = verify_exact(t);
  require(ex.ok, "0 -> J -> P -> C° -> 0 is not exact: " + ex.failure);
  PredicateResult fl = is_flabby(cd);
  require(fl.holds, "C° is not flabby: H^-1 = " + (fl.witness ? fl.witness->value.to_string() : std::string("?")) +
                        " at " + (fl.witness ? fl.witness->subgroup.describe(*s.g) : std::string("?")));
  c.lattices.emplace_back("J_{G/H}", j);
  c.lattices.emplace_back("C°", cd);
  record_map(c, "phi_dual", s.phi.transpose());
  std::string head = "0 -> J_{G/H} -> P -> C° -> 0 exact, C° flabby";
  if (!compare_generic) return head;
  FlabbyClassInvariants generic = flabby_class_invariants(j);
  auto mine = cohomology_table(cd);
  require(mine.size() == generic.rows.size(), "subgroup class lists differ");
  for (std::size_t r = 0; r < mine.size(); ++r)
    require(mine[r].one == generic.rows[r].one,
            "H^1 at " + mine[r].subgroup.describe(*s.g) + " differs from the generic flabby resolution");
  return head + ", H^1 agrees with the generic resolution on " + std::to_string(mine.size()) + " classes";
}

void search_route(DihedralCase& c, const Construction& s, const std::vector<Subgroup>& targets,
                  const CaseOptions& opt) {
  if (!opt.search_route || !s.cq) return;
  try {
    IsoResult r = stably_permutation_certificate(*s.cq, 1, targets, opt.search);
    c.routes.push_back({"search", to_string(r.status), r.detail + " (" + std::to_string(r.candidates) + " nodes)"});
    if (r.certificate) c.isos.push_back({"search: " + describe_list(s.cq->group(), targets) + " = C + Z", *r.certificate});
  } catch (const ResourceError& e) {
    c.routes.push_back({"search", "unknown", e.what()});
  }
}

}  // namespace

DihedralCase build_main_ii(int n, const CaseOptions& opt) {
  if (n < 6 || n % 4 != 2) throw UsageError("main-ii needs n = 2 mod 4 and n >= 6, got " + std::to_string(n));
  DihedralCase c;
  c.id = CaseId::MainII;
  c.n = n;
  c.m = n / 2;
  const std::size_t m = static_cast<std::size_t>(c.m), nn = static_cast<std::size_t>(n);
  Construction s;
  s.g = dihedral_on_cosets(n);
  c.group = s.g;
  const FiniteGroup& g = *s.g;
  c.h = parse_subgroup_spec(g, "<x*y>");
  std::tie(c.u, c.v) = bezout_two(c.m);
  const int x = g.generator(0);

  GLattice pts = point_lattice(s.g);
  s.i = sublattice(pts, incl_matrix(nn), "I_{G/H}");
  c.lattices.emplace_back("I_{G/H}", *s.i);

  // P: alpha_1..alpha_m, beta_1..beta_m, gamma_1..gamma_n.
  const std::size_t rp = 2 * m + nn;
  std::vector<int> px(rp), py(rp);
  for (std::size_t i = 0; i < m; ++i) {
    px[i] = static_cast<int>((i + 1) % m);
    px[m + i] = static_cast<int>(m + (i + 1) % m);
    std::size_t partner = reflect(i + 1, m, m) - 1;
    py[i] = static_cast<int>(m + partner);
    py[m + partner] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < nn; ++j) {
    px[2 * m + j] = static_cast<int>(2 * m + (j + 1) % nn);
    py[2 * m + j] = static_cast<int>(2 * m + (nn - 1 - j));
  }
  s.p = permutation_action(s.g, {px, py}, "P");
  c.lattices.emplace_back("P", *s.p);

  // phi
  IntVector v0(nn - 1);
  for (std::size_t l = 1; l < m; ++l) v0 = add(v0, fvec(l, nn));
  v0 = add(v0, fvec(m + 1, nn));
  std::vector<IntVector> phicols;
  for (std::size_t i = 1; i <= m; ++i) phicols.push_back(add(fvec(i, nn), fvec(m + i, nn)));
  for (std::size_t i = 1; i <= m; ++i) phicols.push_back(add(IntVector(nn - 1), add(fvec(i, nn), fvec(m + i, nn)), -1));
  for (std::size_t j = 0; j < nn; ++j) {
    IntVector col = s.i->action(g.power(x, static_cast<long long>(j))) * v0;
    if (opt.perturb_gamma) col = add(col, fvec(1, nn));
    phicols.push_back(std::move(col));
  }
  s.phi = from_cols(phicols, nn - 1);
  s.equivariant = is_equivariant(*s.p, *s.i, s.phi);
  record_map(c, "phi", s.phi);

  // Kernel basis a_i, b_i, c_1.
  std::vector<IntVector> kcols;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector a(rp);
    a[i] = 1;
    a[m + i] = 1;
    kcols.push_back(std::move(a));
  }
  IntVector b1(rp);
  b1[0] = 1;
  b1[2 * m - 1] = 1;
  b1[2 * m] = -1;
  b1[2 * m + m] = -1;
  for (std::size_t i = 0; i < m; ++i) kcols.push_back(s.p->action(g.power(x, static_cast<long long>(i))) * b1);
  IntVector c1(rp);
  for (std::size_t i = 0; i < m; ++i) c1[i] = 1;
  kcols.push_back(c1);
  s.k = from_cols(kcols, rp);
  record_map(c, "kernel", s.k);

  Subgroup centre = parse_subgroup_spec(g, "<x^" + std::to_string(m) + ">");

  check(c, "phi_surjective", "phi: P -> I_{G/H} is a surjective G-map from P = Z[G/<x^m>] + Z[G/<xy>]", [&] {
    std::string d = check_surjective(c, s, {centre, c.h});
    // The spanning identities used for surjectivity.
    auto img = [&](std::size_t col) { return s.phi.column(col); };
    IntVector lhs1(nn - 1), lhs2 = add(fvec(m, nn), fvec(m + 2, nn));
    for (std::size_t l = 2; l < m; ++l) lhs1 = add(lhs1, fvec(l, nn));
    require(lhs1 == add(img(2 * m), img(0), -1), "sum_{l=2}^{m-1} f_l != phi(gamma_1) - phi(alpha_1)");
    require(lhs2 == add(add(img(0), img(2 * m), -1), img(2 * m + 1)),
            "f_m + f_{m+2} != -phi(gamma_1) + phi(alpha_1) + phi(gamma_2)");
    std::size_t which = m % 4 == 1 ? 1 : 2;
    require(solve(s.phi, fvec(which, nn)).has_value(), "f_" + std::to_string(which) + " is not in the image");
    return d + "; f_" + std::to_string(which) + " in the image";
  });
  check(c, "rank_C", "C = ker phi has rank n + 1 with basis a_i, b_i, c_1",
        [&] { return check_kernel_basis(c, s, nn + 1); });
  check(c, "printed_action", "x and y act on a_i, b_i, c_1 as listed", [&] {
    const std::size_t r = 2 * m + 1;
    std::vector<IntVector> ax, ay;
    for (std::size_t i = 0; i < m; ++i) ax.push_back(unit((i + 1) % m, r));
    for (std::size_t i = 0; i < m; ++i) ax.push_back(unit(m + (i + 1) % m, r));
    ax.push_back(unit(2 * m, r));
    for (std::size_t i = 1; i <= m; ++i) ay.push_back(unit(reflect(i, m, m) - 1, r));
    for (std::size_t i = 1; i <= m; ++i) ay.push_back(unit(m + reflect(i, m + 1, m) - 1, r));
    IntVector yc(r);
    for (std::size_t i = 0; i < m; ++i) yc[i] = 1;
    yc[2 * m] = -1;
    ay.push_back(yc);
    return check_action(s, {action_matrix(ax, r), action_matrix(ay, r)});
  });
  GroupPtr dm = dihedral_on_cosets(c.m);
  check(c, "center_trivial", "Z(G) = <x^m> acts trivially on C, so C is a D_m-lattice", [&] {
    const GLattice& cl = need(s.c, "C");
    require(cl.action(g.power(x, c.m)).is_identity(), "x^m acts nontrivially on C");
    s.cq = GLattice(dm, cl.generator_matrices(), "C");
    return "x^m acts as the identity; C descends to D_" + std::to_string(m);
  });
  std::vector<Subgroup> targets{parse_subgroup_spec(*dm, "<x^2*y>"), parse_subgroup_spec(*dm, "<x*y>"),
                                parse_subgroup_spec(*dm, "<x>")};
  check(c, "stably_permutation", "C + Z = Z[D_m/<x^2y>] + Z[D_m/<xy>] + Z[D_m/<x>]", [&] {
    std::vector<std::size_t> as;
    for (std::size_t i = 0; i < m; ++i) as.push_back(i);
    return check_completion(c, s, as, as, 2 * m, targets);
  });
  check(c, "flabby_resolution", "0 -> J_{G/H} -> P -> C° -> 0 is a flabby resolution",
        [&] { return check_dual_resolution(c, s, opt.compare_generic); });
  check(c, "h0_not_permutation", "H^0(D_m, C) = Z/2 and C is not a permutation lattice", [&] {
    const GLattice& cq = need(s.cq, "C over D_m");
    AbelianInvariants h0 = tate_zero(cq, Subgroup::whole(*dm));
    require(h0 == AbelianInvariants{{Integer(2)}, 0}, "H^0(D_m, C) = " + h0.to_string());
    auto ob = permutation_decomposition_obstruction(cq);
    require(ob.has_value(), "some permutation lattice of rank " + std::to_string(cq.rank()) + " matches every H^0");
    CheckResult ok = verify_obstruction(*ob);
    require(ok.ok, "obstruction does not verify: " + ok.failure);
    c.obstructions.push_back({"C is not permutation", *ob});
    return "H^0 = Z/2; " + std::to_string(ob->record.entries.size()) + " candidate decompositions ruled out";
  });
  search_route(c, s, targets, opt);
  c.dimensions = dimension_report(c);
  c.verdict = c.all_claims_pass() ? Verdict::StablyRational : Verdict::Unsupported;
  return c;
}

namespace {

DihedralCase build_odd(CaseId id, int n, const CaseOptions& opt) {
  if (n < 3 || n % 2 == 0)
    throw UsageError(std::string(to_string(id)) + " needs odd n >= 3, got " + std::to_string(n));
  const bool galois = id == CaseId::AppendixGalois;
  DihedralCase c;
  c.id = id;
  c.n = n;
  c.m = n;
  Construction s;
  s.g = galois ? dihedral_regular(n) : dihedral_on_cosets(n);
  c.group = s.g;
  const FiniteGroup& g = *s.g;
  c.h = galois ? Subgroup::trivial(g) : parse_subgroup_spec(g, "<x*y>");
  std::tie(c.u, c.v) = bezout_two(n);
  const std::size_t np = static_cast<std::size_t>(g.degree());

  GLattice pts = point_lattice(s.g);
  s.i = sublattice(pts, incl_matrix(np), galois ? "I_G" : "I_{G/H}");
  c.lattices.emplace_back("I_{G/H}", *s.i);

  // P: alpha_1..alpha_N, beta_1..beta_N; x as on the points,
  // y: alpha_i <-> beta_{N-i} (index N for 0).
  const auto& xi = g.element(g.generator(0)).images();
  auto p_action = [&](std::size_t shift) {
    std::vector<int> px(2 * np), py(2 * np);
    for (std::size_t i = 0; i < np; ++i) {
      px[i] = xi[i];
      px[np + i] = static_cast<int>(np) + xi[i];
      std::size_t partner = reflect(i + 1, np + shift, np) - 1;
      py[i] = static_cast<int>(np + partner);
      py[np + partner] = static_cast<int>(i);
    }
    return std::vector<std::vector<int>>{px, py};
  };
  s.p = permutation_action(s.g, p_action(0), "P");
  c.lattices.emplace_back("P", *s.p);
  std::vector<IntVector> phicols;
  for (std::size_t i = 1; i <= np; ++i) phicols.push_back(fvec(i, np));
  for (std::size_t i = 1; i <= np; ++i) phicols.push_back(add(IntVector(np - 1), fvec(i, np), -1));
  s.phi = from_cols(phicols, np - 1);
  s.equivariant = is_equivariant(*s.p, *s.i, s.phi);
  record_map(c, "phi", s.phi);

  const std::size_t rp = 2 * np, rc = np + 1;
  std::vector<IntVector> kcols;
  for (std::size_t i = 0; i < np; ++i) {
    IntVector a(rp);
    a[i] = 1;
    a[np + i] = 1;
    kcols.push_back(std::move(a));
  }
  IntVector b1(rp);
  for (std::size_t i = 0; i < np; ++i) b1[i] = 1;
  kcols.push_back(b1);
  s.k = from_cols(kcols, rp);
  record_map(c, "kernel", s.k);

  Subgroup one = Subgroup::trivial(g);
  std::vector<Subgroup> p_blocks = galois ? std::vector<Subgroup>{one, one} : std::vector<Subgroup>{one};
  check(c, "phi_surjective", galois ? "phi: P -> I_G is a surjective G-map from P = Z[G] + Z[G]"
                                    : "phi: P -> I_{G/H} is a surjective G-map from P = Z[G]",
        [&] { return check_surjective(c, s, p_blocks); });
  check(c, "rank_C", "C = ker phi has rank " + std::string(galois ? "2n + 1" : "n + 1") + " with basis a_i, b_1",
        [&] { return check_kernel_basis(c, s, rc); });
  check(c, "action_on_C", "x acts as on the points, y: a_i <-> a_{N-i}, a_N fixed, b_1 -> sum a_i - b_1", [&] {
    std::vector<IntVector> ax, ay;
    for (std::size_t i = 0; i < np; ++i) ax.push_back(unit(static_cast<std::size_t>(xi[i]), rc));
    ax.push_back(unit(np, rc));
    for (std::size_t i = 1; i <= np; ++i) ay.push_back(unit(reflect(i, np, np) - 1, rc));
    IntVector yb(rc);
    for (std::size_t i = 0; i < np; ++i) yb[i] = 1;
    yb[np] = -1;
    ay.push_back(yb);
    return check_action(s, {action_matrix(ax, rc), action_matrix(ay, rc)});
  });
  s.cq = s.c;
  std::vector<Subgroup> targets;
  if (galois)
    targets = {parse_subgroup_spec(g, "<x*y>"), parse_subgroup_spec(g, "<x^2*y>"), parse_subgroup_spec(g, "<x>")};
  else
    targets = {parse_subgroup_spec(g, "<x*y>"), parse_subgroup_spec(g, "<x>")};
  check(c, "stably_permutation", "C + Z = " + describe_list(g, targets), [&] {
    std::vector<std::size_t> shifted, all;
    for (std::size_t i = 0; i < np; ++i) {
      all.push_back(i);
      if (!galois || i % 2 == 0) shifted.push_back(i);
    }
    return check_completion(c, s, shifted, all, np, targets);
  });
  check(c, "flabby_resolution", "0 -> J_{G/H} -> P -> C° -> 0 is a flabby resolution",
        [&] { return check_dual_resolution(c, s, opt.compare_generic); });
  c.dimensions = dimension_report(c);
  check(c, "dimension_identity", "torus dimensions on both sides agree", [&] {
    require(c.dimensions.holds(), c.dimensions.to_string());
    std::size_t lhs = s.i->rank();
    for (const auto& u : targets) lhs += g.order() / u.order();
    require(lhs == c.dimensions.lhs_total() && s.p->rank() + 1 == c.dimensions.rhs_total(),
            "ranks of J + (C + Z) and P + Z do not match the dimension count");
    return c.dimensions.to_string();
  });

  // Printed variants, evaluated.
  if (galois) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < np / 2; ++i) cols.push_back(kcols[i]);
    cols.push_back(b1);
    std::size_t r = rank(from_cols(cols, rp));
    c.findings.push_back({"a-index-range",
                          "a_i listed for 1 <= i <= n spans rank " + std::to_string(r) + " < 2n + 1; the basis needs 1 <= i <= 2n",
                          r < rc});
    bool ok = false;
    if (s.c) {
      IntVector yb = s.c->generator_matrix(1).column(np);
      IntVector expect(rc);
      for (std::size_t i = 0; i < np; ++i) expect[i] = 1;
      expect[np] = -1;
      ok = yb == expect;
    }
    c.findings.push_back({"b2-undefined", "b_2 is used without definition; b_2 = sum beta_i = y b_1 makes y swap b'_1, b'_2", ok});
  } else {
    GLattice printed_p = permutation_action(s.g, p_action(1), "P (listed y)");
    c.findings.push_back({"p-y-index", "listed y: alpha_i <-> beta_{n+1-i} makes phi non-equivariant; alpha_i <-> beta_{n-i} works",
                          !is_equivariant(printed_p, *s.i, s.phi)});
    std::vector<IntVector> fy;
    for (std::size_t i = 1; i < np; ++i) fy.push_back(add(IntVector(np - 1), fvec(reflect(i, np + 1, np), np), -1));
    c.findings.push_back({"i-y-index", "listed y: f_i <-> -f_{n+1-i} on I_{G/H}; the action is f_i <-> -f_{n-i}",
                          from_cols(fy, np - 1) != s.i->generator_matrix(1)});
    bool differs = true;
    if (s.c) {
      std::vector<IntVector> ay;
      for (std::size_t i = 1; i <= np; ++i) ay.push_back(unit(reflect(i, np + 1, np) - 1, rc));
      ay.push_back(s.c->generator_matrix(1).column(np));
      differs = action_matrix(ay, rc) != s.c->generator_matrix(1);
    }
    c.findings.push_back({"c-y-index", "listed y: a_i <-> a_{n+1-i} on C; the action is a_i <-> a_{n-i}, a_n fixed", differs});
  }
  search_route(c, s, targets, opt);
  c.verdict = c.all_claims_pass() ? Verdict::StablyRational : Verdict::Unsupported;
  return c;
}

GLattice restrict_to(const GLattice& m, const Subgroup& u, GroupPtr gu) {
  std::vector<IntMatrix> mats;
  for (int e : u.generators()) mats.push_back(m.action(e));
  return GLattice::derived(std::move(gu), std::move(mats), m.label() + "|" + u.describe(m.group()), m.rank());
}

}  // namespace

DihedralCase build_appendix_galois(int n, const CaseOptions& opt) { return build_odd(CaseId::AppendixGalois, n, opt); }
DihedralCase build_appendix_c2(int n, const CaseOptions& opt) { return build_odd(CaseId::AppendixC2, n, opt); }

DihedralCase build_main_i(int n, const CaseOptions&) {
  if (n < 4 || n % 4 != 0) throw UsageError("main-i needs n = 0 mod 4 and n >= 4, got " + std::to_string(n));
  DihedralCase c;
  c.id = CaseId::MainI;
  c.n = n;
  c.m = n / 2;
  GroupPtr gp = dihedral_on_cosets(n);
  c.group = gp;
  const FiniteGroup& g = *gp;
  c.h = parse_subgroup_spec(g, "<x*y>");
  Subgroup gr = parse_subgroup_spec(g, "<x^2, y>");
  GroupPtr gr_group = subgroup_as_group(g, gr);
  GLattice j = chevalley_module(gp, c.h);
  c.lattices.emplace_back("J_{G/H}", j);
  std::optional<ExactTriple> res;
  std::optional<GLattice> fr;

  check(c, "restriction_dihedral", "G' = <x^2, y> is dihedral of order n", [&] {
    SubgroupShape sh = subgroup_shape(g, gr);
    require(sh.kind == SubgroupShape::Kind::Dihedral && sh.k == c.m && gr.order() == static_cast<std::size_t>(n),
            "G' has order " + std::to_string(gr.order()) + " and is not D_{n/2}");
    return "G' = D_" + std::to_string(c.m) + " of order " + std::to_string(n);
  });
  check(c, "trivial_intersection", "H and G' intersect trivially", [&] {
    require(intersection(g, c.h, gr).is_trivial(), "H meets G'");
    return "H ∩ G' = 1";
  });
  check(c, "regular_restriction", "G' is transitive on G/H, so Z[G/H] restricted to G' is Z[G']", [&] {
    require(is_transitive(g, gr), "G' is not transitive");
    GLattice zr = restrict_to(coset_lattice(gp, c.h), gr, gr_group);
    IsoResult r = find_iso(zr, coset_lattice(gr_group, Subgroup::trivial(*gr_group)));
    require(r.certificate.has_value(), std::string("no isomorphism found: ") + to_string(r.status));
    c.isos.push_back({"Z[G/H]|G' = Z[G']", *r.certificate});
    return "transitive; Z[G/H]|G' = Z[G'] certified";
  });
  check(c, "sylow_noncyclic", "a Sylow 2-subgroup of G' is not cyclic", [&] {
    SylowReport rep = sylow_all_cyclic(*gr_group, Subgroup::whole(*gr_group));
    for (const auto& e : rep.entries)
      if (e.p == 2) {
        require(!e.cyclic, "Sylow 2-subgroup is cyclic");
        return "Sylow 2-subgroup " + e.sylow.describe(*gr_group) + " of order " + std::to_string(e.sylow.order()) +
               " is not cyclic";
      }
    throw ClaimFailure("G' has even order but no Sylow 2 entry");
  });
  check(c, "flabby_resolution", "0 -> J_{G/H} -> P -> F -> 0 is a flabby resolution", [&] {
    res = flabby_resolution(j);
    CheckResult ex = verify_exact(*res);
    require(ex.ok, "not exact: " + ex.failure);
    require(is_flabby(res->right).holds, "F is not flabby");
    c.lattices.emplace_back("P", res->mid);
    c.lattices.emplace_back("F", res->right);
    return "rank P = " + std::to_string(res->mid.rank()) + ", rank F = " + std::to_string(res->right.rank());
  });
  check(c, "not_invertible", "F restricted to G' is not invertible", [&] {
    require(res.has_value(), "requires the flabby resolution");
    fr = restrict_to(res->right, gr, gr_group);
    NonInvertibility ni = non_invertibility_certificate(*fr, FlabbyOrigin{gr_group, Subgroup::trivial(*gr_group)});
    require(ni.certificate() != nullptr, "neither strategy produced a certificate");
    std::string d;
    if (ni.sylow) {
      CheckResult ok = verify_obstruction(*ni.sylow);
      require(ok.ok, "Sylow certificate does not verify: " + ok.failure);
      c.obstructions.push_back({"noncyclic Sylow", *ni.sylow});
      c.routes.push_back({"sylow", "found", "p = 2, " + ni.sylow->sylow.describe(*gr_group)});
      d = "noncyclic Sylow 2-subgroup";
    } else {
      c.routes.push_back({"sylow", "not_applicable", ""});
    }
    if (ni.h1) {
      CheckResult ok = verify_obstruction(*ni.h1);
      require(ok.ok, "H^1 certificate does not verify: " + ok.failure);
      c.obstructions.push_back({"nonzero H^1", *ni.h1});
      c.routes.push_back({"h1", "found", "H^1 = " + ni.h1->invariants.to_string() + " at " + ni.h1->subgroup.describe(*gr_group)});
      d += (d.empty() ? "" : "; ") + std::string("H^1 = ") + ni.h1->invariants.to_string() + " at " +
           ni.h1->subgroup.describe(*gr_group);
    } else {
      c.routes.push_back({"h1", "not_found", "H^1 vanishes on every subgroup of G'"});
      d += "; H^1 vanishes on G'";
    }
    c.lattices.emplace_back("F|G'", *fr);
    return d;
  });
  c.dimensions = dimension_report(c);
  c.verdict = c.all_claims_pass() ? Verdict::NotRetractRational : Verdict::Unsupported;
  return c;
}

DihedralCase build_case(CaseId id, int n, const CaseOptions& opt) {
  switch (id) {
    case CaseId::MainI: return build_main_i(n, opt);
    case CaseId::MainII: return build_main_ii(n, opt);
    case CaseId::AppendixGalois: return build_appendix_galois(n, opt);
    case CaseId::AppendixC2: return build_appendix_c2(n, opt);
  }
  throw UsageError("unknown case");
}

DimensionReport dimension_report(const DihedralCase& c) {
  DimensionReport d;
  if (!c.group || c.id == CaseId::MainI) return d;
  const FiniteGroup& g = *c.group;
  auto idx = [&](const std::string& spec) {
    return DimensionTerm{"[G:" + spec + "]", g.order() / parse_subgroup_spec(g, spec).order()};
  };
  const std::size_t n = static_cast<std::size_t>(c.n);
  d.applicable = true;
  switch (c.id) {
    case CaseId::MainII: {
      std::string xm = "x^" + std::to_string(c.m);
      d.lhs = {{"rank J_{G/H}", n - 1}, idx("<" + xm + ", x^2*y>"), idx("<" + xm + ", x*y>"), idx("<x>")};
      d.rhs = {idx("<" + xm + ">"), idx("<x*y>"), {"Z", 1}};
      break;
    }
    case CaseId::AppendixGalois:
      d.lhs = {{"rank J_G", 2 * n - 1}, idx("<x*y>"), idx("<x^2*y>"), idx("<x>")};
      d.rhs = {idx("1"), idx("1"), {"Z", 1}};
      break;
    case CaseId::AppendixC2:
      d.lhs = {{"rank J_{G/H}", n - 1}, idx("<x*y>"), idx("<x>")};
      d.rhs = {idx("1"), {"Z", 1}};
      break;
    case CaseId::MainI: break;
  }
  return d;
}

}  // namespace norm1lat

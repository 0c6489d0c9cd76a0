#include "norm1lat/certify.hpp"

#include <algorithm>
#include <map>

#include "norm1lat/errors.hpp"
#include "norm1lat/parallel.hpp"

namespace norm1lat {

CheckResult verify_exact(const ExactTriple& t) {
  const IntMatrix& i = t.inj.matrix;
  const IntMatrix& s = t.surj.matrix;
  if (i.rows() != t.mid.rank() || i.cols() != t.left.rank())
    throw UsageError("injection has shape " + std::to_string(i.rows()) + "x" + std::to_string(i.cols()) +
                     ", expected " + std::to_string(t.mid.rank()) + "x" + std::to_string(t.left.rank()));
  if (s.rows() != t.right.rank() || s.cols() != t.mid.rank())
    throw UsageError("surjection has shape " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                     ", expected " + std::to_string(t.right.rank()) + "x" + std::to_string(t.mid.rank()));
  if (!is_equivariant(t.left, t.mid, i)) return CheckResult::fail("injection is not equivariant");
  if (!is_equivariant(t.mid, t.right, s)) return CheckResult::fail("surjection is not equivariant");
  if (rank(i) != t.left.rank()) return CheckResult::fail("injection has a kernel");
  AbelianInvariants cok = cokernel_invariants(s);
  if (!cok.is_trivial()) return CheckResult::fail("surjection has cokernel " + cok.to_string());
  if (!(s * i).is_zero()) return CheckResult::fail("composite is nonzero");
  if (canonical_column_basis(i) != kernel_basis(s)) return CheckResult::fail("image of the injection is not the kernel");
  return {};
}

std::vector<IntMatrix> hom_basis(const GLattice& m, const GLattice& n) {
  if (m.group().order() != n.group().order() || m.group().generator_names() != n.group().generator_names())
    throw UsageError("hom between lattices over different groups");
  const std::size_t rm = m.rank(), rn = n.rank(), vars = rm * rn;
  if (vars == 0) return {};
  // X is flattened row-major: X(i, j) -> i * rm + j.
  std::vector<IntMatrix> blocks;
  for (std::size_t s = 0; s < m.generator_matrices().size(); ++s) {
    const IntMatrix& a = m.generator_matrix(s);
    const IntMatrix& b = n.generator_matrix(s);
    IntMatrix eq(vars, vars);
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < rm; ++j) {
        std::size_t row = i * rm + j;
        for (std::size_t k = 0; k < rn; ++k)
          if (!b(i, k).is_zero()) eq(row, k * rm + j) += b(i, k);
        for (std::size_t k = 0; k < rm; ++k)
          if (!a(k, j).is_zero()) eq(row, i * rm + k) -= a(k, j);
      }
    blocks.push_back(std::move(eq));
  }
  IntMatrix k = blocks.empty() ? IntMatrix::identity(vars) : kernel_of_stack(blocks, vars);
  std::vector<IntMatrix> out;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    IntMatrix x(rn, rm);
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < rm; ++j) x(i, j) = k(i * rm + j, c);
    out.push_back(std::move(x));
  }
  return out;
}

CheckResult verify_iso(const IsoCertificate& c) {
  const IntMatrix& x = c.matrix;
  if (x.rows() != c.target.rank() || x.cols() != c.source.rank() || x.rows() != x.cols())
    return CheckResult::fail("certificate matrix has the wrong shape");
  if (abs(determinant(x)) != Integer(1)) return CheckResult::fail("certificate matrix is not unimodular");
  if (!is_equivariant(c.source, c.target, x)) return CheckResult::fail("certificate matrix is not equivariant");
  return {};
}

const char* to_string(IsoResult::Status s) {
  switch (s) {
    case IsoResult::Status::Found: return "found";
    case IsoResult::Status::NotIsomorphic: return "not_isomorphic";
    case IsoResult::Status::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Odometer over [-b, b]^d in the order 0, 1, -1, 2, -2, ... per digit, last
// digit fastest.
class CoefficientOdometer {
 public:
  CoefficientOdometer(std::size_t d, int b) : digits_(d, 0), b_(b) {}
  const std::vector<int>& digits() const { return digits_; }
  int value(std::size_t i) const { return digits_[i] == 0 ? 0 : (digits_[i] % 2 ? (digits_[i] + 1) / 2 : -digits_[i] / 2); }
  int max_norm() const {
    int m = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) m = std::max(m, std::abs(value(i)));
    return m;
  }
  bool next() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (digits_[i] < 2 * b_) {
        ++digits_[i];
        return true;
      }
      digits_[i] = 0;
    }
    return false;
  }

 private:
  std::vector<int> digits_;
  int b_;
};

bool too_many(std::size_t d, int b, std::size_t cap) {
  double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= 2 * b + 1;
  return count > static_cast<double>(cap);
}

struct Orbit {
  std::vector<std::size_t> points;  // basis indices of the permutation side
  std::vector<int> movers;          // element taking the base point to each point
  IntMatrix fixed;                  // basis of the fixed sublattice of the stabilizer
};

// Orbits of a lattice with a permutation basis, with the stabilizer fixed
// sublattices computed in the other lattice.
std::vector<Orbit> orbit_data(const GLattice& perm, const GLattice& other) {
  const FiniteGroup& g = perm.group();
  const std::size_t r = perm.rank();
  std::vector<std::vector<int>> images(g.order());
  for (int e = 0; e < static_cast<int>(g.order()); ++e) images[static_cast<std::size_t>(e)] = perm.action(e).permutation_images();
  std::vector<char> seen(r, 0);
  std::vector<Orbit> out;
  for (std::size_t b = 0; b < r; ++b) {
    if (seen[b]) continue;
    Orbit o;
    std::vector<int> stab;
    std::map<std::size_t, int> mover;
    for (int e = 0; e < static_cast<int>(g.order()); ++e) {
      std::size_t q = static_cast<std::size_t>(images[static_cast<std::size_t>(e)][b]);
      if (q == b) stab.push_back(e);
      mover.emplace(q, e);
    }
    for (auto [q, e] : mover) {
      seen[q] = 1;
      o.points.push_back(q);
      o.movers.push_back(e);
    }
    o.fixed = fixed_sublattice(other, Subgroup::generated_by(g, stab));
    out.push_back(std::move(o));
  }
  return out;
}

struct OrbitSearch {
  const GLattice& other;
  const std::vector<Orbit>& orbits;
  std::size_t budget;
  std::size_t nodes = 0;
  int bound = 1;
  bool exhausted_budget = false;
  std::vector<IntVector> cols;  // by orbit order
  std::vector<int> used_norm;   // max-norm per placed orbit

  bool run(std::size_t k) {
    if (k == orbits.size()) {
      return *std::max_element(used_norm.begin(), used_norm.end()) == bound;
    }
    const Orbit& o = orbits[k];
    const std::size_t d = o.fixed.cols();
    CoefficientOdometer od(d, bound);
    while (od.next()) {
      if (++nodes > budget) {
        exhausted_budget = true;
        return false;
      }
      IntVector coeff(d);
      for (std::size_t i = 0; i < d; ++i) coeff[i] = od.value(i);
      IntVector w = o.fixed * std::span<const Integer>(coeff);
      std::size_t base = cols.size();
      for (int e : o.movers) cols.push_back(other.action(e) * std::span<const Integer>(w));
      if (is_saturated_basis(IntMatrix::from_columns(cols, other.rank()))) {
        used_norm.push_back(od.max_norm());
        if (run(k + 1)) return true;
        used_norm.pop_back();
        if (exhausted_budget) return false;
      }
      cols.resize(base);
    }
    return false;
  }
};

// X: perm -> other, equivariant and unimodular, or nullopt.
IsoResult search_from_permutation(const GLattice& perm, const GLattice& other, const IsoSearchOptions& opt) {
  IsoResult res;
  std::vector<Orbit> orbits = orbit_data(perm, other);
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (orbits[i].fixed.cols() == 0) {
      res.status = IsoResult::Status::NotIsomorphic;
      res.detail = "orbit " + std::to_string(i) + " has no nonzero image: the stabilizer fixes nothing";
      return res;
    }
  for (int b = 1; b <= opt.search_bound; ++b) {
    OrbitSearch s{other, orbits, opt.node_budget - res.candidates, 0, b, false, {}, {}};
    bool ok = s.run(0);
    res.candidates += s.nodes;
    if (ok) {
      IntMatrix x(other.rank(), perm.rank());
      std::size_t c = 0;
      for (const auto& o : orbits)
        for (std::size_t q : o.points) x.set_column(q, s.cols[c++]);
      res.status = IsoResult::Status::Found;
      res.certificate = IsoCertificate{perm, other, std::move(x)};
      res.detail = "orbit search, bound " + std::to_string(b);
      return res;
    }
    if (s.exhausted_budget) {
      res.detail = "node budget exhausted at bound " + std::to_string(b);
      return res;
    }
  }
  res.detail = "no certificate with coefficients up to " + std::to_string(opt.search_bound);
  return res;
}

IsoResult search_hom_shells(const GLattice& m, const GLattice& n, const IsoSearchOptions& opt) {
  IsoResult res;
  std::vector<IntMatrix> basis = hom_basis(m, n);
  if (basis.empty()) {
    res.status = IsoResult::Status::NotIsomorphic;
    res.detail = "no nonzero equivariant map";
    return res;
  }
  for (int b = 1; b <= opt.search_bound; ++b) {
    if (too_many(basis.size(), b, opt.node_budget)) {
      res.detail = "hom lattice of rank " + std::to_string(basis.size()) + " too large at bound " + std::to_string(b);
      return res;
    }
    CoefficientOdometer od(basis.size(), b);
    while (od.next()) {
      if (od.max_norm() != b) continue;
      ++res.candidates;
      IntMatrix x(n.rank(), m.rank());
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (od.value(i) != 0) x += basis[i].scaled(Integer(od.value(i)));
      if (abs(determinant(x)) == Integer(1)) {
        res.status = IsoResult::Status::Found;
        res.certificate = IsoCertificate{m, n, std::move(x)};
        res.detail = "hom shell search, bound " + std::to_string(b);
        return res;
      }
    }
  }
  res.detail = "no unimodular combination with coefficients up to " + std::to_string(opt.search_bound);
  return res;
}

}  // namespace

IsoResult find_iso(const GLattice& m, const GLattice& n, IsoSearchOptions opt) {
  IsoResult res;
  if (m.rank() != n.rank()) {
    res.status = IsoResult::Status::NotIsomorphic;
    res.detail = "ranks differ";
    return res;
  }
  if (m.generator_matrices() == n.generator_matrices() && m.group().describe() == n.group().describe()) {
    res.status = IsoResult::Status::Found;
    res.certificate = IsoCertificate{m, n, IntMatrix::identity(m.rank())};
    res.detail = "identity";
    return res;
  }
  if (n.has_permutation_basis()) {
    res = search_from_permutation(n, m, opt);
    if (res.certificate) res.certificate = IsoCertificate{m, n, unimodular_inverse(res.certificate->matrix)};
  } else if (m.has_permutation_basis()) {
    res = search_from_permutation(m, n, opt);
  } else {
    res = search_hom_shells(m, n, opt);
  }
  if (res.certificate) {
    CheckResult c = verify_iso(*res.certificate);
    if (!c) throw InternalError("isomorphism search produced a bad certificate: " + c.failure);
  }
  return res;
}

IsoResult stably_permutation_certificate(const GLattice& m, std::size_t pad, const std::vector<Subgroup>& targets,
                                         IsoSearchOptions opt) {
  std::size_t total = 0;
  for (const auto& u : targets) total += m.group().order() / u.order();
  if (m.rank() + pad != total)
    throw UsageError("rank " + std::to_string(m.rank()) + " + " + std::to_string(pad) +
                     " does not match the target rank " + std::to_string(total));
  GLattice src = pad ? direct_sum(m, trivial_lattice(m.group_ptr(), pad)) : m;
  return find_iso(src, permutation_lattice(m.group_ptr(), targets), opt);
}

const char* to_string(ObstructionCertificate::Kind k) {
  switch (k) {
    case ObstructionCertificate::Kind::NoncyclicSylow: return "noncyclic_sylow";
    case ObstructionCertificate::Kind::NonzeroH1: return "nonzero_H1";
    case ObstructionCertificate::Kind::RankMultiset: return "rank_multiset";
  }
  return "?";
}

AbelianInvariants permutation_h0(const FiniteGroup& g, const Subgroup& v, const Subgroup& u) {
  Cosets cs = cosets(g, u);
  std::vector<char> seen(cs.size(), 0);
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (seen[i]) continue;
    std::size_t size = 0;
    for (int e : v.members()) {
      std::size_t j = static_cast<std::size_t>(cs.act(g, e, static_cast<int>(i)));
      if (!seen[j]) {
        seen[j] = 1;
        ++size;
      }
    }
    orders.emplace_back(static_cast<long long>(v.order() / size));
  }
  return AbelianInvariants::from_cyclic_orders(orders);
}

namespace {

std::vector<std::vector<AbelianInvariants>> permutation_h0_table(const FiniteGroup& g, const std::vector<Subgroup>& cls) {
  return parallel_map(cls.size(), [&](std::size_t v) {
    std::vector<AbelianInvariants> row;
    for (const auto& u : cls) row.push_back(permutation_h0(g, cls[v], u));
    return row;
  });
}

AbelianInvariants sum_h0(const std::vector<AbelianInvariants>& row, const std::vector<int>& counts) {
  AbelianInvariants out;
  for (std::size_t u = 0; u < counts.size(); ++u)
    for (int c = 0; c < counts[u]; ++c) out = out + row[u];
  return out;
}

// Classes are checked with the whole group first, then in class order.
std::vector<std::size_t> witness_order(std::size_t n) {
  std::vector<std::size_t> out{n - 1};
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(i);
  return out;
}

// Number of count vectors with sum counts[i] * idx[i] = rank.
unsigned long long count_multisets(const std::vector<std::size_t>& idx, std::size_t rank) {
  std::vector<unsigned long long> ways(rank + 1, 0);
  ways[0] = 1;
  for (std::size_t d : idx)
    for (std::size_t s = d; s <= rank; ++s) ways[s] += ways[s - d];
  return ways[rank];
}

}  // namespace

std::optional<ObstructionCertificate> permutation_decomposition_obstruction(const GLattice& m, MultisetOptions opt) {
  const FiniteGroup& g = m.group();
  if (m.rank() > opt.max_rank)
    throw ResourceError("rank " + std::to_string(m.rank()) + " exceeds the multiset bound " + std::to_string(opt.max_rank));
  MultisetRecord rec;
  rec.rank = m.rank();
  for (const auto& c : g.subgroup_classes()) {
    rec.classes.push_back(c.rep);
    rec.indices.push_back(g.order() / c.rep.order());
  }
  if (count_multisets(rec.indices, rec.rank) > opt.max_multisets)
    throw ResourceError("more than " + std::to_string(opt.max_multisets) + " permutation lattices of rank " +
                        std::to_string(rec.rank));
  rec.h0_lattice = parallel_map(rec.classes.size(), [&](std::size_t i) { return tate_zero(m, rec.classes[i]); });
  auto table = permutation_h0_table(g, rec.classes);
  const auto order = witness_order(rec.classes.size());

  std::vector<int> counts(rec.classes.size(), 0);
  bool inconclusive = false;
  auto visit = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (inconclusive) return;
    if (k == counts.size()) {
      if (left != 0) return;
      for (std::size_t v : order)
        if (sum_h0(table[v], counts) != rec.h0_lattice[v]) {
          rec.entries.push_back({counts, v});
          return;
        }
      inconclusive = true;
      return;
    }
    for (int c = static_cast<int>(left / rec.indices[k]); c >= 0; --c) {
      counts[k] = c;
      self(self, k + 1, left - static_cast<std::size_t>(c) * rec.indices[k]);
    }
    counts[k] = 0;
  };
  visit(visit, 0, rec.rank);
  if (inconclusive) return std::nullopt;
  ObstructionCertificate cert;
  cert.kind = ObstructionCertificate::Kind::RankMultiset;
  cert.lattice = m;
  cert.record = std::move(rec);
  return cert;
}

namespace {

CheckResult verify_multiset(const ObstructionCertificate& c) {
  const MultisetRecord& rec = c.record;
  const FiniteGroup& g = c.lattice.group();
  const auto& cls = g.subgroup_classes();
  if (rec.rank != c.lattice.rank()) return CheckResult::fail("record rank differs from the lattice rank");
  if (rec.classes.size() != cls.size() || rec.indices.size() != cls.size() || rec.h0_lattice.size() != cls.size())
    return CheckResult::fail("record does not list every subgroup class");
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (!(rec.classes[i] == cls[i].rep)) return CheckResult::fail("class list differs from the group's classes");
    if (rec.indices[i] != g.order() / cls[i].rep.order()) return CheckResult::fail("wrong index for a class");
  }
  std::vector<std::vector<int>> seen;
  for (const auto& e : rec.entries) {
    if (e.counts.size() != cls.size() || e.witness >= cls.size()) return CheckResult::fail("malformed entry");
    std::size_t total = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (e.counts[i] < 0) return CheckResult::fail("negative multiplicity");
      total += static_cast<std::size_t>(e.counts[i]) * rec.indices[i];
    }
    if (total != rec.rank) return CheckResult::fail("entry has the wrong rank");
    seen.push_back(e.counts);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return CheckResult::fail("duplicate entry");
  if (seen.size() != count_multisets(rec.indices, rec.rank)) return CheckResult::fail("search record is incomplete");
  std::map<std::size_t, AbelianInvariants> lattice_h0;
  for (const auto& e : rec.entries) {
    auto it = lattice_h0.find(e.witness);
    if (it == lattice_h0.end()) it = lattice_h0.emplace(e.witness, tate_zero(c.lattice, cls[e.witness].rep)).first;
    if (it->second != rec.h0_lattice[e.witness]) return CheckResult::fail("recorded H^0 of the lattice is wrong");
    AbelianInvariants p;
    for (std::size_t u = 0; u < cls.size(); ++u)
      for (int k = 0; k < e.counts[u]; ++k) p = p + permutation_h0(g, cls[e.witness].rep, cls[u].rep);
    if (p == it->second) return CheckResult::fail("an entry's witness does not separate it");
  }
  return {};
}

}  // namespace

CheckResult verify_obstruction(const ObstructionCertificate& c) {
  switch (c.kind) {
    case ObstructionCertificate::Kind::NoncyclicSylow: {
      if (!c.group) return CheckResult::fail("no group in the certificate");
      const FiniteGroup& g = *c.group;
      std::size_t ppart = 1, n = g.order();
      while (n % static_cast<std::size_t>(c.prime) == 0) {
        n /= static_cast<std::size_t>(c.prime);
        ppart *= static_cast<std::size_t>(c.prime);
      }
      if (ppart == 1 || c.sylow.order() != ppart) return CheckResult::fail("not a Sylow subgroup");
      for (int a : c.sylow.members())
        for (int b : c.sylow.members())
          if (!c.sylow.contains(g.mul(a, b))) return CheckResult::fail("Sylow witness is not a subgroup");
      for (int a : c.sylow.members())
        if (static_cast<std::size_t>(g.element_order(a)) == ppart) return CheckResult::fail("Sylow subgroup is cyclic");
      return {};
    }
    case ObstructionCertificate::Kind::NonzeroH1: {
      if (c.invariants.is_trivial()) return CheckResult::fail("recorded H^1 is zero");
      // Recomputed without relators: H^1 is the torsion of M^gens / {(s-1)m}.
      const GLattice& m = c.lattice;
      std::vector<IntMatrix> parts;
      for (int s : c.subgroup.generators()) parts.push_back(m.action(s) - IntMatrix::identity(m.rank()));
      if (parts.empty()) return CheckResult::fail("H^1 of the trivial group is zero");
      AbelianInvariants v = cokernel_invariants(vstack(parts, m.rank()));
      v.free_rank = 0;
      if (v != c.invariants) return CheckResult::fail("H^1 recomputes to " + v.to_string());
      return {};
    }
    case ObstructionCertificate::Kind::RankMultiset: return verify_multiset(c);
  }
  return CheckResult::fail("unknown certificate kind");
}

const ObstructionCertificate* NonInvertibility::certificate() const {
  if (sylow) return &*sylow;
  if (h1) return &*h1;
  return nullptr;
}

NonInvertibility non_invertibility_certificate(const GLattice& m, const std::optional<FlabbyOrigin>& origin) {
  NonInvertibility out;
  if (origin && origin->group && origin->h.is_trivial()) {
    SylowReport rep = sylow_all_cyclic(*origin->group);
    for (const auto& e : rep.entries)
      if (!e.cyclic) {
        ObstructionCertificate c;
        c.kind = ObstructionCertificate::Kind::NoncyclicSylow;
        c.lattice = m;
        c.group = origin->group;
        c.prime = e.p;
        c.sylow = e.sylow;
        out.sylow = std::move(c);
        break;
      }
  }
  PredicateResult r = is_coflabby(m);
  if (!r.holds) {
    ObstructionCertificate c;
    c.kind = ObstructionCertificate::Kind::NonzeroH1;
    c.lattice = m;
    c.subgroup = r.witness->subgroup;
    c.invariants = r.witness->value;
    out.h1 = std::move(c);
  }
  return out;
}

}  // namespace norm1lat

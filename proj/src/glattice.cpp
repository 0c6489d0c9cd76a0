#include "norm1lat/glattice.hpp"

#include <mutex>

#include "norm1lat/errors.hpp"

namespace norm1lat {

struct GLattice::Cache {
  std::mutex mu;
  std::vector<std::unique_ptr<IntMatrix>> mats;
};

namespace {

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return true;
  if (a.order() != b.order() || a.generator_names() != b.generator_names()) return false;
  for (std::size_t i = 0; i < a.num_generators(); ++i)
    if (a.element(a.generator(i)) != b.element(b.generator(i))) return false;
  return true;
}

IntMatrix word_matrix(const std::vector<IntMatrix>& gens, const Word& w, std::size_t rank) {
  IntMatrix out = IntMatrix::identity(rank);
  for (auto [g, e] : w) {
    IntMatrix a = e < 0 ? unimodular_inverse(gens[static_cast<std::size_t>(g)]) : gens[static_cast<std::size_t>(g)];
    for (int k = 0; k < (e < 0 ? -e : e); ++k) out = out * a;
  }
  return out;
}

}  // namespace

GLattice GLattice::derived(GroupPtr g, std::vector<IntMatrix> generator_matrices, std::string label,
                           std::size_t rank) {
  GLattice m;
  if (!g) throw UsageError("lattice without a group");
  if (generator_matrices.size() != g->num_generators())
    throw UsageError("expected " + std::to_string(g->num_generators()) + " generator matrices, got " +
                     std::to_string(generator_matrices.size()));
  m.rank_ = generator_matrices.empty() ? rank : generator_matrices[0].rows();
  for (const auto& a : generator_matrices)
    if (a.rows() != m.rank_ || a.cols() != m.rank_) throw UsageError("generator matrices must be square of equal size");
  m.group_ = std::move(g);
  m.gens_ = std::move(generator_matrices);
  m.label_ = std::move(label);
  m.cache_ = std::make_shared<Cache>();
  m.cache_->mats.resize(m.group_->order());
  m.cache_->mats[0] = std::make_unique<IntMatrix>(IntMatrix::identity(m.rank_));
  return m;
}

GLattice::GLattice(GroupPtr g, std::vector<IntMatrix> generator_matrices, std::string label) {
  *this = derived(std::move(g), std::move(generator_matrices), std::move(label));
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!gens_[i].is_permutation_matrix() && abs(determinant(gens_[i])) != Integer(1))
      throw UsageError("matrix of generator " + group_->generator_name(i) + " is not unimodular");
  if (!group_->relators().empty()) {
    for (const auto& r : group_->relators())
      if (!word_matrix(gens_, r, rank_).is_identity())
        throw UsageError("generator matrices violate a relator of " + group_->describe());
  } else {
    for (int e = 0; e < static_cast<int>(group_->order()); ++e)
      for (std::size_t s = 0; s < gens_.size(); ++s)
        if (gens_[s] * action(e) != action(group_->mul(group_->generator(s), e)))
          throw UsageError("generator matrices do not define an action of " + group_->describe());
  }
}

GLattice GLattice::relabeled(std::string label) const {
  GLattice m = *this;
  m.label_ = std::move(label);
  return m;
}

const IntMatrix& GLattice::action(int element) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& mats = cache_->mats;
  std::vector<int> chain;
  for (int cur = element; !mats[static_cast<std::size_t>(cur)]; cur = group_->word_parent(cur)) chain.push_back(cur);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    int e = *it;
    const IntMatrix& s = gens_[static_cast<std::size_t>(group_->word(e)[0])];
    mats[static_cast<std::size_t>(e)] = std::make_unique<IntMatrix>(s * *mats[static_cast<std::size_t>(group_->word_parent(e))]);
  }
  return *mats[static_cast<std::size_t>(element)];
}

IntMatrix GLattice::norm_matrix(const Subgroup& u) const {
  IntMatrix n(rank_, rank_);
  for (int e : u.members()) n += action(e);
  return n;
}

bool GLattice::has_permutation_basis() const {
  for (const auto& a : gens_)
    if (!a.is_permutation_matrix()) return false;
  return true;
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m) {
  if (m.rows() != target.rank() || m.cols() != source.rank()) return false;
  if (!same_group(source.group(), target.group())) return false;
  for (std::size_t i = 0; i < source.generator_matrices().size(); ++i)
    if (target.generator_matrix(i) * m != m * source.generator_matrix(i)) return false;
  return true;
}

LatticeMap LatticeMap::make(GLattice source, GLattice target, IntMatrix matrix) {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw InternalError("map matrix shape does not match " + source.label() + " -> " + target.label());
  if (!is_equivariant(source, target, matrix))
    throw InternalError("map " + source.label() + " -> " + target.label() + " is not equivariant");
  return LatticeMap{std::move(source), std::move(target), std::move(matrix)};
}

LatticeMap LatticeMap::compose_after(const LatticeMap& first) const {
  return make(first.source, target, matrix * first.matrix);
}

GLattice trivial_lattice(GroupPtr g, std::size_t rank) {
  std::vector<IntMatrix> mats(g->num_generators(), IntMatrix::identity(rank));
  return GLattice::derived(std::move(g), std::move(mats), rank == 1 ? "Z" : "Z^" + std::to_string(rank), rank);
}

GLattice coset_lattice(GroupPtr g, const Subgroup& h) {
  Cosets cs = cosets(*g, h);
  std::vector<IntMatrix> mats;
  for (int s : g->generators()) {
    std::vector<int> img(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) img[i] = cs.act(*g, s, static_cast<int>(i));
    mats.push_back(IntMatrix::permutation(img));
  }
  std::string label = "Z[G/" + h.describe(*g) + "]";
  return GLattice::derived(std::move(g), std::move(mats), std::move(label), cs.size());
}

GLattice permutation_lattice(GroupPtr g, const std::vector<Subgroup>& subgroups) {
  std::vector<GLattice> parts;
  for (const auto& h : subgroups) parts.push_back(coset_lattice(g, h));
  if (parts.empty()) return trivial_lattice(g, 0).relabeled("0");
  return direct_sum(parts);
}

AugmentationSequence augmentation_sequence(GroupPtr g, const Subgroup& h) {
  GLattice p = coset_lattice(g, h);
  const std::size_t m = p.rank();
  IntMatrix incl(m, m - 1), back(m - 1, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    incl(i, i) = 1;
    incl(i + 1, i) = -1;
    for (std::size_t j = 0; j <= i; ++j) back(i, j) = 1;
  }
  std::vector<IntMatrix> mats;
  for (const auto& a : p.generator_matrices()) mats.push_back(back * a * incl);
  GLattice ideal = GLattice::derived(g, std::move(mats), "I_{G/" + h.describe(*g) + "}", m - 1);
  GLattice triv = trivial_lattice(g, 1);
  IntMatrix eps(1, m);
  for (std::size_t j = 0; j < m; ++j) eps(0, j) = 1;
  LatticeMap inc = LatticeMap::make(ideal, p, incl);
  LatticeMap ep = LatticeMap::make(p, triv, eps);
  return {std::move(ideal), std::move(p), std::move(triv), std::move(inc), std::move(ep)};
}

GLattice augmentation_ideal(GroupPtr g, const Subgroup& h) { return augmentation_sequence(std::move(g), h).ideal; }

GLattice chevalley_module(GroupPtr g, const Subgroup& h) {
  std::string label = "J_{G/" + h.describe(*g) + "}";
  return dual(augmentation_ideal(std::move(g), h)).relabeled(std::move(label));
}

GLattice dual(const GLattice& m) {
  std::vector<IntMatrix> mats;
  const auto& g = m.group();
  for (std::size_t i = 0; i < g.num_generators(); ++i) mats.push_back(m.action(g.inv(g.generator(i))).transpose());
  return GLattice::derived(m.group_ptr(), std::move(mats), "dual(" + m.label() + ")", m.rank());
}

GLattice direct_sum(const std::vector<GLattice>& parts) {
  if (parts.empty()) throw UsageError("empty direct sum");
  for (const auto& p : parts)
    if (!same_group(p.group(), parts[0].group())) throw UsageError("direct sum of lattices over different groups");
  std::vector<IntMatrix> mats;
  for (std::size_t i = 0; i < parts[0].group().num_generators(); ++i) {
    std::vector<IntMatrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.generator_matrix(i));
    mats.push_back(block_diagonal(blocks));
  }
  std::string label;
  for (const auto& p : parts) label += (label.empty() ? "" : " + ") + p.label();
  std::size_t rank = 0;
  for (const auto& p : parts) rank += p.rank();
  return GLattice::derived(parts[0].group_ptr(), std::move(mats), std::move(label), rank);
}

GLattice direct_sum(const GLattice& a, const GLattice& b) { return direct_sum(std::vector<GLattice>{a, b}); }

GLattice restriction(const GLattice& m, const Subgroup& u) {
  GroupPtr h = subgroup_as_group(m.group(), u);
  std::vector<IntMatrix> mats;
  for (int e : u.generators()) mats.push_back(m.action(e));
  return GLattice::derived(std::move(h), std::move(mats), m.label() + "|" + u.describe(m.group()), m.rank());
}

GLattice twist(const GLattice& m, const std::vector<int>& phi) {
  const auto& g = m.group();
  std::vector<IntMatrix> mats;
  for (int s : g.generators()) mats.push_back(m.action(phi[static_cast<std::size_t>(s)]));
  return GLattice::derived(m.group_ptr(), std::move(mats), "twist(" + m.label() + ")", m.rank());
}

IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& u) {
  std::vector<IntMatrix> blocks;
  for (int e : u.generators()) blocks.push_back(m.action(e) - IntMatrix::identity(m.rank()));
  return kernel_of_stack(blocks, m.rank());
}

GLattice sublattice(const GLattice& m, const IntMatrix& k, std::string label) {
  if (k.rows() != m.rank()) throw InternalError("sublattice basis has the wrong number of rows");
  IntMatrix kp = left_inverse(k);
  std::vector<IntMatrix> mats;
  for (const auto& a : m.generator_matrices()) {
    IntMatrix ak = a * k;
    IntMatrix b = kp * ak;
    if (k * b != ak) throw InternalError("sublattice " + label + " is not G-stable");
    mats.push_back(std::move(b));
  }
  return GLattice::derived(m.group_ptr(), std::move(mats), std::move(label), k.cols());
}

LatticeMap coset_conjugation_map(GroupPtr g, const Subgroup& h, int c) {
  Subgroup hc = conjugate(*g, h, c);
  Cosets from = cosets(*g, h), to = cosets(*g, hc);
  IntMatrix p(to.size(), from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    p(static_cast<std::size_t>(to.coset_of[static_cast<std::size_t>(g->mul(from.reps[i], g->inv(c)))]), i) = 1;
  return LatticeMap::make(coset_lattice(g, h), coset_lattice(g, hc), std::move(p));
}

}  // namespace norm1lat

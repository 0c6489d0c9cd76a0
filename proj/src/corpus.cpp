#include "norm1lat/corpus.hpp"

#include <random>

#include "norm1lat/errors.hpp"
#include "norm1lat/resolution.hpp"

namespace norm1lat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

GLattice parse_term(const GroupPtr& g, std::string_view t) {
  if (t == "Z") return trivial_lattice(g, 1);
  if (t.substr(0, 2) == "Z^") {
    std::string digits(t.substr(2));
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(digits, &used);
      if (used != digits.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("bad trivial lattice rank in '" + std::string(t) + "'");
    }
    if (k == 0 || k > 4096) throw UsageError("trivial lattice rank out of range");
    return trivial_lattice(g, k);
  }
  auto colon = t.find(':');
  if (colon == std::string_view::npos) throw UsageError("lattice term needs a kind prefix: '" + std::string(t) + "'");
  std::string_view kind = trim(t.substr(0, colon));
  Subgroup h = parse_subgroup_spec(*g, trim(t.substr(colon + 1)));
  if (kind == "P") return coset_lattice(g, h);
  if (h.order() == g->order()) throw UsageError("I, J, F, Q need a proper subgroup");
  if (kind == "I") return augmentation_ideal(g, h);
  if (kind == "J") return chevalley_module(g, h);
  if (kind == "F") return flabby_resolution(chevalley_module(g, h)).right.relabeled("F_{G/" + h.describe(*g) + "}");
  if (kind == "Q") return coflabby_resolution(augmentation_ideal(g, h)).left.relabeled("Q_{G/" + h.describe(*g) + "}");
  throw UsageError("unknown lattice kind '" + std::string(kind) + "'");
}

}  // namespace

GLattice parse_lattice_spec(GroupPtr g, std::string_view spec) {
  std::vector<GLattice> parts;
  std::size_t pos = 0;
  std::string_view s = trim(spec);
  if (s.empty()) throw UsageError("empty lattice spec");
  while (true) {
    std::size_t plus = s.find('+', pos);
    std::string_view t = trim(s.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos));
    if (t.empty()) throw UsageError("empty summand in lattice spec '" + std::string(spec) + "'");
    parts.push_back(parse_term(g, t));
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  if (parts.size() == 1) return parts[0];
  return direct_sum(parts).relabeled(std::string(s));
}

const std::vector<std::string>& corpus_group_specs() {
  static const std::vector<std::string> specs = [] {
    std::vector<std::string> v;
    for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16}) v.push_back("cyclic:n=" + std::to_string(n));
    for (int n = 3; n <= 24; ++n) v.push_back("dihedral:n=" + std::to_string(n));
    for (int n : {3, 5, 7, 9}) v.push_back("dihedral-regular:n=" + std::to_string(n));
    v.push_back("perm:x=(1 2)(3 4);y=(1 3)(2 4)");                   // C2 x C2
    v.push_back("perm:x=(1 2 3 4);y=(5 6)");                         // C4 x C2
    v.push_back("perm:x=(1 2);y=(3 4);z=(5 6)");                     // C2^3
    v.push_back("perm:i=(1 2 3 4)(5 6 7 8);j=(1 5 3 7)(2 8 4 6)");   // Q8
    v.push_back("perm:x=(1 2 3);y=(2 3 4)");                         // A4
    v.push_back("perm:x=(1 2 3);y=(4 5 6);z=(4 5)");                 // C3 x S3
    v.push_back("perm:x=(1 2 3 4);y=(1 2)");                         // S4
    v.push_back("perm:x=(1 2 3);y=(2 3 4);z=(5 6)");                 // A4 x C2
    v.push_back("perm:x=(1 2 3 4 5);y=(2 5)(3 4);z=(6 7)");          // D5 x C2
    v.push_back("perm:x=(1 2 3 4);y=(1 2);z=(5 6)");                 // S4 x C2
    return v;
  }();
  return specs;
}

std::vector<CorpusLattice> corpus_lattices(std::size_t count, std::uint64_t seed, std::size_t max_order,
                                           std::size_t max_rank) {
  std::vector<GroupPtr> groups;
  std::vector<std::string> specs;
  for (const auto& s : corpus_group_specs()) {
    GroupPtr g = parse_group_spec(s);
    if (g->order() <= max_order && g->order() > 1) {
      groups.push_back(g);
      specs.push_back(s);
    }
  }
  if (groups.empty()) throw UsageError("no corpus group within the order bound");
  std::mt19937_64 rng(seed);
  std::vector<CorpusLattice> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw ResourceError("corpus sampling cannot meet the rank bound");
    std::size_t gi = std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng);
    const FiniteGroup& g = *groups[gi];
    const auto& classes = g.subgroup_classes();
    std::size_t summands = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::string spec;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < summands; ++k) {
      // Proper subgroups only, so every kind is defined.
      std::size_t ci = std::uniform_int_distribution<std::size_t>(0, classes.size() - 2)(rng);
      const Subgroup& u = classes[ci].rep;
      int kind = std::uniform_int_distribution<int>(0, 2)(rng);
      std::size_t idx = g.order() / u.order();
      rank += kind == 0 ? idx : idx - 1;
      spec += (spec.empty() ? "" : "+") + std::string(kind == 0 ? "P:" : kind == 1 ? "I:" : "J:") + u.describe(g);
    }
    if (rank == 0 || rank > max_rank) continue;
    out.push_back({specs[gi], spec});
  }
  return out;
}

}  // namespace norm1lat

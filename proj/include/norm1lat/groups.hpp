#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace norm1lat {

// Permutation of {0..N-1}; printed and parsed 1-based in cycle notation.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int degree);
  // Cycles use 1-based points.
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
  // "(1 2 3)(4 5)", "()" for the identity; degree 0 means "largest point".
  static Perm parse(std::string_view text, int degree = 0);

  int degree() const noexcept { return static_cast<int>(img_.size()); }
  int operator()(int p) const { return img_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& images() const noexcept { return img_; }

  // Function composition: (a * b)(p) = a(b(p)).
  friend Perm operator*(const Perm& a, const Perm& b);
  Perm inverse() const;
  bool is_identity() const;
  int order() const;
  Perm extended(int degree) const;
  std::string to_string() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> img_;
};

// Word in the generators: (generator index, exponent) letters, read left to
// right as a product.
using Word = std::vector<std::pair<int, int>>;

class Subgroup;
struct SubgroupClass;

class FiniteGroup {
 public:
  enum class Family { Generic, Cyclic, Dihedral, DihedralRegular };

  struct Options {
    std::vector<Word> relators;
    Family family = Family::Generic;
    int family_n = 0;
    std::string spec;
    std::size_t max_order = 400;
  };

  // Enumerates all elements. Throws ResourceError past options.max_order and
  // InternalError if a relator does not evaluate to the identity.
  FiniteGroup(std::vector<std::string> names, std::vector<Perm> gens, Options opts);

  std::size_t order() const noexcept { return elems_.size(); }
  int degree() const noexcept { return degree_; }
  // Elements are sorted by image list, so the identity is element 0.
  static constexpr int identity() noexcept { return 0; }

  std::size_t num_generators() const noexcept { return gens_.size(); }
  const std::string& generator_name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  int generator(std::size_t i) const { return gens_[i]; }
  const std::vector<int>& generators() const noexcept { return gens_; }

  const Perm& element(int e) const { return elems_[static_cast<std::size_t>(e)]; }
  std::optional<int> find(const Perm& p) const;
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * elems_.size() + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int conj(int c, int a) const { return mul(mul(c, a), inv(c)); }  // c a c^-1
  int power(int a, long long k) const;
  int element_order(int a) const { return orders_[static_cast<std::size_t>(a)]; }

  // Shortest word over the generators (shortlex, built by left multiplication).
  const std::vector<int>& word(int e) const { return words_[static_cast<std::size_t>(e)]; }
  // Left neighbour in the word tree: e = generator(word(e)[0]) * parent(e).
  int word_parent(int e) const { return parents_[static_cast<std::size_t>(e)]; }
  std::string element_name(int e) const;
  int evaluate(const Word& w) const;
  // Parses "x^2*y", "xy", "x^-1", "1". Throws UsageError.
  int parse_element(std::string_view text) const;

  const std::vector<Word>& relators() const noexcept { return opts_.relators; }
  Family family() const noexcept { return opts_.family; }
  int family_n() const noexcept { return opts_.family_n; }
  const std::string& spec() const noexcept { return opts_.spec; }
  std::size_t max_order() const noexcept { return opts_.max_order; }
  std::string describe() const;

  // Conjugacy classes of subgroups, computed once (see subgroup_classes()).
  const std::vector<SubgroupClass>& subgroup_classes() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> gens_;
  std::vector<Perm> elems_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> orders_;
  std::vector<std::vector<int>> words_;
  std::vector<int> parents_;
  int degree_ = 0;
  Options opts_;

  mutable std::once_flag classes_once_;
  mutable std::shared_ptr<const std::vector<SubgroupClass>> classes_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Subset of a group closed under products; stored as sorted element indices.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated_by(const FiniteGroup& g, std::vector<int> gens);
  static Subgroup trivial(const FiniteGroup& g) { return generated_by(g, {}); }
  static Subgroup whole(const FiniteGroup& g);

  std::size_t order() const noexcept { return members_.size(); }
  const std::vector<int>& members() const noexcept { return members_; }
  const std::vector<int>& generators() const noexcept { return gens_; }
  bool contains(int e) const { return mask_[static_cast<std::size_t>(e)] != 0; }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_subgroup_of(const Subgroup& o) const;
  // "<x^2, y>"; "1" for the trivial subgroup.
  std::string describe(const FiniteGroup& g) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  std::vector<int> members_;
  std::vector<int> gens_;
  std::vector<char> mask_;
};

struct SubgroupClass {
  Subgroup rep;
  std::size_t size = 0;  // number of conjugates
};

// The shape used to pick a presentation for cohomology.
struct SubgroupShape {
  enum class Kind { Trivial, Cyclic, Dihedral, Other };
  Kind kind = Kind::Other;
  int a = 0;  // cyclic generator / rotation generator of order k
  int b = 0;  // reflection with b a b = a^-1 (dihedral only)
  int k = 0;  // order of a
};

// Group constructors. Points are 1-based in the printed cycles.
GroupPtr dihedral_on_cosets(int n, std::size_t max_order = 400);
GroupPtr dihedral_regular(int n, std::size_t max_order = 400);
GroupPtr cyclic_group(int n, std::size_t max_order = 400);
GroupPtr group_from_permutations(std::vector<std::string> names, std::vector<Perm> gens,
                                 std::size_t max_order = 400);
// "dihedral:n=6", "dihedral-regular:n=3", "cyclic:n=5", "perm:x=(1 2 3);y=(1 2)".
GroupPtr parse_group_spec(std::string_view spec, std::size_t max_order = 400);
// "<x*y>", "<x^2,y>", "<>" or "1" for the trivial subgroup.
Subgroup parse_subgroup_spec(const FiniteGroup& g, std::string_view spec);
// The subgroup U as a group in its own right, generated by U.generators()
// with names taken from their words in G.
GroupPtr subgroup_as_group(const FiniteGroup& g, const Subgroup& u);

// One representative per conjugacy class, sorted by (order, member list); each
// representative is the conjugate with the lexicographically least member list.
// Throws ResourceError if |G| exceeds the bound.
std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g, std::size_t bound = 400);
std::vector<Subgroup> all_subgroups_brute_force(const FiniteGroup& g);

Subgroup conjugate(const FiniteGroup& g, const Subgroup& u, int c);  // c U c^-1
// Least c with c A c^-1 = B.
std::optional<int> is_conjugate(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& u);
Subgroup center(const FiniteGroup& g);
Subgroup core(const FiniteGroup& g, const Subgroup& h);
bool core_is_trivial(const FiniteGroup& g, const Subgroup& h);
Subgroup intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
bool is_normal(const FiniteGroup& g, const Subgroup& u);

// Left cosets gH ordered by least representative.
struct Cosets {
  std::vector<std::vector<int>> members;
  std::vector<int> reps;      // least element of each coset
  std::vector<int> coset_of;  // element -> coset index
  std::size_t size() const { return reps.size(); }
  // Index of g * (coset i).
  int act(const FiniteGroup& g, int elem, int i) const { return coset_of[static_cast<std::size_t>(g.mul(elem, reps[static_cast<std::size_t>(i)]))]; }
};
Cosets cosets(const FiniteGroup& g, const Subgroup& h);

std::vector<int> prime_factors(long long n);
Subgroup sylow_subgroup(const FiniteGroup& g, int p);
bool is_cyclic(const FiniteGroup& g, const Subgroup& u);

struct SylowReport {
  struct Entry {
    int p = 0;
    Subgroup sylow;
    bool cyclic = false;
    std::optional<int> generator;  // element of order |sylow| when cyclic
  };
  std::vector<Entry> entries;
  bool all_cyclic() const;
};
SylowReport sylow_all_cyclic(const FiniteGroup& g, const Subgroup& u);
SylowReport sylow_all_cyclic(const FiniteGroup& g);

SubgroupShape subgroup_shape(const FiniteGroup& g, const Subgroup& u);

// Transitivity of U on the permutation points of G.
bool is_transitive(const FiniteGroup& g, const Subgroup& u);

// Dihedral automorphism x -> x, y -> xy as a map on element indices.
// Requires a group with generators named x, y satisfying the dihedral relations.
std::vector<int> dihedral_automorphism(const FiniteGroup& g);
Subgroup apply_automorphism(const FiniteGroup& g, const std::vector<int>& phi, const Subgroup& u);

}  // namespace norm1lat

#include "norm1lat/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "norm1lat/errors.hpp"

namespace norm1lat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, const char* what) {
  s = trim(s);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError(std::string("expected an integer for ") + what + ", got '" + std::string(s) + "'");
  return v;
}

bool is_prime_power(std::size_t n, int p) {
  if (n == 0) return false;
  while (n % static_cast<std::size_t>(p) == 0) n /= static_cast<std::size_t>(p);
  return n == 1;
}

// Greedy generating set for a known member list.
std::vector<int> greedy_generators(const FiniteGroup& g, const std::vector<int>& members) {
  std::vector<int> gens;
  Subgroup cur = Subgroup::trivial(g);
  for (int e : members) {
    if (cur.order() == members.size()) break;
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = Subgroup::generated_by(g, gens);
  }
  return gens;
}

std::vector<int> conjugate_members(const FiniteGroup& g, const std::vector<int>& members, int c) {
  std::vector<int> out;
  out.reserve(members.size());
  for (int m : members) out.push_back(g.conj(c, m));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> hit(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || static_cast<std::size_t>(v) >= img_.size() || hit[static_cast<std::size_t>(v)])
      throw UsageError("permutation images are not a bijection");
    hit[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      int p = cyc[k];
      if (p < 1 || p > degree) throw UsageError("cycle point " + std::to_string(p) + " out of range");
      if (used[static_cast<std::size_t>(p - 1)]) throw UsageError("point " + std::to_string(p) + " repeated in cycles");
      used[static_cast<std::size_t>(p - 1)] = 1;
      img[static_cast<std::size_t>(p - 1)] = cyc[(k + 1) % cyc.size()] - 1;
    }
  }
  return Perm(std::move(img));
}

Perm Perm::parse(std::string_view text, int degree) {
  std::vector<std::vector<int>> cycles;
  std::string_view s = trim(text);
  int max_point = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') throw UsageError("bad cycle notation: '" + std::string(text) + "'");
    std::size_t close = s.find(')', i);
    if (close == std::string_view::npos) throw UsageError("unbalanced parenthesis in '" + std::string(text) + "'");
    std::string_view body = s.substr(i + 1, close - i - 1);
    std::vector<int> cyc;
    std::size_t j = 0;
    while (j < body.size()) {
      while (j < body.size() && (std::isspace(static_cast<unsigned char>(body[j])) || body[j] == ',')) ++j;
      std::size_t k = j;
      while (k < body.size() && !std::isspace(static_cast<unsigned char>(body[k])) && body[k] != ',') ++k;
      if (k > j) {
        int p = static_cast<int>(parse_int(body.substr(j, k - j), "a cycle point"));
        cyc.push_back(p);
        max_point = std::max(max_point, p);
      }
      j = k;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  if (degree == 0) degree = max_point;
  if (max_point > degree) throw UsageError("cycle point exceeds the degree");
  return from_cycles(degree, cycles);
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw UsageError("composing permutations of different degree");
  std::vector<int> img(b.img_.size());
  for (std::size_t p = 0; p < img.size(); ++p) img[p] = a.img_[static_cast<std::size_t>(b.img_[p])];
  Perm r;
  r.img_ = std::move(img);
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (std::size_t p = 0; p < img_.size(); ++p) r.img_[static_cast<std::size_t>(img_[p])] = static_cast<int>(p);
  return r;
}

bool Perm::is_identity() const {
  for (std::size_t p = 0; p < img_.size(); ++p)
    if (img_[p] != static_cast<int>(p)) return false;
  return true;
}

int Perm::order() const {
  long long ord = 1;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    long long len = 0;
    for (std::size_t q = p; !seen[q]; q = static_cast<std::size_t>(img_[q])) {
      seen[q] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<int>(ord);
}

Perm Perm::extended(int degree) const {
  if (degree < this->degree()) throw UsageError("cannot shrink a permutation");
  Perm r = identity(degree);
  std::copy(img_.begin(), img_.end(), r.img_.begin());
  return r;
}

std::string Perm::to_string() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == static_cast<int>(p)) continue;
    os << '(';
    bool first = true;
    for (std::size_t q = p; !seen[q]; q = static_cast<std::size_t>(img_[q])) {
      seen[q] = 1;
      os << (first ? "" : " ") << q + 1;
      first = false;
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : "()";
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<Perm> gens, Options opts)
    : names_(std::move(names)), opts_(std::move(opts)) {
  if (names_.size() != gens.size()) throw UsageError("generator names and permutations differ in number");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& nm = names_[i];
    if (nm.empty() || !std::all_of(nm.begin(), nm.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) ||
        std::isdigit(static_cast<unsigned char>(nm[0])))
      throw UsageError("bad generator name '" + nm + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == nm) throw UsageError("duplicate generator name '" + nm + "'");
  }
  degree_ = 1;
  for (const auto& p : gens) degree_ = std::max(degree_, p.degree());
  for (auto& p : gens) p = p.extended(degree_);

  std::set<Perm> found{Perm::identity(degree_)};
  std::deque<Perm> queue{Perm::identity(degree_)};
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      Perm nxt = s * cur;
      if (found.insert(nxt).second) {
        if (found.size() > opts_.max_order)
          throw ResourceError("group order exceeds the bound " + std::to_string(opts_.max_order) +
                              " (raise --max-group-order)");
        queue.push_back(std::move(nxt));
      }
    }
  }
  elems_.assign(found.begin(), found.end());
  const std::size_t n = elems_.size();
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elems_[i], static_cast<int>(i));
  for (const auto& s : gens) gens_.push_back(index.at(s));

  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = index.at(elems_[a] * elems_[b]);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a * n + b] == 0) {
        inverse_[a] = static_cast<int>(b);
        break;
      }
  orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    int k = 1;
    for (int cur = static_cast<int>(a); cur != 0; cur = mul(cur, static_cast<int>(a))) ++k;
    orders_[a] = k;
  }

  words_.assign(n, {});
  parents_.assign(n, -1);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::deque<int> bfs{0};
  while (!bfs.empty()) {
    int e = bfs.front();
    bfs.pop_front();
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      int f = mul(gens_[s], e);
      if (seen[static_cast<std::size_t>(f)]) continue;
      seen[static_cast<std::size_t>(f)] = 1;
      auto& w = words_[static_cast<std::size_t>(f)];
      w.push_back(static_cast<int>(s));
      w.insert(w.end(), words_[static_cast<std::size_t>(e)].begin(), words_[static_cast<std::size_t>(e)].end());
      parents_[static_cast<std::size_t>(f)] = e;
      bfs.push_back(f);
    }
  }

  for (const auto& r : opts_.relators)
    if (evaluate(r) != identity()) throw InternalError("relator does not hold in " + describe());
}

std::optional<int> FiniteGroup::find(const Perm& p) const {
  Perm q = p.degree() < degree_ ? p.extended(degree_) : p;
  auto it = std::lower_bound(elems_.begin(), elems_.end(), q);
  if (it == elems_.end() || *it != q) return std::nullopt;
  return static_cast<int>(it - elems_.begin());
}

int FiniteGroup::power(int a, long long k) const {
  int ord = element_order(a);
  long long r = ((k % ord) + ord) % ord;
  int out = identity();
  for (long long i = 0; i < r; ++i) out = mul(out, a);
  return out;
}

std::string FiniteGroup::element_name(int e) const {
  const auto& w = word(e);
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += names_[static_cast<std::size_t>(w[i])];
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

int FiniteGroup::evaluate(const Word& w) const {
  int out = identity();
  for (auto [gen, exp] : w) out = mul(out, power(gens_.at(static_cast<std::size_t>(gen)), exp));
  return out;
}

int FiniteGroup::parse_element(std::string_view text) const {
  std::string_view s = trim(text);
  if (s.empty()) throw UsageError("empty group element");
  if (s == "1" || s == "e" || s == "id") return identity();
  int out = identity();
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '*' || std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t best = names_.size(), best_len = 0;
    for (std::size_t g = 0; g < names_.size(); ++g)
      if (s.substr(i, names_[g].size()) == names_[g] && names_[g].size() > best_len) {
        best = g;
        best_len = names_[g].size();
      }
    if (best == names_.size())
      throw UsageError("unknown generator at '" + std::string(s.substr(i)) + "' in '" + std::string(text) + "'");
    i += best_len;
    long long exp = 1;
    if (i < s.size() && s[i] == '^') {
      std::size_t j = ++i;
      if (j < s.size() && s[j] == '-') ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      exp = parse_int(s.substr(i, j - i), "an exponent");
      i = j;
    }
    out = mul(out, power(gens_[best], exp));
  }
  return out;
}

std::string FiniteGroup::describe() const {
  if (!opts_.spec.empty()) return opts_.spec;
  std::ostringstream os;
  os << "perm:";
  for (std::size_t i = 0; i < names_.size(); ++i)
    os << (i ? ";" : "") << names_[i] << '=' << elems_[static_cast<std::size_t>(gens_[i])].to_string();
  return os.str();
}

const std::vector<SubgroupClass>& FiniteGroup::subgroup_classes() const {
  std::call_once(classes_once_, [this] {
    classes_ = std::make_shared<const std::vector<SubgroupClass>>(norm1lat::subgroup_classes(*this, opts_.max_order));
  });
  return *classes_;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::generated_by(const FiniteGroup& g, std::vector<int> gens) {
  Subgroup s;
  s.mask_.assign(g.order(), 0);
  s.mask_[0] = 1;
  std::vector<int> members{0};
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int gen : gens) {
      int f = g.mul(members[i], gen);
      if (!s.mask_[static_cast<std::size_t>(f)]) {
        s.mask_[static_cast<std::size_t>(f)] = 1;
        members.push_back(f);
      }
    }
  }
  std::sort(members.begin(), members.end());
  gens.erase(std::remove(gens.begin(), gens.end(), FiniteGroup::identity()), gens.end());
  s.members_ = std::move(members);
  s.gens_ = std::move(gens);
  return s;
}

Subgroup Subgroup::whole(const FiniteGroup& g) { return generated_by(g, g.generators()); }

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
  return std::all_of(members_.begin(), members_.end(), [&](int e) { return o.contains(e); });
}

std::string Subgroup::describe(const FiniteGroup& g) const {
  if (is_trivial()) return "1";
  std::string out = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? ", " : "") + g.element_name(gens_[i]);
  return out + ">";
}

// ---------------------------------------------------------------------------
// Constructors and parsing

GroupPtr dihedral_on_cosets(int n, std::size_t max_order) {
  if (n < 3) throw UsageError("dihedral group needs n >= 3, got " + std::to_string(n));
  std::vector<int> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = (i + 1) % n;
    y[static_cast<std::size_t>(i)] = n - 1 - i;
  }
  FiniteGroup::Options o;
  o.relators = {{{0, n}}, {{1, 2}}, {{1, -1}, {0, 1}, {1, 1}, {0, 1}}};
  o.family = FiniteGroup::Family::Dihedral;
  o.family_n = n;
  o.spec = "dihedral:n=" + std::to_string(n);
  o.max_order = max_order;
  return std::make_shared<const FiniteGroup>(std::vector<std::string>{"x", "y"},
                                             std::vector<Perm>{Perm(x), Perm(y)}, std::move(o));
}

GroupPtr dihedral_regular(int n, std::size_t max_order) {
  if (n < 3 || n % 2 == 0) throw UsageError("regular dihedral action needs odd n >= 3, got " + std::to_string(n));
  const int d = 2 * n;
  std::vector<int> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    x[static_cast<std::size_t>(i)] = (i + 2) % d;
    y[static_cast<std::size_t>(i)] = d - 1 - i;
  }
  FiniteGroup::Options o;
  o.relators = {{{0, n}}, {{1, 2}}, {{1, -1}, {0, 1}, {1, 1}, {0, 1}}};
  o.family = FiniteGroup::Family::DihedralRegular;
  o.family_n = n;
  o.spec = "dihedral-regular:n=" + std::to_string(n);
  o.max_order = max_order;
  return std::make_shared<const FiniteGroup>(std::vector<std::string>{"x", "y"},
                                             std::vector<Perm>{Perm(x), Perm(y)}, std::move(o));
}

GroupPtr cyclic_group(int n, std::size_t max_order) {
  if (n < 1) throw UsageError("cyclic group needs n >= 1");
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (i + 1) % n;
  FiniteGroup::Options o;
  o.relators = {{{0, n}}};
  o.family = FiniteGroup::Family::Cyclic;
  o.family_n = n;
  o.spec = "cyclic:n=" + std::to_string(n);
  o.max_order = max_order;
  return std::make_shared<const FiniteGroup>(std::vector<std::string>{"x"}, std::vector<Perm>{Perm(x)},
                                             std::move(o));
}

GroupPtr group_from_permutations(std::vector<std::string> names, std::vector<Perm> gens, std::size_t max_order) {
  FiniteGroup::Options o;
  o.max_order = max_order;
  return std::make_shared<const FiniteGroup>(std::move(names), std::move(gens), std::move(o));
}

GroupPtr parse_group_spec(std::string_view spec, std::size_t max_order) {
  std::string_view s = trim(spec);
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw UsageError("group spec needs a family prefix: '" + std::string(spec) + "'");
  std::string_view family = s.substr(0, colon);
  std::string_view rest = trim(s.substr(colon + 1));
  auto param_n = [&]() -> int {
    if (rest.substr(0, 2) != "n=") throw UsageError("expected n=<int> in group spec '" + std::string(spec) + "'");
    long long n = parse_int(rest.substr(2), "n");
    if (n < 1 || n > 100000) throw UsageError("group parameter n out of range");
    return static_cast<int>(n);
  };
  if (family == "dihedral") return dihedral_on_cosets(param_n(), max_order);
  if (family == "dihedral-regular") return dihedral_regular(param_n(), max_order);
  if (family == "cyclic") return cyclic_group(param_n(), max_order);
  if (family == "perm") {
    std::vector<std::string> names;
    std::vector<Perm> perms;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t semi = rest.find(';', pos);
      std::string_view item = trim(rest.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
      if (!item.empty()) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw UsageError("expected name=(cycles) in '" + std::string(item) + "'");
        names.emplace_back(trim(item.substr(0, eq)));
        perms.push_back(Perm::parse(item.substr(eq + 1)));
      }
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }
    if (names.empty()) throw UsageError("perm group spec has no generators");
    int deg = 1;
    for (const auto& p : perms) deg = std::max(deg, p.degree());
    for (auto& p : perms) p = p.extended(deg);
    FiniteGroup::Options o;
    o.max_order = max_order;
    o.spec = "perm:" + std::string(rest);
    return std::make_shared<const FiniteGroup>(std::move(names), std::move(perms), std::move(o));
  }
  throw UsageError("unknown group family '" + std::string(family) + "'");
}

Subgroup parse_subgroup_spec(const FiniteGroup& g, std::string_view spec) {
  std::string_view s = trim(spec);
  if (s == "1" || s == "<>" || s == "<1>") return Subgroup::trivial(g);
  if (s == "G") return Subgroup::whole(g);
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw UsageError("subgroup spec must look like <x*y> or <x^2,y>: '" + std::string(spec) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<int> gens;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    std::string_view item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    gens.push_back(g.parse_element(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Subgroup::generated_by(g, gens);
}

GroupPtr subgroup_as_group(const FiniteGroup& g, const Subgroup& u) {
  std::vector<std::string> names;
  std::vector<Perm> perms;
  for (int e : u.generators()) {
    std::string nm;
    for (char c : g.element_name(e))
      if (c != '*' && c != '^') nm += c;
    if (std::find(names.begin(), names.end(), nm) != names.end()) nm = "u" + std::to_string(names.size() + 1);
    names.push_back(nm);
    perms.push_back(g.element(e));
  }
  FiniteGroup::Options o;
  o.max_order = g.max_order();
  o.spec = g.describe() + " | " + u.describe(g);
  const auto& gens = u.generators();
  if (gens.size() == 1) {
    o.relators = {{{0, g.element_order(gens[0])}}};
  } else if (gens.size() == 2 && u.order() >= 4) {
    const int a = gens[0], b = gens[1];
    const int k = static_cast<int>(u.order() / 2);
    if (g.element_order(a) == k && g.element_order(b) == 2 && g.conj(b, a) == g.inv(a))
      o.relators = {{{0, k}}, {{1, 2}}, {{0, 1}, {1, 1}, {0, 1}, {1, 1}}};
  }
  return std::make_shared<const FiniteGroup>(std::move(names), std::move(perms), std::move(o));
}

// ---------------------------------------------------------------------------
// Subgroup lattice

std::vector<SubgroupClass> subgroup_classes(const FiniteGroup& g, std::size_t bound) {
  if (g.order() > bound)
    throw ResourceError("subgroup enumeration bound exceeded: |G| = " + std::to_string(g.order()) + " > " +
                        std::to_string(bound));
  constexpr std::size_t kMaxSubgroups = 200000;
  std::map<std::vector<int>, std::size_t> seen;
  std::vector<SubgroupClass> classes;
  const int n = static_cast<int>(g.order());

  auto add = [&](const Subgroup& k) {
    if (seen.count(k.members())) return;
    std::vector<int> best = k.members();
    int best_c = 0;
    std::set<std::vector<int>> conjugates;
    for (int c = 0; c < n; ++c) {
      auto m = conjugate_members(g, k.members(), c);
      if (m < best) {
        best = m;
        best_c = c;
      }
      conjugates.insert(std::move(m));
    }
    for (const auto& m : conjugates) seen.emplace(m, classes.size());
    if (seen.size() > kMaxSubgroups) throw ResourceError("subgroup enumeration exceeded " + std::to_string(kMaxSubgroups) + " subgroups");
    Subgroup rep = conjugate(g, k, best_c);
    SubgroupShape sh = subgroup_shape(g, rep);
    std::vector<int> gens;
    switch (sh.kind) {
      case SubgroupShape::Kind::Trivial: break;
      case SubgroupShape::Kind::Cyclic: gens = {sh.a}; break;
      case SubgroupShape::Kind::Dihedral: gens = {sh.a, sh.b}; break;
      case SubgroupShape::Kind::Other: gens = greedy_generators(g, rep.members()); break;
    }
    classes.push_back({Subgroup::generated_by(g, gens), conjugates.size()});
  };

  add(Subgroup::trivial(g));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::vector<int> base = classes[i].rep.generators();
    Subgroup rep = classes[i].rep;
    for (int e = 0; e < n; ++e) {
      if (rep.contains(e)) continue;
      auto gens = base;
      gens.push_back(e);
      add(Subgroup::generated_by(g, gens));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.rep.order() != b.rep.order()) return a.rep.order() < b.rep.order();
    return a.rep.members() < b.rep.members();
  });
  return classes;
}

std::vector<Subgroup> all_subgroups_brute_force(const FiniteGroup& g) {
  std::map<std::vector<int>, Subgroup> found;
  Subgroup t = Subgroup::trivial(g);
  found.emplace(t.members(), t);
  std::vector<Subgroup> frontier{t};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& s : frontier)
      for (int e = 0; e < static_cast<int>(g.order()); ++e) {
        if (s.contains(e)) continue;
        auto gens = s.generators();
        gens.push_back(e);
        Subgroup k = Subgroup::generated_by(g, gens);
        if (found.emplace(k.members(), k).second) next.push_back(k);
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [m, s] : found) out.push_back(s);
  return out;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& u, int c) {
  std::vector<int> gens;
  for (int e : u.generators()) gens.push_back(g.conj(c, e));
  return Subgroup::generated_by(g, gens);
}

std::optional<int> is_conjugate(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  for (int c = 0; c < static_cast<int>(g.order()); ++c)
    if (conjugate_members(g, a.members(), c) == b.members()) return c;
  return std::nullopt;
}

namespace {
Subgroup from_members(const FiniteGroup& g, const std::vector<int>& members) {
  return Subgroup::generated_by(g, greedy_generators(g, members));
}
}  // namespace

Subgroup normalizer(const FiniteGroup& g, const Subgroup& u) {
  std::vector<int> mem;
  for (int c = 0; c < static_cast<int>(g.order()); ++c) {
    bool ok = std::all_of(u.generators().begin(), u.generators().end(), [&](int e) { return u.contains(g.conj(c, e)); });
    if (ok) mem.push_back(c);
  }
  return from_members(g, mem);
}

Subgroup center(const FiniteGroup& g) {
  std::vector<int> mem;
  for (int c = 0; c < static_cast<int>(g.order()); ++c) {
    bool ok = std::all_of(g.generators().begin(), g.generators().end(), [&](int s) { return g.mul(c, s) == g.mul(s, c); });
    if (ok) mem.push_back(c);
  }
  return from_members(g, mem);
}

Subgroup core(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> mem;
  for (int e : h.members()) {
    bool ok = true;
    for (int c = 0; c < static_cast<int>(g.order()) && ok; ++c) ok = h.contains(g.conj(c, e));
    if (ok) mem.push_back(e);
  }
  return from_members(g, mem);
}

bool core_is_trivial(const FiniteGroup& g, const Subgroup& h) { return core(g, h).is_trivial(); }

Subgroup intersection(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> mem;
  for (int e : a.members())
    if (b.contains(e)) mem.push_back(e);
  return from_members(g, mem);
}

bool is_normal(const FiniteGroup& g, const Subgroup& u) {
  for (int s : g.generators())
    for (int e : u.generators())
      if (!u.contains(g.conj(s, e))) return false;
  return true;
}

Cosets cosets(const FiniteGroup& g, const Subgroup& h) {
  Cosets c;
  c.coset_of.assign(g.order(), -1);
  for (int e = 0; e < static_cast<int>(g.order()); ++e) {
    if (c.coset_of[static_cast<std::size_t>(e)] >= 0) continue;
    int idx = static_cast<int>(c.reps.size());
    std::vector<int> mem;
    for (int m : h.members()) {
      int f = g.mul(e, m);
      c.coset_of[static_cast<std::size_t>(f)] = idx;
      mem.push_back(f);
    }
    std::sort(mem.begin(), mem.end());
    c.reps.push_back(e);
    c.members.push_back(std::move(mem));
  }
  return c;
}

std::vector<int> prime_factors(long long n) {
  std::vector<int> ps;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(static_cast<int>(p));
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

namespace {
Subgroup sylow_in(const FiniteGroup& g, const Subgroup& u, int p) {
  std::size_t target = 1;
  for (std::size_t m = u.order(); m % static_cast<std::size_t>(p) == 0; m /= static_cast<std::size_t>(p))
    target *= static_cast<std::size_t>(p);
  Subgroup cur = Subgroup::trivial(g);
  while (cur.order() < target) {
    bool grown = false;
    for (int e : u.members()) {
      if (cur.contains(e) || !is_prime_power(static_cast<std::size_t>(g.element_order(e)), p)) continue;
      bool normalizes = std::all_of(cur.generators().begin(), cur.generators().end(),
                                    [&](int c) { return cur.contains(g.conj(e, c)); });
      if (!normalizes) continue;
      auto gens = cur.generators();
      gens.push_back(e);
      cur = Subgroup::generated_by(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw InternalError("Sylow subgroup construction stalled");
  }
  if (!is_prime_power(cur.order(), p) && cur.order() != 1) throw InternalError("Sylow subgroup is not a p-group");
  return cur;
}
}  // namespace

Subgroup sylow_subgroup(const FiniteGroup& g, int p) { return sylow_in(g, Subgroup::whole(g), p); }

bool is_cyclic(const FiniteGroup& g, const Subgroup& u) {
  return std::any_of(u.members().begin(), u.members().end(),
                     [&](int e) { return static_cast<std::size_t>(g.element_order(e)) == u.order(); });
}

bool SylowReport::all_cyclic() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.cyclic; });
}

SylowReport sylow_all_cyclic(const FiniteGroup& g, const Subgroup& u) {
  SylowReport r;
  for (int p : prime_factors(static_cast<long long>(u.order()))) {
    SylowReport::Entry e;
    e.p = p;
    e.sylow = sylow_in(g, u, p);
    for (int m : e.sylow.members())
      if (static_cast<std::size_t>(g.element_order(m)) == e.sylow.order()) {
        e.generator = m;
        break;
      }
    e.cyclic = e.generator.has_value();
    r.entries.push_back(std::move(e));
  }
  return r;
}

SylowReport sylow_all_cyclic(const FiniteGroup& g) { return sylow_all_cyclic(g, Subgroup::whole(g)); }

SubgroupShape subgroup_shape(const FiniteGroup& g, const Subgroup& u) {
  SubgroupShape sh;
  const std::size_t n = u.order();
  if (n == 1) {
    sh.kind = SubgroupShape::Kind::Trivial;
    return sh;
  }
  for (int e : u.members())
    if (static_cast<std::size_t>(g.element_order(e)) == n) {
      sh.kind = SubgroupShape::Kind::Cyclic;
      sh.a = e;
      sh.k = static_cast<int>(n);
      return sh;
    }
  if (n % 2 == 0 && n >= 4) {
    const int k = static_cast<int>(n / 2);
    for (int a : u.members()) {
      if (g.element_order(a) != k) continue;
      Subgroup rot = Subgroup::generated_by(g, {a});
      bool ok = true;
      int b = -1;
      for (int e : u.members()) {
        if (rot.contains(e)) continue;
        if (g.element_order(e) != 2) {
          ok = false;
          break;
        }
        if (b < 0) b = e;
      }
      if (!ok) continue;
      sh.kind = SubgroupShape::Kind::Dihedral;
      sh.a = a;
      sh.b = b;
      sh.k = k;
      return sh;
    }
  }
  sh.kind = SubgroupShape::Kind::Other;
  return sh;
}

bool is_transitive(const FiniteGroup& g, const Subgroup& u) {
  std::vector<char> seen(static_cast<std::size_t>(g.degree()), 0);
  std::vector<int> orbit{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (int e : u.generators()) {
      int q = g.element(e)(orbit[i]);
      if (!seen[static_cast<std::size_t>(q)]) {
        seen[static_cast<std::size_t>(q)] = 1;
        orbit.push_back(q);
      }
    }
  return orbit.size() == static_cast<std::size_t>(g.degree());
}

std::vector<int> dihedral_automorphism(const FiniteGroup& g) {
  if (g.num_generators() != 2 || g.generator_name(0) != "x" || g.generator_name(1) != "y")
    throw UsageError("dihedral automorphism needs generators named x, y");
  const int x = g.generator(0), y = g.generator(1);
  const int img[2] = {x, g.mul(x, y)};
  std::vector<int> phi(g.order());
  for (int e = 0; e < static_cast<int>(g.order()); ++e) {
    int out = FiniteGroup::identity();
    for (int letter : g.word(e)) out = g.mul(out, img[letter]);
    phi[static_cast<std::size_t>(e)] = out;
  }
  std::vector<char> hit(g.order(), 0);
  for (int e = 0; e < static_cast<int>(g.order()); ++e) {
    if (hit[static_cast<std::size_t>(phi[static_cast<std::size_t>(e)])]++) throw UsageError("x -> x, y -> xy is not bijective here");
    for (int s = 0; s < 2; ++s)
      if (phi[static_cast<std::size_t>(g.mul(e, g.generator(static_cast<std::size_t>(s))))] != g.mul(phi[static_cast<std::size_t>(e)], img[s]))
        throw UsageError("x -> x, y -> xy is not a homomorphism here");
  }
  return phi;
}

Subgroup apply_automorphism(const FiniteGroup& g, const std::vector<int>& phi, const Subgroup& u) {
  std::vector<int> gens;
  for (int e : u.generators()) gens.push_back(phi[static_cast<std::size_t>(e)]);
  return Subgroup::generated_by(g, gens);
}

}  // namespace norm1lat

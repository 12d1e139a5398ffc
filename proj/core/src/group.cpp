#include "cubaut/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cubaut {

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::parse(const std::string& cycles, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[i]))) ++i;
  };
  auto fail = [&] { throw std::invalid_argument("bad cycle notation: " + cycles); };
  skip();
  while (i < cycles.size()) {
    if (cycles[i] != '(') fail();
    ++i;
    std::vector<int> cyc;
    skip();
    while (i < cycles.size() && cycles[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(cycles[i]))) fail();
      int v = 0;
      while (i < cycles.size() && std::isdigit(static_cast<unsigned char>(cycles[i]))) v = v * 10 + (cycles[i++] - '0');
      if (v < 1 || v > degree) fail();
      cyc.push_back(v - 1);
      skip();
      if (i < cycles.size() && cycles[i] == ',') {
        ++i;
        skip();
      }
    }
    if (i >= cycles.size()) fail();
    ++i;
    skip();
    // right-to-left composition of cycles
    std::vector<int> c(static_cast<std::size_t>(degree));
    std::iota(c.begin(), c.end(), 0);
    std::vector<int> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail();
    for (std::size_t k = 0; k < cyc.size(); ++k) c[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    std::vector<int> next(static_cast<std::size_t>(degree));
    for (int p = 0; p < degree; ++p) next[static_cast<std::size_t>(p)] = img[static_cast<std::size_t>(c[static_cast<std::size_t>(p)])];
    img = std::move(next);
  }
  return Perm(std::move(img));
}

Perm Perm::operator*(const Perm& b) const {
  if (degree() != b.degree()) throw std::invalid_argument("permutation degree mismatch");
  std::vector<int> img(img_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = img_[static_cast<std::size_t>(b.img_[i])];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  return Perm(std::move(img));
}

int Perm::order() const {
  int ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img_[j])) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

bool Perm::is_even() const {
  int transpositions = 0;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img_[j])) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::size_t Perm::hash() const {
  std::size_t h = img_.size();
  for (int v : img_) h = h * 1000003u ^ static_cast<std::size_t>(v);
  return h;
}

std::string Perm::to_string() const {
  std::string s;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == static_cast<int>(i)) continue;
    s += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img_[j])) {
      seen[j] = true;
      if (!first) s += ',';
      s += std::to_string(j + 1);
      first = false;
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

// ---------------------------------------------------------------------------
// GroupHandle

namespace {

constexpr std::size_t kTableLimit = 1500;

Matrix perm_matrix(const Perm& p) {
  Matrix m(p.degree(), p.degree());
  for (int i = 0; i < p.degree(); ++i) m(p(i), i) = 1;
  return m;
}

Matrix matrix_power(const Matrix& m, long e) {
  Matrix r = Matrix::identity(m.rows());
  for (long i = 0; i < e; ++i) r = r * m;
  return r;
}

}  // namespace

template <class E, class H, class Mul>
void GroupHandle::build(const std::vector<E>& gens, std::vector<E>& store, H hasher, Mul mul, std::size_t bound) {
  lookup_.clear();
  lookup_[hasher(store[0])].push_back(0);
  parent_ = {-1};
  parent_gen_ = {-1};
  right_.clear();
  auto find = [&](const E& e) -> int {
    auto it = lookup_.find(hasher(e));
    if (it == lookup_.end()) return -1;
    for (int idx : it->second)
      if (store[static_cast<std::size_t>(idx)] == e) return idx;
    return -1;
  };
  for (std::size_t a = 0; a < store.size(); ++a) {
    right_.emplace_back(gens.size(), 0);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      E p = mul(store[a], gens[k]);
      int idx = find(p);
      if (idx < 0) {
        if (store.size() >= bound) throw OrderBoundExceeded(bound);
        idx = static_cast<int>(store.size());
        lookup_[hasher(p)].push_back(idx);
        store.push_back(std::move(p));
        parent_.push_back(static_cast<int>(a));
        parent_gen_.push_back(static_cast<int>(k));
      }
      right_[a][k] = idx;
    }
  }
  size_ = store.size();
  gens_.clear();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    int idx = right_[0][k];
    if (idx != 0 && std::find(gens_.begin(), gens_.end(), idx) == gens_.end()) gens_.push_back(idx);
  }
  finish_tables();
}

void GroupHandle::finish_tables() {
  table_.clear();
  inv_.assign(size_, 0);
  if (size_ <= kTableLimit) {
    table_.assign(size_, std::vector<int>(size_, 0));
    for (std::size_t a = 0; a < size_; ++a) {
      table_[a][0] = static_cast<int>(a);
      for (std::size_t b = 1; b < size_; ++b)
        table_[a][b] = right_[static_cast<std::size_t>(table_[a][static_cast<std::size_t>(parent_[b])])]
                             [static_cast<std::size_t>(parent_gen_[b])];
    }
    for (std::size_t a = 0; a < size_; ++a)
      for (std::size_t b = 0; b < size_; ++b)
        if (table_[a][b] == 0) {
          inv_[a] = static_cast<int>(b);
          break;
        }
  } else {
    for (std::size_t a = 0; a < size_; ++a) {
      int ord = element_order(static_cast<int>(a));
      int x = 0;
      for (int k = 0; k < ord - 1; ++k) x = mul(x, static_cast<int>(a));
      inv_[a] = x;
    }
  }
}

GroupHandle GroupHandle::from_perms(const std::vector<Perm>& gens, std::size_t bound) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  GroupHandle g;
  g.kind_ = Kind::Permutation;
  g.degree_ = gens[0].degree();
  g.perms_ = {Perm::identity(g.degree_)};
  g.build(gens, g.perms_, [](const Perm& p) { return p.hash(); },
          [](const Perm& a, const Perm& b) { return a * b; }, bound);
  return g;
}

GroupHandle GroupHandle::from_transforms(const std::vector<ProjTransform>& gens, std::size_t bound) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  GroupHandle g;
  g.kind_ = Kind::Projective;
  g.degree_ = gens[0].size();
  std::vector<Matrix> mats;
  for (const auto& t : gens) mats.push_back(t.matrix());
  g.mats_ = {Matrix::identity(g.degree_)};
  g.build(mats, g.mats_, [](const Matrix& m) { return m.hash(); },
          [](const Matrix& a, const Matrix& b) { return ProjTransform(a * b).matrix(); }, bound);
  return g;
}

GroupHandle GroupHandle::from_matrices(const std::vector<Matrix>& gens, std::size_t bound) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  GroupHandle g;
  g.kind_ = Kind::Linear;
  g.degree_ = gens[0].rows();
  g.mats_ = {Matrix::identity(g.degree_)};
  g.build(gens, g.mats_, [](const Matrix& m) { return m.hash(); },
          [](const Matrix& a, const Matrix& b) { return a * b; }, bound);
  return g;
}

int GroupHandle::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  std::vector<int> word;
  for (int x = b; x != 0; x = parent_[static_cast<std::size_t>(x)]) word.push_back(parent_gen_[static_cast<std::size_t>(x)]);
  int r = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = right_[static_cast<std::size_t>(r)][static_cast<std::size_t>(*it)];
  return r;
}

int GroupHandle::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::optional<int> GroupHandle::index_of(const Perm& p) const {
  if (kind_ != Kind::Permutation) return std::nullopt;
  auto it = lookup_.find(p.hash());
  if (it == lookup_.end()) return std::nullopt;
  for (int idx : it->second)
    if (perms_[static_cast<std::size_t>(idx)] == p) return idx;
  return std::nullopt;
}

std::optional<int> GroupHandle::index_of(const ProjTransform& t) const {
  if (kind_ == Kind::Permutation) return std::nullopt;
  if (kind_ == Kind::Projective) {
    auto it = lookup_.find(t.matrix().hash());
    if (it == lookup_.end()) return std::nullopt;
    for (int idx : it->second)
      if (mats_[static_cast<std::size_t>(idx)] == t.matrix()) return idx;
    return std::nullopt;
  }
  for (std::size_t i = 0; i < size_; ++i)
    if (ProjTransform(mats_[i]) == t) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<int> GroupHandle::subgroup_closure(const std::vector<int>& gens) const {
  std::vector<bool> in(size_, false);
  std::vector<int> elems = {0};
  in[0] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int p = mul(elems[i], g);
      if (!in[static_cast<std::size_t>(p)]) {
        in[static_cast<std::size_t>(p)] = true;
        elems.push_back(p);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<int>> GroupHandle::conjugacy_classes() const {
  std::vector<int> cls(size_, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t x = 0; x < size_; ++x) {
    if (cls[x] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<int> members = {static_cast<int>(x)};
    cls[x] = id;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int g : gens_) {
        int c = mul(mul(g, members[i]), inverse(g));
        if (cls[static_cast<std::size_t>(c)] < 0) {
          cls[static_cast<std::size_t>(c)] = id;
          members.push_back(c);
        }
      }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::vector<int>> GroupHandle::rational_classes() const {
  auto classes = conjugacy_classes();
  std::vector<int> cls(size_, 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) cls[static_cast<std::size_t>(x)] = static_cast<int>(c);
  std::vector<int> root(classes.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return root[static_cast<std::size_t>(a)] == a ? a : root[static_cast<std::size_t>(a)] = find(root[static_cast<std::size_t>(a)]);
  };
  for (std::size_t c = 0; c < classes.size(); ++c) {
    int x = classes[c][0];
    int ord = element_order(x);
    int p = x;
    for (int k = 1; k < ord; ++k, p = mul(p, x)) {
      if (std::gcd(k, ord) != 1) continue;
      int a = find(static_cast<int>(c)), b = find(cls[static_cast<std::size_t>(p)]);
      if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> merged;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& m = merged[find(static_cast<int>(c))];
    m.insert(m.end(), classes[c].begin(), classes[c].end());
  }
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : merged) {
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fingerprints

namespace {

struct SubgroupSet {
  std::vector<int> elements;
  std::vector<int> generators;
};

int power(const GroupHandle& g, int x, long e) {
  int r = 0;
  int b = x;
  while (e > 0) {
    if (e & 1) r = g.mul(r, b);
    b = g.mul(b, b);
    e >>= 1;
  }
  return r;
}

int commutator(const GroupHandle& g, int a, int b) {
  return g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b));
}

SubgroupSet derived_subgroup(const GroupHandle& g, const SubgroupSet& h) {
  SubgroupSet d;
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i + 1; j < h.generators.size(); ++j) {
      int c = commutator(g, h.generators[i], h.generators[j]);
      if (c != 0) d.generators.push_back(c);
    }
  d.elements = g.subgroup_closure(d.generators);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < d.generators.size() && !grew; ++i)
      for (int x : h.generators) {
        int c = g.mul(g.mul(x, d.generators[i]), g.inverse(x));
        if (!std::binary_search(d.elements.begin(), d.elements.end(), c)) {
          d.generators.push_back(c);
          d.elements = g.subgroup_closure(d.generators);
          grew = true;
          break;
        }
      }
  }
  return d;
}

std::vector<long> abelian_invariants(const GroupHandle& g, const std::vector<int>& derived) {
  std::vector<bool> in(g.order(), false);
  for (int x : derived) in[static_cast<std::size_t>(x)] = true;
  long m = static_cast<long>(g.order() / derived.size());
  std::vector<long> factors;
  long rest = m;
  std::vector<std::pair<long, std::vector<int>>> primary;  // prime, exponents descending
  for (long p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    int top = 0;
    while (rest % p == 0) {
      rest /= p;
      ++top;
    }
    // t_k = #{cyclic factors with exponent >= k}
    std::vector<int> logs = {0};
    long pk = 1;
    for (int k = 1; k <= top; ++k) {
      pk *= p;
      long count = 0;
      for (std::size_t x = 0; x < g.order(); ++x)
        if (in[static_cast<std::size_t>(power(g, static_cast<int>(x), pk))]) ++count;
      long n = count / static_cast<long>(derived.size());
      int l = 0;
      while (n > 1) {
        n /= p;
        ++l;
      }
      logs.push_back(l);
    }
    std::vector<int> exps;
    for (int k = 1; k <= top; ++k) {
      int tk = logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(k - 1)];
      int tk1 = k < top ? logs[static_cast<std::size_t>(k + 1)] - logs[static_cast<std::size_t>(k)] : 0;
      for (int c = 0; c < tk - tk1; ++c) exps.push_back(k);
    }
    std::sort(exps.rbegin(), exps.rend());
    primary.emplace_back(p, exps);
  }
  std::size_t len = 0;
  for (auto& [p, e] : primary) len = std::max(len, e.size());
  for (std::size_t j = 0; j < len; ++j) {
    long f = 1;
    for (auto& [p, e] : primary)
      if (j < e.size())
        for (int k = 0; k < e[j]; ++k) f *= p;
    factors.push_back(f);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

Fingerprint fingerprint(const GroupHandle& g) {
  Fingerprint f;
  f.order = g.order();
  for (std::size_t x = 0; x < g.order(); ++x) ++f.element_orders[g.element_order(static_cast<int>(x))];
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (int s : g.generators())
      if (g.mul(static_cast<int>(x), s) != g.mul(s, static_cast<int>(x))) {
        central = false;
        break;
      }
    if (central) ++f.center_order;
  }
  SubgroupSet h;
  h.generators = g.generators();
  h.elements.resize(g.order());
  std::iota(h.elements.begin(), h.elements.end(), 0);
  f.derived_series.push_back(h.elements.size());
  SubgroupSet d = derived_subgroup(g, h);
  f.abelian_invariants = abelian_invariants(g, d.elements);
  while (d.elements.size() < h.elements.size()) {
    f.derived_series.push_back(d.elements.size());
    h = d;
    if (h.elements.size() == 1) break;
    d = derived_subgroup(g, h);
  }
  return f;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "order=" << order << " orders={";
  bool first = true;
  for (auto& [k, v] : element_orders) {
    os << (first ? "" : ",") << k << ':' << v;
    first = false;
  }
  os << "} ab=[";
  for (std::size_t i = 0; i < abelian_invariants.size(); ++i) os << (i ? "," : "") << abelian_invariants[i];
  os << "] center=" << center_order << " derived=[";
  for (std::size_t i = 0; i < derived_series.size(); ++i) os << (i ? "," : "") << derived_series[i];
  os << ']';
  return os.str();
}

const std::vector<ReferenceGroup>& reference_groups() {
  static const std::vector<ReferenceGroup> groups = {
      {"Sym6", {"(1,2)", "(1,2,3,4,5,6)"}, 6},
      {"Sym5", {"(1,2)", "(1,2,3,4,5)"}, 5},
      {"Alt6", {"(1,2,3)", "(2,3,4,5,6)"}, 6},
      {"Alt5", {"(1,2,3)", "(1,2,3,4,5)"}, 5},
      {"Sym3^2:C2", {"(1,2)", "(1,2,3)", "(1,4)(2,5)(3,6)"}, 6},
      {"Sym3^2", {"(1,2)", "(1,2,3)", "(4,5)", "(4,5,6)"}, 6},
      {"C3^2:C4", {"(1,2,3)", "(4,5,6)", "(1,4,2,5)(3,6)"}, 6},
      {"C5:C4", {"(1,2,3,4,5)", "(2,3,5,4)"}, 5},
      {"Dih12", {"(1,2,3,4,5,6)", "(2,6)(3,5)"}, 6},
      {"Sym4xC2", {"(1,2)", "(1,2,3,4)", "(5,6)"}, 6},
      {"Sym4", {"(1,2)", "(1,2,3,4)"}, 4},
      {"Sym3xC3", {"(1,2)", "(1,2,3)", "(4,5,6)"}, 6},
      {"Dih10", {"(1,2,3,4,5)", "(2,5)(3,4)"}, 5},
      {"C3^2", {"(1,2,3)", "(4,5,6)"}, 6},
      {"Sym3", {"(1,2)", "(1,2,3)"}, 3},
  };
  return groups;
}

namespace {

const std::vector<std::pair<std::string, Fingerprint>>& reference_table() {
  static const std::vector<std::pair<std::string, Fingerprint>> table = [] {
    std::vector<std::pair<std::string, Fingerprint>> t;
    for (const auto& r : reference_groups()) {
      std::vector<Perm> gens;
      for (const auto& s : r.generators) gens.push_back(Perm::parse(s, r.degree));
      t.emplace_back(r.name, fingerprint(GroupHandle::from_perms(gens)));
    }
    return t;
  }();
  return table;
}

}  // namespace

const Fingerprint& reference_fingerprint(const std::string& name) {
  for (const auto& [n, f] : reference_table())
    if (n == name) return f;
  throw std::invalid_argument("unknown reference group " + name);
}

std::optional<std::string> identify(const Fingerprint& f) {
  for (const auto& [n, r] : reference_table())
    if (r == f) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Actions

std::vector<std::vector<int>> orbits(const std::vector<Perm>& gens, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> orb = {s};
    seen[static_cast<std::size_t>(s)] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens) {
        int t = g(orb[i]);
        if (!seen[static_cast<std::size_t>(t)]) {
          seen[static_cast<std::size_t>(t)] = true;
          orb.push_back(t);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<std::vector<int>> orbits(const GroupHandle& g) {
  if (g.kind() != GroupHandle::Kind::Permutation) throw std::invalid_argument("not a permutation group");
  std::vector<Perm> gens;
  for (int i : g.generators()) gens.push_back(g.perm(i));
  return orbits(gens, g.degree());
}

std::optional<Perm> induced_permutation(const ProjTransform& t, const std::vector<ProjPoint>& points) {
  std::vector<int> img;
  for (const auto& p : points) {
    auto q = t.apply(p);
    auto it = std::find(points.begin(), points.end(), q);
    if (it == points.end()) return std::nullopt;
    img.push_back(static_cast<int>(it - points.begin()));
  }
  return Perm(std::move(img));
}

std::vector<std::vector<int>> orbits(const GroupHandle& g, const std::vector<ProjPoint>& points) {
  std::vector<Perm> gens;
  for (int i : g.generators()) {
    auto p = induced_permutation(g.transform(i), points);
    if (!p) throw std::invalid_argument("point set is not invariant");
    gens.push_back(*p);
  }
  return orbits(gens, static_cast<int>(points.size()));
}

std::vector<ProjPoint> orbit_of(const GroupHandle& g, const ProjPoint& p) {
  std::vector<ProjPoint> orb = {p};
  std::unordered_map<ProjPoint, int, ProjPointHash> seen = {{p, 0}};
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (int k : g.generators()) {
      ProjPoint q = g.transform(k).apply(orb[i]);
      if (seen.emplace(q, static_cast<int>(orb.size())).second) orb.push_back(q);
    }
  return orb;
}

bool is_transitive(const std::vector<std::vector<int>>& partition) { return partition.size() == 1; }

// ---------------------------------------------------------------------------
// Subgroup lattice by cyclic extension

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(int i) { w[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u; }
  friend bool operator==(const Bits&, const Bits&) = default;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 0;
    for (auto x : b.w) h = h * 1000003u ^ std::hash<std::uint64_t>()(x);
    return h;
  }
};

}  // namespace

std::vector<Subgroup> subgroup_scan(const GroupHandle& g, const std::function<bool(const Subgroup&)>& pred,
                                    std::size_t max_order) {
  if (g.order() > max_order) throw std::invalid_argument("group too large for a subgroup scan");
  const std::size_t n = g.order();

  // one generator per cyclic subgroup
  std::vector<int> cyclic;
  {
    std::unordered_map<Bits, int, BitsHash> seen;
    for (std::size_t x = 1; x < n; ++x) {
      Bits b(n);
      int p = 0;
      do {
        b.set(p);
        p = g.mul(p, static_cast<int>(x));
      } while (p != 0);
      if (seen.emplace(b, static_cast<int>(x)).second) cyclic.push_back(static_cast<int>(x));
    }
  }

  struct Entry {
    Bits bits;
    std::vector<int> elements, generators;
  };
  std::vector<Entry> all;
  std::unordered_map<Bits, int, BitsHash> index;
  {
    Entry triv{Bits(n), {0}, {}};
    triv.bits.set(0);
    index.emplace(triv.bits, 0);
    all.push_back(std::move(triv));
  }
  for (std::size_t h = 0; h < all.size(); ++h) {
    for (int c : cyclic) {
      if (all[h].bits.test(c)) continue;
      std::vector<int> gens = all[h].generators;
      gens.push_back(c);
      Bits bits = all[h].bits;
      std::vector<int> elems = all[h].elements;
      for (std::size_t i = 0; i < elems.size(); ++i)
        for (int s : gens) {
          int p = g.mul(elems[i], s);
          if (!bits.test(p)) {
            bits.set(p);
            elems.push_back(p);
          }
        }
      if (index.count(bits)) continue;
      std::sort(elems.begin(), elems.end());
      index.emplace(bits, static_cast<int>(all.size()));
      all.push_back(Entry{std::move(bits), std::move(elems), std::move(gens)});
    }
  }

  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = all[static_cast<std::size_t>(a)].elements;
    const auto& eb = all[static_cast<std::size_t>(b)].elements;
    return ea.size() != eb.size() ? ea.size() < eb.size() : ea < eb;
  });
  std::vector<bool> done(all.size(), false);
  std::vector<Subgroup> out;
  for (int idx : order) {
    if (done[static_cast<std::size_t>(idx)]) continue;
    const Entry& e = all[static_cast<std::size_t>(idx)];
    std::size_t conjugates = 0;
    for (std::size_t x = 0; x < n; ++x) {
      Bits b(n);
      for (int y : e.elements) b.set(g.mul(g.mul(static_cast<int>(x), y), g.inverse(static_cast<int>(x))));
      int j = index.at(b);
      if (!done[static_cast<std::size_t>(j)]) {
        done[static_cast<std::size_t>(j)] = true;
        ++conjugates;
      }
    }
    Subgroup s{e.elements, e.generators, conjugates};
    if (pred(s)) out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Representations

GroupHandle linearize(const GroupHandle& g) {
  switch (g.kind()) {
    case GroupHandle::Kind::Linear:
      return g;
    case GroupHandle::Kind::Permutation: {
      std::vector<Matrix> gens;
      for (int i : g.generators()) gens.push_back(perm_matrix(g.perm(i)));
      if (gens.empty()) gens.push_back(Matrix::identity(g.degree()));
      return GroupHandle::from_matrices(gens);
    }
    case GroupHandle::Kind::Projective: {
      std::vector<Matrix> gens;
      for (int i : g.generators()) {
        const Matrix& m = g.matrix(i);
        int k = g.element_order(i);
        Matrix mk = matrix_power(m, k);
        auto roots = nth_roots(FieldElement(1) / mk(0, 0), k, 60);
        if (roots.empty()) throw SplittingFailure("no finite linear lift of a generator");
        gens.push_back(m.scaled(roots.front()));
      }
      if (gens.empty()) gens.push_back(Matrix::identity(g.degree()));
      return GroupHandle::from_matrices(gens);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Coordinates on a subspace spanned by independent vectors.
struct Frame {
  int n = 0;
  std::vector<Vec> basis;
  std::vector<int> rows;
  Matrix rowinv;

  explicit Frame(std::vector<Vec> b) : n(static_cast<int>(b.at(0).size())), basis(std::move(b)) {
    const int k = static_cast<int>(basis.size());
    Matrix::from_rows(basis).rref(&rows);
    if (static_cast<int>(rows.size()) != k) throw std::logic_error("dependent frame");
    Matrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
    rowinv = *sub.inverse();
  }
  int dim() const { return static_cast<int>(basis.size()); }
  Vec coords(const Vec& w) const {
    Vec s;
    for (int r : rows) s.push_back(w[static_cast<std::size_t>(r)]);
    return rowinv * s;
  }
  Vec lift(const Vec& c) const {
    Vec v(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!c[j].is_zero())
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] += c[j] * basis[j][static_cast<std::size_t>(i)];
    return v;
  }
  Matrix restrict(const Matrix& m) const {
    std::vector<Vec> cols;
    for (const auto& b : basis) cols.push_back(coords(m * b));
    return Matrix::from_columns(cols);
  }
};

// Basis of { X : X A = B X for each pair }, X of size rb x ca.
std::vector<Matrix> intertwiners(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  const int ka = a.front().rows(), kb = b.front().rows();
  const int unknowns = kb * ka;
  std::vector<Vec> eqs;
  for (std::size_t g = 0; g < a.size(); ++g)
    for (int i = 0; i < kb; ++i)
      for (int j = 0; j < ka; ++j) {
        Vec row(static_cast<std::size_t>(unknowns));
        // (X A)_ij = sum_l X_il A_lj ; (B X)_ij = sum_l B_il X_lj
        for (int l = 0; l < ka; ++l) row[static_cast<std::size_t>(i * ka + l)] += a[g](l, j);
        for (int l = 0; l < kb; ++l) row[static_cast<std::size_t>(l * ka + j)] -= b[g](i, l);
        if (!is_zero_vec(row)) eqs.push_back(std::move(row));
      }
  std::vector<Vec> ns;
  if (eqs.empty()) {
    for (int u = 0; u < unknowns; ++u) {
      Vec e(static_cast<std::size_t>(unknowns));
      e[static_cast<std::size_t>(u)] = 1;
      ns.push_back(e);
    }
  } else {
    ns = Matrix::from_rows(eqs).nullspace();
  }
  std::vector<Matrix> out;
  for (const auto& v : ns) {
    Matrix x(kb, ka);
    for (int i = 0; i < kb; ++i)
      for (int j = 0; j < ka; ++j) x(i, j) = v[static_cast<std::size_t>(i * ka + j)];
    out.push_back(x);
  }
  return out;
}

std::vector<Vec> spin(const std::vector<Matrix>& gens, const Vec& v) {
  std::vector<Vec> span = {v};
  std::vector<Vec> basis = row_basis(span);
  for (std::size_t i = 0; i < span.size(); ++i)
    for (const auto& g : gens) {
      Vec w = g * span[i];
      auto trial = basis;
      trial.push_back(w);
      if (rank_of(trial) > static_cast<int>(basis.size())) {
        basis = row_basis(trial);
        span.push_back(w);
      }
    }
  return basis;
}

std::optional<long> integer_root_candidate(const std::vector<FieldElement>& poly, long lambda) {
  FieldElement acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * FieldElement(lambda) + *it;
  return acc.is_zero() ? std::optional<long>(lambda) : std::nullopt;
}

class Splitter {
 public:
  explicit Splitter(const GroupHandle& lin) : g_(lin) {
    for (std::size_t i = 0; i < lin.order(); ++i) elements_.push_back(lin.matrix(static_cast<int>(i)));
    rational_classes_ = lin.rational_classes();
    // generators first, then the rest in index order
    search_order_ = lin.generators();
    for (std::size_t i = 1; i < lin.order(); ++i)
      if (std::find(search_order_.begin(), search_order_.end(), static_cast<int>(i)) == search_order_.end())
        search_order_.push_back(static_cast<int>(i));
  }

  int commutant_dimension(const std::vector<Vec>& basis) {
    Frame f(basis);
    auto gens = restricted_generators(f);
    return static_cast<int>(intertwiners(gens, gens).size());
  }

  void split(const std::vector<Vec>& basis, std::vector<std::vector<Vec>>& out) {
    if (basis.size() == 1) {
      out.push_back(basis);
      return;
    }
    Frame f(basis);
    auto gens = restricted_generators(f);
    auto comm = intertwiners(gens, gens);
    if (comm.size() == 1) {
      out.push_back(basis);
      return;
    }
    std::vector<Matrix> all;
    for (const auto& m : elements_) all.push_back(f.restrict(m));
    auto sub = find_submodule(f.dim(), gens, all, comm);
    if (!sub) throw SplittingFailure("no splitting found within the supported fields");
    auto comp = complement(f.dim(), *sub, all);
    std::vector<Vec> a, b;
    for (const auto& c : *sub) a.push_back(f.lift(c));
    for (const auto& c : comp) b.push_back(f.lift(c));
    split(row_basis(a), out);
    split(row_basis(b), out);
  }

  std::vector<Matrix> restricted_generators(const Frame& f) const {
    std::vector<Matrix> out;
    for (int i : g_.generators()) out.push_back(f.restrict(elements_[static_cast<std::size_t>(i)]));
    if (out.empty()) out.push_back(Matrix::identity(f.dim()));
    return out;
  }

 private:
  static bool proper(const std::vector<Vec>& u, int k) { return !u.empty() && static_cast<int>(u.size()) < k; }

  std::optional<std::vector<Vec>> find_submodule(int k, const std::vector<Matrix>& gens, const std::vector<Matrix>& all,
                                                 const std::vector<Matrix>& comm) const {
    // rational class sums act on isotypic pieces by integer scalars
    for (const auto& cls : rational_classes_) {
      if (cls.size() == 1 && cls[0] == 0) continue;
      Matrix t(k, k);
      for (int x : cls) t = t + all[static_cast<std::size_t>(x)];
      auto cp = t.charpoly();
      if (!std::all_of(cp.begin(), cp.end(), [](const FieldElement& c) { return c.is_rational(); })) continue;
      const long bound = static_cast<long>(cls.size());
      for (long lam = -bound; lam <= bound; ++lam) {
        if (!integer_root_candidate(cp, lam)) continue;
        auto u = (t - Matrix::identity(k).scaled(FieldElement(lam))).nullspace();
        if (proper(u, k)) return u;
      }
    }
    // singular elements of the commutant
    for (const auto& x : comm) {
      if (x.rank() < k) return x.nullspace();
      std::vector<FieldElement> cands;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (std::find(cands.begin(), cands.end(), x(i, j)) == cands.end()) cands.push_back(x(i, j));
      for (const auto& c : cands) {
        auto u = (x - Matrix::identity(k).scaled(c)).nullspace();
        if (proper(u, k)) return u;
      }
    }
    // spin-ups of eigenvectors of group elements
    for (int idx : search_order_) {
      int ord = g_.element_order(idx);
      const Matrix& a = all[static_cast<std::size_t>(idx)];
      for (int j = 0; j < ord; ++j) {
        FieldElement z = FieldElement::zeta(ord, j);
        std::vector<Vec> eig;
        try {
          eig = (a - Matrix::identity(k).scaled(z)).nullspace();
        } catch (const ConductorOverflow&) {
          continue;
        }
        for (const auto& v : eig) {
          auto s = spin(gens, v);
          if (proper(s, k)) return s;
        }
      }
    }
    return std::nullopt;
  }

  // Invariant complement via the averaged projection onto u.
  std::vector<Vec> complement(int k, const std::vector<Vec>& u, const std::vector<Matrix>& all) const {
    std::vector<Vec> cols = u;
    for (int i = 0; i < k && static_cast<int>(cols.size()) < k; ++i) {
      Vec e(static_cast<std::size_t>(k));
      e[static_cast<std::size_t>(i)] = 1;
      auto trial = cols;
      trial.push_back(e);
      if (rank_of(trial) > static_cast<int>(cols.size())) cols = trial;
    }
    Matrix c = Matrix::from_columns(cols);
    Vec d(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < u.size(); ++i) d[i] = 1;
    Matrix p = c * Matrix::diagonal(d) * *c.inverse();
    Matrix avg(k, k);
    for (std::size_t x = 0; x < all.size(); ++x)
      avg = avg + all[x] * p * all[static_cast<std::size_t>(g_.inverse(static_cast<int>(x)))];
    return avg.nullspace();
  }

  const GroupHandle& g_;
  std::vector<Matrix> elements_;
  std::vector<std::vector<int>> rational_classes_;
  std::vector<int> search_order_;
};

std::vector<Vec> standard_basis(int n) {
  std::vector<Vec> b;
  for (int i = 0; i < n; ++i) {
    Vec e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    b.push_back(e);
  }
  return b;
}

}  // namespace

bool ModuleDecomposition::multiplicity_free() const {
  return std::all_of(type_multiplicity.begin(), type_multiplicity.end(), [](int m) { return m == 1; });
}

ModuleDecomposition decompose_module(const GroupHandle& g) {
  GroupHandle lin = linearize(g);
  Splitter s(lin);
  const int n = lin.degree();
  ModuleDecomposition m;
  m.dimension = n;
  auto full = standard_basis(n);
  m.commutant_dimension = s.commutant_dimension(full);
  std::vector<std::vector<Vec>> parts;
  s.split(full, parts);

  std::vector<std::vector<Matrix>> actions;
  for (const auto& p : parts) actions.push_back(s.restricted_generators(Frame(p)));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    m.pieces.push_back(LinearSubspace::span(n, parts[i]));
    int type = -1;
    for (std::size_t j = 0; j < i && type < 0; ++j) {
      if (parts[j].size() != parts[i].size()) continue;
      if (!intertwiners(actions[j], actions[i]).empty()) type = m.type[j];
    }
    if (type < 0) {
      type = static_cast<int>(m.type_multiplicity.size());
      m.type_multiplicity.push_back(0);
      m.type_dimension.push_back(static_cast<int>(parts[i].size()));
    }
    m.type.push_back(type);
    ++m.type_multiplicity[static_cast<std::size_t>(type)];
  }
  return m;
}

InvariantSubspaces invariant_subspaces(const ModuleDecomposition& m, int d) {
  InvariantSubspaces out;
  out.dimension = d;
  if (d <= 0 || d > m.dimension) return out;
  const std::size_t types = m.type_multiplicity.size();
  std::vector<int> take(types, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t t, int remaining) {
    if (t == types) {
      if (remaining != 0) return;
      std::vector<Vec> vecs;
      std::vector<int> used(types, 0);
      for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        auto ty = static_cast<std::size_t>(m.type[i]);
        if (used[ty] < take[ty]) {
          ++used[ty];
          const auto& b = m.pieces[i].basis();
          vecs.insert(vecs.end(), b.begin(), b.end());
        }
      }
      for (std::size_t ty = 0; ty < types; ++ty)
        if (take[ty] > 0 && take[ty] < m.type_multiplicity[ty]) out.finite = false;
      out.subspaces.push_back(LinearSubspace::span(m.dimension, vecs));
      return;
    }
    for (int k = 0; k <= m.type_multiplicity[t] && k * m.type_dimension[t] <= remaining; ++k) {
      take[t] = k;
      rec(t + 1, remaining - k * m.type_dimension[t]);
    }
    take[t] = 0;
  };
  rec(0, d);
  return out;
}

InvariantSubspaces invariant_subspaces(const GroupHandle& g, int d) { return invariant_subspaces(decompose_module(g), d); }

FixedFlats fixed_flats(const GroupHandle& g) {
  auto m = decompose_module(g);
  return FixedFlats{invariant_subspaces(m, 1), invariant_subspaces(m, 2), invariant_subspaces(m, 3)};
}

bool is_invariant(const GroupHandle& g, const LinearSubspace& s) {
  for (int i : g.generators()) {
    Matrix m = g.kind() == GroupHandle::Kind::Permutation ? perm_matrix(g.perm(i)) : g.matrix(i);
    for (const auto& b : s.basis())
      if (!s.contains(m * b)) return false;
  }
  return true;
}

}  // namespace cubaut

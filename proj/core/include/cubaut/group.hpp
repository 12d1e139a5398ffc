#ifndef CUBAUT_GROUP_HPP
#define CUBAUT_GROUP_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubaut/geometry.hpp"
#include "cubaut/linalg.hpp"

namespace cubaut {

class OrderBoundExceeded : public std::runtime_error {
 public:
  explicit OrderBoundExceeded(std::size_t bound)
      : std::runtime_error("group order exceeds the bound " + std::to_string(bound)), bound(bound) {}
  std::size_t bound;
};

/// Raised when splitting a module needs scalars beyond the supported fields.
class SplittingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Permutation of {0..n-1}; composition (a*b)(i) = a(b(i)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int n);
  /// Cycle notation with 1-indexed points, e.g. "(1,2,3)(4,5,6)"; "()" is the identity.
  static Perm parse(const std::string& cycles, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }
  Perm operator*(const Perm& b) const;
  Perm inverse() const;
  int order() const;
  bool is_identity() const;
  bool is_even() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }
  std::size_t hash() const;
  /// 1-indexed cycle notation.
  std::string to_string() const;

 private:
  std::vector<int> img_;
};

/// A finite group held as the full list of its elements, indexed 0..order-1
/// with 0 the identity.
class GroupHandle {
 public:
  enum class Kind { Permutation, Projective, Linear };
  static constexpr std::size_t kDefaultBound = 10000;

  static GroupHandle from_perms(const std::vector<Perm>& gens, std::size_t bound = kDefaultBound);
  /// Elements are projectivities, equal up to scalar.
  static GroupHandle from_transforms(const std::vector<ProjTransform>& gens, std::size_t bound = kDefaultBound);
  /// Elements are matrices compared exactly.
  static GroupHandle from_matrices(const std::vector<Matrix>& gens, std::size_t bound = kDefaultBound);

  Kind kind() const { return kind_; }
  std::size_t order() const { return size_; }
  int degree() const { return degree_; }
  const std::vector<int>& generators() const { return gens_; }

  const Perm& perm(int i) const { return perms_[static_cast<std::size_t>(i)]; }
  /// Matrix of element i (projective elements carry their normalized representative).
  const Matrix& matrix(int i) const { return mats_[static_cast<std::size_t>(i)]; }
  ProjTransform transform(int i) const { return ProjTransform(mats_[static_cast<std::size_t>(i)]); }

  int mul(int a, int b) const;
  int inverse(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int element_order(int a) const;

  std::optional<int> index_of(const Perm& p) const;
  std::optional<int> index_of(const ProjTransform& t) const;

  /// Elements of the subgroup generated by the given elements, sorted.
  std::vector<int> subgroup_closure(const std::vector<int>& gens) const;
  std::vector<std::vector<int>> conjugacy_classes() const;
  /// Classes of elements generating conjugate cyclic subgroups.
  std::vector<std::vector<int>> rational_classes() const;

 private:
  template <class E, class H, class Mul>
  void build(const std::vector<E>& gens, std::vector<E>& store, H hasher, Mul mul, std::size_t bound);
  void finish_tables();

  Kind kind_ = Kind::Permutation;
  std::size_t size_ = 0;
  int degree_ = 0;
  std::vector<int> gens_;
  std::vector<Perm> perms_;
  std::vector<Matrix> mats_;
  std::vector<std::vector<int>> right_;  // right_[a][k] = a * gen_k
  std::vector<int> parent_, parent_gen_;
  std::vector<std::vector<int>> table_;  // full Cayley table when small
  std::vector<int> inv_;
  std::map<std::size_t, std::vector<int>> lookup_;  // hash -> indices
};

/// Isomorphism invariants.
struct Fingerprint {
  std::size_t order = 0;
  std::map<int, int> element_orders;
  std::vector<long> abelian_invariants;
  std::size_t center_order = 0;
  std::vector<std::size_t> derived_series;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const GroupHandle& g);

struct ReferenceGroup {
  std::string name;
  std::vector<std::string> generators;  // cycle notation
  int degree;
};
/// Sym6, Sym5, Alt6, Alt5, Sym3^2:C2, Sym3^2, C3^2:C4, C5:C4, Dih12, Sym4xC2.
const std::vector<ReferenceGroup>& reference_groups();
const Fingerprint& reference_fingerprint(const std::string& name);
/// Name of the reference group with this fingerprint.
std::optional<std::string> identify(const Fingerprint& f);

// -- actions ---------------------------------------------------------------

/// Orbits of the group generated by permutations of {0..n-1}.
std::vector<std::vector<int>> orbits(const std::vector<Perm>& gens, int n);
std::vector<std::vector<int>> orbits(const GroupHandle& g);
/// Permutation induced on a finite point set, if the set is invariant.
std::optional<Perm> induced_permutation(const ProjTransform& t, const std::vector<ProjPoint>& points);
/// Orbits of a matrix group on an invariant point set (throws if not invariant).
std::vector<std::vector<int>> orbits(const GroupHandle& g, const std::vector<ProjPoint>& points);
std::vector<ProjPoint> orbit_of(const GroupHandle& g, const ProjPoint& p);
bool is_transitive(const std::vector<std::vector<int>>& partition);

// -- subgroups ---------------------------------------------------------------

struct Subgroup {
  std::vector<int> elements;  // sorted indices into the parent group
  std::vector<int> generators;
  std::size_t conjugates = 1;  // size of the conjugacy class of subgroups
  std::size_t order() const { return elements.size(); }
};

/// Conjugacy class representatives of subgroups satisfying pred.
std::vector<Subgroup> subgroup_scan(const GroupHandle& g, const std::function<bool(const Subgroup&)>& pred,
                                    std::size_t max_order = 720);

// -- representations ---------------------------------------------------------

/// Finite linear group covering a projective or permutation group: each
/// generator is rescaled so that its projective order is its linear order.
GroupHandle linearize(const GroupHandle& g);

/// Complete decomposition of the natural module into irreducibles.
struct ModuleDecomposition {
  int dimension = 0;
  std::vector<LinearSubspace> pieces;  // irreducible, direct sum is everything
  std::vector<int> type;               // isomorphism type of each piece
  std::vector<int> type_multiplicity;  // indexed by type
  std::vector<int> type_dimension;     // indexed by type
  /// Dimension of the commutant of the whole module; 1 certifies irreducibility.
  int commutant_dimension = 0;
  bool irreducible() const { return pieces.size() == 1; }
  bool multiplicity_free() const;
};

ModuleDecomposition decompose_module(const GroupHandle& g);

struct InvariantSubspaces {
  int dimension = 0;
  /// Complete list when finite; otherwise explicit witnesses from a continuous family.
  std::vector<LinearSubspace> subspaces;
  bool finite = true;
  bool exists() const { return !subspaces.empty(); }
};

InvariantSubspaces invariant_subspaces(const ModuleDecomposition& m, int d);
InvariantSubspaces invariant_subspaces(const GroupHandle& g, int d);

/// Invariant points, lines and planes of a group acting on P^4.
struct FixedFlats {
  InvariantSubspaces points, lines, planes;
};
FixedFlats fixed_flats(const GroupHandle& g);

/// Whether every generator maps the subspace into itself.
bool is_invariant(const GroupHandle& g, const LinearSubspace& s);

}  // namespace cubaut

#endif  // CUBAUT_GROUP_HPP

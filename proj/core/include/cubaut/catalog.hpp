#ifndef CUBAUT_CATALOG_HPP
#define CUBAUT_CATALOG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubaut/geometry.hpp"
#include "cubaut/group.hpp"
#include "cubaut/ideal.hpp"
#include "cubaut/poly.hpp"

namespace cubaut {

class UnknownTag : public std::invalid_argument {
 public:
  explicit UnknownTag(const std::string& tag) : std::invalid_argument("unknown catalog tag: " + tag) {}
};

/// How the generators of a listed subgroup are written.
enum class GeneratorAction {
  Whole,             // the full automorphism group, no generators
  CoordinatePerms,   // permutations of the six coordinates of the ambient P^5
  SingularPerms,     // permutations of the seed singular points, in seed order
};

struct SubgroupSpec {
  std::string name;         // "Alt5", "Sym3^2", "Aut"
  std::string fingerprint;  // reference group name
  GeneratorAction action = GeneratorAction::Whole;
  std::vector<std::string> generators;  // 1-indexed cycle notation
  bool transitive_on_coordinates = false;
  bool transitive_on_singular_points = false;
};

struct CatalogEntry {
  std::string tag;
  bool parametric = false;
  int conductor = 1;  // base field Q(zeta_conductor)

  MultiPoly form;  // five variables; empty for families
  ParamPoly family;
  std::vector<std::string> parameters;

  // Six-variable presentation cut by sum x_i = 0, when the entry has one.
  std::optional<MultiPoly> ambient_form;

  // Recorded metadata; s and the group data are also recomputed.
  int s = 0, p = 0, r = 0;
  std::string type1, type2;
  std::size_t aut_order = 0;
  std::string aut_name;
  std::vector<SubgroupSpec> minimal;

  std::vector<ProjPoint> seed_points;
  std::vector<LinearSubspace> seed_planes;
  std::string citation;
};

/// J15, J14, J9a, J9b, J5a, J5b.
const std::vector<std::string>& table_tags();
/// Table tags followed by F-J11, F-J9, F-4NODE.
const std::vector<std::string>& catalog_tags();
CatalogEntry catalog_build(const std::string& tag);

/// Member of a parametric entry at the given parameter values.
MultiPoly family_member(const CatalogEntry& e, const Vec& params);

/// Eliminates x_k from a six-variable form using sum c_i x_i = 0.
MultiPoly hyperplane_restrict(const MultiPoly& f, const Vec& relation, int k = 5);
/// Projectivity of the hyperplane induced by a 6x6 matrix preserving it.
ProjTransform hyperplane_transform(const Matrix& m, const Vec& relation, int k = 5);
/// Coordinate permutation of P^5 restricted to sum x_i = 0, in the
/// coordinates x_0..x_4.
ProjTransform restricted_coordinate_permutation(const Perm& p);

LinearSubspace transform_subspace(const ProjTransform& t, const LinearSubspace& s);

/// The projectivity sending points[i] to points[perm(i)]. Uses the frame of
/// the first six points in general position, or diagonal lifts when there
/// are exactly five points; nullopt when no (or no unique) lift preserves f.
std::optional<ProjTransform> lift_point_permutation(const MultiPoly& f, const std::vector<ProjPoint>& points,
                                                    const Perm& perm);

class NoGeneralPositionFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AutomorphismStats {
  std::size_t frames_tried = 0;
  std::size_t frames_accepted = 0;
};

/// Full projective automorphism group of f from its certified singular points.
GroupHandle compute_automorphism_group(const MultiPoly& f, const std::vector<ProjPoint>& singular_points,
                                       AutomorphismStats* stats = nullptr);

/// Elements of g whose permutation of points matches each generator.
GroupHandle resolve_subgroup(const GroupHandle& aut, const SubgroupSpec& spec, const MultiPoly& f,
                             const std::vector<ProjPoint>& points);

/// Singular points with rational coordinates, found chart by chart from the
/// Jacobian ideal; throws NonIsolatedPoint when the locus is not finite.
std::vector<ProjPoint> rational_singular_points(const MultiPoly& f, const GroebnerOptions& opts = {});

}  // namespace cubaut

#endif  // CUBAUT_CATALOG_HPP

#ifndef CUBAUT_VERIFIER_HPP
#define CUBAUT_VERIFIER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubaut/catalog.hpp"
#include "cubaut/singularity.hpp"

namespace cubaut {

enum class ClaimStatus { Pass, Fail, Skipped };
std::string to_string(ClaimStatus s);

struct Claim {
  std::string id;
  ClaimStatus status = ClaimStatus::Pass;
  std::string citation;
  /// Key/value evidence; on failure it holds the counterexample.
  std::vector<std::pair<std::string, std::string>> witness;
  std::string reason;  // for skipped claims
  double seconds = 0;
};

struct VerificationReport {
  std::vector<Claim> claims;

  /// Throws std::logic_error on a duplicate claim id.
  void add(Claim c);
  void append(const VerificationReport& other);
  bool ok() const;  // no claim failed
  std::size_t count(ClaimStatus s) const;
  const Claim* find(const std::string& id) const;
};

struct VerifyOptions {
  GroebnerOptions groebner;
};

/// A cubic with its certified singular points.
struct CertifiedCubic {
  MultiPoly form;
  std::vector<ProjPoint> singular_points;
};

/// Lemma-style obstructions for G acting on X. Claim ids are prefix + one of
/// no_fixed_singular_point, singular_orbits_at_least_4, no_invariant_line,
/// no_invariant_plane.
VerificationReport necessary_conditions(const CertifiedCubic& x, const GroupHandle& g, const std::string& prefix);

/// Invariant lines and planes found for g (dimension 2 and 3 subspaces).
FixedFlats invariant_flats(const GroupHandle& g);

/// Excluded (variety, group) pairs with the expected obstruction and witness.
struct ExclusionCase {
  std::string id;
  std::string host;  // catalog tag
  Vec parameters;    // for parametric hosts
  std::string group_name;
  char condition = 'd';  // which necessary condition must fail: a, b, c, d
  std::optional<LinearSubspace> witness;
  bool witness_on_form = false;  // the witness must also lie on X
  std::string citation;
  GroupHandle group;
  CertifiedCubic cubic;
};

std::vector<ExclusionCase> exclusion_cases(const VerifyOptions& opts = {});
VerificationReport verify_exclusions(const VerifyOptions& opts = {});

/// Permutation of the six J9 labels for each generator name of the pr1 check.
struct Pr1Condition {
  std::string name;        // h11, ...
  std::string permutation;  // cycle notation on p1..p6
  std::vector<std::string> claimed;  // generators of the claimed condition ideal in A, B, C, D
};
const std::vector<Pr1Condition>& pr1_conditions();

/// Checks one claimed equivalence; the claimed generators may be mutated by callers.
Claim check_pr1_condition(const Pr1Condition& c, const VerifyOptions& opts = {});
VerificationReport verify_pr1(const VerifyOptions& opts = {});

VerificationReport verify_eliminations(const VerifyOptions& opts = {});

/// Row check for one table entry.
VerificationReport verify_row(const std::string& tag, const VerifyOptions& opts = {});
VerificationReport verify_table(const VerifyOptions& opts = {});

}  // namespace cubaut

#endif  // CUBAUT_VERIFIER_HPP

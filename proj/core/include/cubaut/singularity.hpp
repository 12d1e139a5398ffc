#ifndef CUBAUT_SINGULARITY_HPP
#define CUBAUT_SINGULARITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cubaut/geometry.hpp"
#include "cubaut/ideal.hpp"

namespace cubaut {

/// Minimal homogeneous generators of the ideal of a finite point set.
std::vector<MultiPoly> vanishing_ideal(const std::vector<ProjPoint>& points);

struct PointCheck {
  ProjPoint point;
  bool on_variety = false;
  bool gradient_vanishes = false;
};

struct MembershipCheck {
  MultiPoly generator;
  bool in_radical = false;
};

/// Sing(X) equals the claimed set, with the evidence for both inclusions.
struct SingularLocusCertificate {
  std::vector<PointCheck> soundness;
  std::vector<MembershipCheck> completeness;
  DimDegree jacobian;
  bool distinct = true;

  bool sound() const;
  bool complete() const;
  /// Finite (possibly empty) singular locus.
  bool zero_dimensional() const { return jacobian.dimension <= 0; }
  bool ok() const { return distinct && sound() && complete() && zero_dimensional(); }
  std::vector<int> smooth_points() const;
  /// Human-readable reason when !ok().
  std::string failure() const;
};

SingularLocusCertificate certify_singular_locus(const MultiPoly& f, const std::vector<ProjPoint>& claimed,
                                                const GroebnerOptions& opts = {});

/// Raised when the corank-one reduction or the slice search runs out of degree.
class DegreeBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SingularityType { A1, CAk, Other };

struct SingularityReport {
  ProjPoint point;
  int chart = 0;          // dehomogenized coordinate
  int hessian_rank = 0;
  SingularityType type = SingularityType::Other;
  int k = 0;              // cA_k index for the corank-one case
  int corank = 0;
  int vanishing_order = 0;  // lowest degree of the local equation
  int mu = 0;
  int mu_section = 0;
  long slice_parameter = 0;  // t of the accepted slice (1, t, t^2, t^3)

  int m() const { return mu + mu_section; }
  /// "A1", "cA2-class", "other(corank 2, order 2)".
  std::string label() const;
};

struct ClassifyOptions {
  GroebnerOptions groebner;
  int series_degree = 12;
  int max_slices = 8;
};

/// Affine equation of f at p: p moved to the origin of the chart x_c = 1.
MultiPoly local_equation(const MultiPoly& f, const ProjPoint& p, int* chart = nullptr);

SingularityReport classify_singularity(const MultiPoly& f, const ProjPoint& p, const ClassifyOptions& opts = {});

struct DualDegreeBudget {
  long value = 24;
  bool feasible() const { return value >= 3; }
};

/// 3 * 2^3 - sum of m(p).
DualDegreeBudget dual_degree_budget(const std::vector<SingularityReport>& reports);

}  // namespace cubaut

#endif  // CUBAUT_SINGULARITY_HPP

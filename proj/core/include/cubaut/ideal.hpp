#ifndef CUBAUT_IDEAL_HPP
#define CUBAUT_IDEAL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubaut/poly.hpp"

namespace cubaut {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t steps)
      : std::runtime_error("Groebner budget of " + std::to_string(steps) + " S-pair reductions exceeded"),
        steps(steps) {}
  std::size_t steps;
};

class NonIsolatedPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced Groebner basis under graded reverse lexicographic order.
/// Elements are monic, inter-reduced and sorted by increasing leading monomial.
struct GroebnerBasis {
  int nvars = 0;
  std::vector<MultiPoly> elements;

  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
  std::vector<Monomial> leading_monomials() const;
};

struct GroebnerOptions {
  /// Maximum number of S-pair reductions.
  std::size_t budget = 200000;
  /// Called with every basis the engine produces.
  std::function<void(const GroebnerBasis&)> on_basis;
};

using Ideal = std::vector<MultiPoly>;

GroebnerBasis groebner(const Ideal& gens, const GroebnerOptions& opts = {});

/// Fully reduced remainder of f modulo g.
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g);
bool ideal_member(const MultiPoly& f, const GroebnerBasis& g);

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);
/// First S-polynomial of g that does not reduce to zero, if any.
std::optional<MultiPoly> failing_s_pair(const GroebnerBasis& g);

/// g in sqrt(I), via 1 in I + <1 - t g>.
bool radical_member(const MultiPoly& g, const Ideal& gens, const GroebnerOptions& opts = {});

struct DimDegree {
  /// Projective dimension; -1 for the empty locus.
  int dimension = -1;
  std::optional<long long> degree;
};

/// Projective dimension and degree of V(I) from the Hilbert series of LT(I).
DimDegree proj_dim_degree(const Ideal& gens, const GroebnerOptions& opts = {});
DimDegree proj_dim_degree(const GroebnerBasis& g);

/// Numerator of the Hilbert series of k[x]/<monomials>, low degree first.
std::vector<long long> hilbert_numerator(const std::vector<Monomial>& gens);

/// Number of standard monomials of a zero-dimensional basis, or nullopt when
/// the quotient is infinite-dimensional.
std::optional<long long> quotient_dimension(const GroebnerBasis& g);

/// dim k[x]_p / I_p, stabilized over I + m^N.
int local_multiplicity(const Ideal& gens, const Vec& point, const GroebnerOptions& opts = {}, int max_order = 24);

/// Whether the saturations of I and J by s have the same radical.
bool saturated_equal(const Ideal& i, const Ideal& j, const MultiPoly& s, const GroebnerOptions& opts = {});
/// g in I : s^inf, via membership in I + <1 - t s>.
bool saturation_member(const MultiPoly& g, const Ideal& gens, const MultiPoly& s, const GroebnerOptions& opts = {});

/// A generator of one ideal outside the other's saturation by s, or nullopt
/// when I : s^inf = J : s^inf.
std::optional<MultiPoly> saturated_ideals_differ(const Ideal& i, const Ideal& j, const MultiPoly& s,
                                                 const GroebnerOptions& opts = {});

/// g in sqrt(I : s^inf).
bool radical_member_localized(const MultiPoly& g, const Ideal& gens, const MultiPoly& s,
                              const GroebnerOptions& opts = {});

/// Monic minimal polynomial of x_var in k[x]/I for zero-dimensional I,
/// coefficients low degree first.
std::vector<FieldElement> univariate_eliminant(const GroebnerBasis& g, int var);

/// Affine translation x -> x + p.
MultiPoly translate(const MultiPoly& f, const Vec& p);

}  // namespace cubaut

#endif  // CUBAUT_IDEAL_HPP

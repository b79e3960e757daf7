#ifndef AFDG_MODELS_HPP
#define AFDG_MODELS_HPP

#include <string>
#include <vector>

#include "afdg/bratteli.hpp"
#include "afdg/dimension_group.hpp"

namespace afdg {

/// numerator / 2^exponent, normalized so the numerator is odd or the
/// exponent is zero.
struct Dyadic {
  Int numerator;
  std::size_t exponent = 0;

  static Dyadic of(Int numerator, std::size_t exponent);

  bool is_one() const { return numerator == 1 && exponent == 0; }
  bool operator==(const Dyadic&) const = default;
  std::string to_string() const;
};

/// Coefficients beta_1, beta_2, ... (trailing zeros trimmed) of a
/// locally constant function on the minimal path space, expressed in the
/// nested-base-set basis.
struct XminFunction {
  IntVector coefficients;

  static XminFunction of(IntVector coefficients);

  /// Coefficients padded with zeros to a fixed length (for feeding a
  /// level-n cone test or recovery).
  IntVector padded(std::size_t length) const;

  bool operator==(const XminFunction&) const = default;
  std::string to_string() const { return afdg::to_string(coefficients); }
};

// Stationary diagrams used throughout: 2^n path space with double
// edges, the Pascal-triangle diagram, binary splitting, and binary
// splitting with doubled edges.
DiagramPtr make_car_diagram(std::size_t levels);
DiagramPtr make_gicar_diagram(std::size_t levels);
DiagramPtr make_cantor_diagram(std::size_t levels);
DiagramPtr make_hybrid_diagram(std::size_t levels);

/// Rank-1 group with every connecting matrix [2]; extends forever.
DirectLimitGroup car_group();

/// Value of a CAR element as a dyadic rational; constant on classes and
/// sends every order unit to 1.
Dyadic car_value(const LimitElement& e);

/// The multiplicity-one binary splitting group truncated at depth
/// `levels`: ranks 2^n, units all ones.
DirectLimitGroup cantor_group(std::size_t levels);

/// Locally constant integer function in coarsest form (complete equal
/// sibling pairs merged); equal classes evaluate identically.
IntVector cantor_value(const LimitElement& e);

/// Binary splitting with doubled edges; extends forever.
DirectLimitGroup hybrid_group();

/// Dyadic-valued locally constant function on the surviving cylinders,
/// in coarsest form.
std::vector<Dyadic> hybrid_value(const LimitElement& e);

/// Pascal-pattern group (1's on diagonal and subdiagonal); extends
/// forever.
DirectLimitGroup gicar_group();

/// The square unipotent lower-bidiagonal step matrix of size n+2.
IntMatrix gicar_step_matrix(std::size_t n);

/// Its exact inverse: entries (-1)^{i-j} on and below the diagonal.
IntMatrix gicar_step_inverse(std::size_t n);

/// A_n, the exact product of the padded step inverses; unipotent lower
/// triangular of size n+1.
IntMatrix gicar_basis_change(std::size_t n);

/// Closed form of column r (1-based) of gicar_basis_change(n):
/// sum_{j>=r} (-1)^{j-r} C(n+1-r, j-r) e_j.
IntVector gicar_binomial_column(std::size_t n, std::size_t r);

/// phi_n: coefficient vector alpha at level n to the function with
/// coefficients A_n alpha in the nested basis. Injective.
XminFunction gicar_phi(std::size_t n, const IntVector& alpha);

/// Membership in the level-n positive cone: all n+1 partial binomial
/// sums of beta are nonnegative.
bool gicar_cone_member(std::size_t n, const IntVector& beta);

/// alpha_{k+1} = sum_{l<=k} C(n-l, k-l) beta_{l+1}; the exact section of
/// gicar_phi.
IntVector gicar_recover_alpha(std::size_t n, const IntVector& beta);

} // namespace afdg

#endif

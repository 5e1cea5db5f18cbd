#ifndef HPLIE_ALGEBRA_HPP
#define HPLIE_ALGEBRA_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hplie/matrix.hpp"
#include "hplie/multimap.hpp"
#include "hplie/rational.hpp"

namespace hplie
{

/// One violated identity. `indices` are 1-based basis indices, matching the
/// document format; `defect` is the (nonzero) difference of the two sides.
/// `order` is the power of t for identities of a truncated deformation.
struct Defect
{
  std::string condition;
  std::vector<std::size_t> indices;
  Vector defect;
  std::optional<std::size_t> order;

  friend bool operator==(Defect const &, Defect const &) = default;
};

struct ValidationReport
{
  std::vector<Defect> defects;

  bool ok() const { return defects.empty(); }
  bool has(std::string const &condition) const;
  void append(ValidationReport const &other);
};

/// Thrown when a constructor is handed data that violates the structure's
/// identities. Carries the full report.
class InvalidStructure : public std::runtime_error
{
public:
  InvalidStructure(std::string const &what, ValidationReport report)
    : std::runtime_error(what), report_(std::move(report))
  {}

  ValidationReport const &report() const { return report_; }

private:
  ValidationReport report_;
};

// Condition ids used in reports.
inline constexpr char const *kLeftSymmetry = "left-symmetry";
inline constexpr char const *kMultiplicativity = "multiplicativity";
inline constexpr char const *kSkewSymmetry = "skew-symmetry";
inline constexpr char const *kHomJacobi = "hom-jacobi";
inline constexpr char const *kBracketMultiplicativity = "bracket-multiplicativity";
inline constexpr char const *kRhoBeta = "rho-beta";         // rho(alpha x) beta = beta rho(x)
inline constexpr char const *kRhoBracket = "rho-bracket";   // rho([x,y]) beta = ...
inline constexpr char const *kMuBeta = "mu-beta";           // beta mu(a) = mu(alpha a) beta
inline constexpr char const *kMuCompat = "mu-compat";       // mixed rho/mu identity
inline constexpr char const *kMorphismProduct = "morphism-product";
inline constexpr char const *kMorphismAlpha = "morphism-alpha";

/// Checks both Hom-pre-Lie identities on every basis tuple:
///   (a.b).alpha(c) - alpha(a).(b.c) = (b.a).alpha(c) - alpha(b).(a.c)
///   alpha(a.b) = alpha(a).alpha(b)
/// Throws std::invalid_argument on arity/dimension mismatch.
ValidationReport validate_hom_pre_lie(std::size_t dim, MultiMap const &mult,
                                      MultiMap const &alpha);

/// A multiplicative Hom-pre-Lie algebra (A, ., alpha). The constructor
/// validates and throws InvalidStructure on failure.
class HomPreLieAlgebra
{
public:
  HomPreLieAlgebra(MultiMap mult, MultiMap alpha);

  /// Zero product with the given structure map (always valid).
  static HomPreLieAlgebra zero(Matrix const &alpha);

  std::size_t dim() const { return dim_; }
  MultiMap const &mult() const { return mult_; }
  MultiMap const &alpha() const { return alpha_; }
  Matrix const &alpha_matrix() const { return alpha_matrix_; }

  Matrix alpha_power(std::size_t k) const;

  Vector product(Vector const &x, Vector const &y) const;
  Vector bracket(Vector const &x, Vector const &y) const;
  Vector twist(Vector const &x) const { return alpha_matrix_ * x; }

  /// Matrix of left multiplication by x (L_x b = x.b).
  Matrix left_mult(Vector const &x) const;
  /// Matrix of right multiplication by x (R_x b = b.x).
  Matrix right_mult(Vector const &x) const;

private:
  std::size_t dim_;
  MultiMap mult_;
  MultiMap alpha_;
  Matrix alpha_matrix_;
};

bool is_regular(HomPreLieAlgebra const &a);

/// Skew-symmetry, Hom-Jacobi and multiplicativity of alpha for the bracket.
ValidationReport validate_hom_lie(std::size_t dim, MultiMap const &bracket,
                                  MultiMap const &alpha);

class HomLieAlgebra
{
public:
  HomLieAlgebra(MultiMap bracket, MultiMap alpha);

  std::size_t dim() const { return bracket_.domain_dim(); }
  MultiMap const &bracket() const { return bracket_; }
  MultiMap const &alpha() const { return alpha_; }

private:
  MultiMap bracket_;
  MultiMap alpha_;
};

/// The sub-adjacent Hom-Lie algebra: [x, y] = x.y - y.x with the same alpha.
HomLieAlgebra commutator_algebra(HomPreLieAlgebra const &a);

/// A representation (V, rho, mu, beta). rho[i] and mu[i] are the operators
/// rho(e_i), mu(e_i) on V; both extend linearly in the algebra argument.
class Representation
{
public:
  Representation(HomPreLieAlgebra algebra, std::vector<Matrix> rho, std::vector<Matrix> mu,
                 Matrix beta);

  HomPreLieAlgebra const &algebra() const { return algebra_; }
  std::size_t space_dim() const { return beta_.rows(); }
  std::vector<Matrix> const &rho() const { return rho_; }
  std::vector<Matrix> const &mu() const { return mu_; }
  Matrix const &beta() const { return beta_; }

  Matrix rho_of(Vector const &a) const;
  Matrix mu_of(Vector const &a) const;

private:
  HomPreLieAlgebra algebra_;
  std::vector<Matrix> rho_;
  std::vector<Matrix> mu_;
  Matrix beta_;
};

/// Checks the four representation identities on basis elements. Does not
/// require a constructed Representation so invalid data can be inspected.
ValidationReport validate_representation(HomPreLieAlgebra const &a,
                                         std::vector<Matrix> const &rho,
                                         std::vector<Matrix> const &mu, Matrix const &beta);
ValidationReport validate_representation(Representation const &r);

/// V = A, rho = L, mu = R, beta = alpha.
Representation regular_representation(HomPreLieAlgebra const &a);

/// phi(a.b) = phi(a).phi(b) and phi alpha1 = alpha2 phi on basis tuples.
ValidationReport validate_morphism(HomPreLieAlgebra const &source,
                                   HomPreLieAlgebra const &target, Matrix const &phi);

Vector basis_vector(std::size_t dim, std::size_t i);

} // namespace hplie

#endif

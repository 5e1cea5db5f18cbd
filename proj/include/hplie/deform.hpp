#ifndef HPLIE_DEFORM_HPP
#define HPLIE_DEFORM_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hplie/algebra.hpp"
#include "hplie/cochain.hpp"

namespace hplie
{

/// nu_t = sum nu_i t^i and alpha_t = sum alpha_i t^i truncated at t^N.
/// Construction checks shapes and that the order-0 terms are the base
/// structure; the deformation identities are checked by validate_deformation.
class TruncatedDeformation
{
public:
  TruncatedDeformation(HomPreLieAlgebra base, std::vector<MultiMap> nu,
                       std::vector<MultiMap> alpha);

  /// nu_t = nu, alpha_t = alpha, padded with zeros to order N.
  static TruncatedDeformation trivial(HomPreLieAlgebra base, std::size_t order);
  /// Terms of orders 1..N; order 0 is taken from the base.
  static TruncatedDeformation from_higher_terms(HomPreLieAlgebra base, std::vector<MultiMap> nu,
                                                std::vector<MultiMap> alpha);

  HomPreLieAlgebra const &base() const { return base_; }
  std::size_t order() const { return nu_.size() - 1; }
  std::size_t dim() const { return base_.dim(); }

  MultiMap const &nu(std::size_t i) const { return nu_.at(i); }
  MultiMap const &alpha(std::size_t i) const { return alpha_.at(i); }
  std::vector<MultiMap> const &nu_terms() const { return nu_; }
  std::vector<MultiMap> const &alpha_terms() const { return alpha_; }

  /// The same series truncated at t^m, m <= order.
  TruncatedDeformation truncated(std::size_t m) const;
  /// Append an order N+1 term.
  TruncatedDeformation extended(MultiMap nu_next, MultiMap alpha_next) const;

  bool is_trivial() const;

  friend bool operator==(TruncatedDeformation const &a, TruncatedDeformation const &b)
  {
    return a.nu_ == b.nu_ && a.alpha_ == b.alpha_;
  }

private:
  HomPreLieAlgebra base_;
  std::vector<MultiMap> nu_;
  std::vector<MultiMap> alpha_;
};

/// Psi_t = sum psi_i t^i truncated at t^N, with psi_0 = id.
class FormalIso
{
public:
  explicit FormalIso(std::vector<Matrix> terms);

  static FormalIso identity(std::size_t dim, std::size_t order);
  /// id + phi t^n, truncated at t^order.
  static FormalIso elementary(Matrix const &phi, std::size_t n, std::size_t order);

  std::size_t order() const { return terms_.size() - 1; }
  std::size_t dim() const { return terms_.front().rows(); }
  Matrix const &term(std::size_t i) const { return terms_.at(i); }
  std::vector<Matrix> const &terms() const { return terms_; }

  /// Two-sided inverse mod t^{N+1}.
  FormalIso inverse() const;

  friend bool operator==(FormalIso const &, FormalIso const &) = default;

private:
  std::vector<Matrix> terms_;
};

/// (this o other) mod t^{N+1}; orders must agree.
FormalIso compose(FormalIso const &outer, FormalIso const &inner);

/// The two order-n deformation identities as tensors: the left-symmetry
/// residual (arity 3) and the multiplicativity residual (arity 2). Both
/// are the complete sums over i + j + k = n, so a valid deformation has zero
/// residuals at every order.
AlphaCochain residuals(TruncatedDeformation const &d, std::size_t n);

// Condition ids for deformation reports.
inline constexpr char const *kDeformLeftSymmetry = "deformation-left-symmetry";
inline constexpr char const *kDeformMultiplicativity = "deformation-multiplicativity";

ValidationReport validate_deformation(TruncatedDeformation const &d);

/// First n >= 1 with (nu_n, alpha_n) != 0, paired with that term as a
/// degree-2 cochain.
std::optional<std::pair<std::size_t, AlphaCochain>> infinitesimal(TruncatedDeformation const &d);

/// The degree-3 cochain made of the order N+1 sums restricted to indices
/// <= N. Extension to order N+1 needs d_total(nu_{N+1}, alpha_{N+1}) to equal
/// it. Throws std::logic_error when it is not d_total-closed.
AlphaCochain obstruction(TruncatedDeformation const &d);

/// Canonical particular solution of d_total(x) = obstruction(d) as an order
/// N+1 term pair, or nullopt when the class is nonzero. A returned pair is
/// re-validated.
std::optional<std::pair<MultiMap, MultiMap>> extend(TruncatedDeformation const &d);

/// Psi_t^{-1} o nu_t o (Psi_t x Psi_t) and Psi_t^{-1} o alpha_t o Psi_t, mod
/// t^{N+1}.
TruncatedDeformation transform(TruncatedDeformation const &d, FormalIso const &iso);

/// Whether (nu_1 - nu'_1, alpha_1 - alpha'_1) is a degree-1 coboundary.
bool cohomologous_infinitesimals(TruncatedDeformation const &d1, TruncatedDeformation const &d2);

/// Some phi with d_total((phi, 0)) = c, or nullopt.
std::optional<MultiMap> coboundary_preimage(Representation const &rep, AlphaCochain const &c);

struct RigidityReport
{
  enum class Status
  {
    ReducedToTrivial,
    StuckWithNonCoboundary,
    StepLimit,
  };

  Status status;
  std::size_t steps;
  /// The deformation after the last applied transformation.
  TruncatedDeformation result;
  /// Order and value of the infinitesimal at which the probe stopped.
  std::optional<std::pair<std::size_t, AlphaCochain>> witness;
};

/// Repeatedly removes coboundary infinitesimals: with (nu_n, alpha_n) =
/// -d_total((phi, 0)) the transformation id + phi t^n kills order n.
RigidityReport rigidity_probe(TruncatedDeformation const &d, std::size_t max_steps);

char const *to_string(RigidityReport::Status s);

} // namespace hplie

#endif

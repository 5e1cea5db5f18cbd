#ifndef HPLIE_COCHAIN_HPP
#define HPLIE_COCHAIN_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hplie/algebra.hpp"
#include "hplie/matrix.hpp"
#include "hplie/multimap.hpp"

namespace hplie
{

/// A degree-n element (phi, psi) of the alpha-type complex,
///   C^n = Hom(A^{(x)n}, V) (+) Hom(A^{(x)n-1}, V),  n >= 1.
/// At degree 1 the second summand is the zero space; psi is then an arity-0
/// map that must be identically zero.
class AlphaCochain
{
public:
  AlphaCochain(MultiMap phi, MultiMap psi);

  static AlphaCochain zero(std::size_t degree, std::size_t domain_dim, std::size_t codomain_dim);
  /// Degree-1 cochain (phi, 0).
  static AlphaCochain from_phi(MultiMap phi);

  /// Unpack canonical coordinates (phi block first, psi block after it).
  static AlphaCochain from_coordinates(std::size_t degree, std::size_t domain_dim,
                                       std::size_t codomain_dim, Vector const &coords);

  std::size_t degree() const { return phi_.arity(); }
  MultiMap const &phi() const { return phi_; }
  MultiMap const &psi() const { return psi_; }

  Vector coordinates() const;
  bool is_zero() const { return phi_.is_zero() && psi_.is_zero(); }

  AlphaCochain &operator+=(AlphaCochain const &o);
  AlphaCochain &operator-=(AlphaCochain const &o);
  AlphaCochain &operator*=(Rational const &s);

  friend bool operator==(AlphaCochain const &, AlphaCochain const &) = default;

private:
  MultiMap phi_;
  MultiMap psi_;
};

AlphaCochain operator+(AlphaCochain a, AlphaCochain const &b);
AlphaCochain operator-(AlphaCochain a, AlphaCochain const &b);
AlphaCochain operator*(Rational const &s, AlphaCochain c);

/// dim C^n for an algebra of dimension d and coefficients of dimension e.
std::size_t cochain_dim(std::size_t degree, std::size_t d, std::size_t e);

// The four component maps, evaluated directly on basis tuples.
//
// d_nu_nu:       Hom(A^n, V)   -> Hom(A^{n+1}, V)
// d_alpha_alpha: Hom(A^{n-1}, V) -> Hom(A^n, V)      (degree n >= 2)
// d_nu_alpha:    Hom(A^n, V)   -> Hom(A^n, V)
// d_alpha_nu:    Hom(A^{n-1}, V) -> Hom(A^{n+1}, V)  (degree n >= 2)
//
// The degree of the cochain being differentiated is read off the argument's
// arity (phi has arity n, psi has arity n - 1).
MultiMap d_nu_nu(Representation const &rep, MultiMap const &phi);
MultiMap d_alpha_alpha(Representation const &rep, MultiMap const &psi);
MultiMap d_nu_alpha(Representation const &rep, MultiMap const &phi);
MultiMap d_alpha_nu(Representation const &rep, MultiMap const &psi);

/// (d_nu_nu phi - d_alpha_nu psi, d_nu_alpha phi - d_alpha_alpha psi).
AlphaCochain d_total(Representation const &rep, AlphaCochain const &c);

enum class Component
{
  NuNu,       // phi_n   -> phi_{n+1}
  AlphaAlpha, // psi_{n-1} -> psi_n
  NuAlpha,    // phi_n   -> psi_n
  AlphaNu,    // psi_{n-1} -> phi_{n+1}
};

/// Matrix of one component map at cochain degree n in the canonical bases.
Matrix assemble_component(Representation const &rep, Component which, std::size_t degree);

/// Matrix of the total differential C^n -> C^{n+1}. Columns: the phi block
/// (lexicographic over input indices, then output index) followed by the psi
/// block in the same order; the psi block is absent at n = 1. Rows follow
/// the same convention for C^{n+1}.
Matrix assemble_differential(Representation const &rep, std::size_t degree);

/// Raised when an assembled complex fails d o d = 0.
class SquareZeroFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Describes where D_{n+1} D_n fails to vanish, or nullopt when it is zero.
/// The message names the failing component identity and the first basis
/// cochain that witnesses it.
std::optional<std::string> square_zero_defect(Representation const &rep, std::size_t degree,
                                              Matrix const &d_n, Matrix const &d_next);

/// The complex truncated at `degree_cap`: differentials D_1 .. D_cap are
/// assembled (in parallel, one task per degree) and every consecutive pair is
/// checked for D_{n+1} D_n = 0 at construction. Failure throws
/// SquareZeroFailure.
class AlphaComplex
{
public:
  static constexpr std::size_t kDefaultDegreeCap = 4;

  explicit AlphaComplex(Representation rep, std::size_t degree_cap = kDefaultDegreeCap);

  Representation const &representation() const { return rep_; }
  std::size_t degree_cap() const { return degree_cap_; }

  Matrix const &differential(std::size_t degree) const;
  std::size_t cochain_dim(std::size_t degree) const;

  /// dim ker D_n - rank D_{n-1}; D_0 is the zero map. Requires
  /// 1 <= n <= degree_cap, otherwise std::out_of_range.
  std::size_t cohomology_dim(std::size_t degree) const;

  /// dim of the space of degree-n cocycles.
  std::size_t cocycle_dim(std::size_t degree) const;

private:
  std::size_t rank_of(std::size_t degree) const;

  Representation rep_;
  std::size_t degree_cap_;
  std::vector<Matrix> differentials_; // index n - 1
  mutable std::vector<std::optional<std::size_t>> ranks_;
  mutable std::mutex rank_mutex_;
};

/// Cochains in the classical subcomplex satisfy beta o f = f o alpha^{(x)n}.
class NotInSubcomplex : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

bool in_classical_subcomplex(Representation const &rep, MultiMap const &f);

/// The classical coboundary on the subcomplex; throws NotInSubcomplex for
/// cochains outside it.
MultiMap classical_differential(Representation const &rep, MultiMap const &f);

/// dim { f in Hom(A^n, V) : d_nu_alpha f = 0 }.
std::size_t classical_subcomplex_dim(Representation const &rep, std::size_t degree);

/// Canonical basis of the classical subcomplex at degree n.
std::vector<MultiMap> classical_subcomplex_basis(Representation const &rep, std::size_t degree);

} // namespace hplie

#endif

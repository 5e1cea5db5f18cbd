#ifndef HPLIE_MULTIMAP_HPP
#define HPLIE_MULTIMAP_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hplie/matrix.hpp"
#include "hplie/rational.hpp"

namespace hplie
{

using MultiIndex = std::vector<std::size_t>;

/// Visit every multi-index in [0, dim)^arity in lexicographic order (first
/// position most significant). Arity 0 visits the empty index once.
void for_each_index(std::size_t dim, std::size_t arity,
                    std::function<void(MultiIndex const &)> const &visit);

std::size_t ipow(std::size_t base, std::size_t exp);

/// An n-ary multilinear map from a d-dimensional space to an e-dimensional
/// one, stored by structure constants:
///   m(e_{i1}, ..., e_{in}) = sum_j coeff(i1..in, j) f_j.
/// Coefficients are laid out lexicographically over (i1, ..., in, j), which
/// is also the canonical cochain basis order.
class MultiMap
{
public:
  MultiMap() = default;
  MultiMap(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim);
  MultiMap(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim,
           std::vector<Rational> coeffs);

  static MultiMap identity(std::size_t dim);
  /// Arity-1 map whose column c holds the image of basis vector c.
  static MultiMap from_matrix(Matrix const &m);
  /// Arity-0 maps are the degenerate "absent" component.
  static MultiMap zero(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim)
  { return MultiMap(arity, domain_dim, codomain_dim); }

  std::size_t arity() const { return arity_; }
  std::size_t domain_dim() const { return domain_dim_; }
  std::size_t codomain_dim() const { return codomain_dim_; }
  std::size_t input_count() const { return ipow(domain_dim_, arity_); }
  std::size_t size() const { return coeffs_.size(); }

  std::vector<Rational> const &coeffs() const { return coeffs_; }
  std::vector<Rational> &coeffs() { return coeffs_; }

  std::size_t flat_input(std::span<std::size_t const> idx) const;

  Rational const &at(std::span<std::size_t const> idx, std::size_t j) const
  { return coeffs_[flat_input(idx) * codomain_dim_ + j]; }
  Rational &at(std::span<std::size_t const> idx, std::size_t j)
  { return coeffs_[flat_input(idx) * codomain_dim_ + j]; }

  /// Value on a tuple of basis vectors.
  Vector value(std::span<std::size_t const> idx) const;
  void set_value(std::span<std::size_t const> idx, Vector const &v);

  /// Multilinear evaluation on arbitrary argument vectors.
  Vector apply(std::span<Vector const> args) const;

  /// Matrix of an arity-1 map (columns = images of basis vectors).
  Matrix as_matrix() const;

  bool is_zero() const;

  MultiMap &operator+=(MultiMap const &o);
  MultiMap &operator-=(MultiMap const &o);
  MultiMap &operator*=(Rational const &s);

  friend bool operator==(MultiMap const &a, MultiMap const &b) = default;

private:
  void check_same_shape(MultiMap const &o) const;

  std::size_t arity_ = 0;
  std::size_t domain_dim_ = 0;
  std::size_t codomain_dim_ = 0;
  std::vector<Rational> coeffs_;
};

MultiMap operator+(MultiMap a, MultiMap const &b);
MultiMap operator-(MultiMap a, MultiMap const &b);
MultiMap operator*(Rational const &s, MultiMap m);

/// linear ∘ m
MultiMap compose_after(Matrix const &linear, MultiMap const &m);
/// m ∘ (linear ⊗ ... ⊗ linear)
MultiMap precompose_all(MultiMap const &m, Matrix const &linear);
/// m ∘ (l_1 ⊗ ... ⊗ l_n), one linear map per argument.
MultiMap precompose_each(MultiMap const &m, std::vector<Matrix> const &linear);

/// (x_1..x_p, y_1..y_q) -> outer(left(x_1..x_p), right(y_1..y_q)), outer binary.
MultiMap compose_binary(MultiMap const &outer, MultiMap const &left, MultiMap const &right);

/// (x_1..x_n) -> m(x_{perm[0]}, .., x_{perm[n-1]}).
MultiMap permute_arguments(MultiMap const &m, std::vector<std::size_t> const &perm);

} // namespace hplie

#endif

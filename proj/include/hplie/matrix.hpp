#ifndef HPLIE_MATRIX_HPP
#define HPLIE_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "hplie/rational.hpp"

namespace hplie
{

/// Dense row-major matrix over the rationals.
class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::vector<Vector> const &rows);
  static Matrix from_columns(std::size_t rows, std::vector<Vector> const &cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Rational const &operator()(std::size_t r, std::size_t c) const
  { return entries_[r * cols_ + c]; }

  std::vector<Rational> const &entries() const { return entries_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  bool is_zero() const;
  Matrix transpose() const;

  // Stack `below` under this matrix; column counts must agree.
  Matrix vstack(Matrix const &below) const;
  // Columns of `other` appended to the right; row counts must agree.
  Matrix hstack(Matrix const &other) const;

  friend bool operator==(Matrix const &a, Matrix const &b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix operator*(Matrix const &a, Matrix const &b);
Vector operator*(Matrix const &m, Vector const &v);
Matrix operator+(Matrix const &a, Matrix const &b);
Matrix operator-(Matrix const &a, Matrix const &b);
Matrix operator*(Rational const &s, Matrix const &m);

std::ostream &operator<<(std::ostream &os, Matrix const &m);

/// Reduced row echelon form together with its pivot columns.
struct Echelon
{
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon reduced_echelon(Matrix const &m);

std::size_t rank(Matrix const &m);

/// Basis of ker(m) in canonical form: one vector per free column f, with a 1
/// in position f, zeros in the other free positions, and the pivot entries
/// read off the reduced echelon form. Ordered by increasing free column.
std::vector<Vector> nullspace_basis(Matrix const &m);

/// Some x with m x = b, or nullopt when the system is inconsistent. The
/// returned solution sets every free variable to zero. Throws
/// std::invalid_argument when b.size() != m.rows().
std::optional<Vector> solve_affine(Matrix const &m, Vector const &b);

} // namespace hplie

#endif

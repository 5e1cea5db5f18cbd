#include "hplie/matrix.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hplie
{

Matrix::Matrix(std::size_t rows, std::size_t cols)
  : rows_(rows), cols_(cols), entries_(rows * cols)
{}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
  : rows_(rows), cols_(cols), entries_(std::move(entries))
{
  if (entries_.size() != rows * cols)
    throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) +
                                " != " + std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix Matrix::identity(std::size_t n)
{
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::vector<Vector> const &rows)
{
  if (rows.empty())
    return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_)
      throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<Vector> const &cols)
{
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows)
      throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const
{
  return Vector(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_);
}

Vector Matrix::column(std::size_t c) const
{
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const
{
  for (auto const &x : entries_)
    if (x != 0)
      return false;
  return true;
}

Matrix Matrix::transpose() const
{
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::vstack(Matrix const &below) const
{
  if (rows_ == 0)
    return below;
  if (below.rows_ == 0)
    return *this;
  if (below.cols_ != cols_)
    throw std::invalid_argument("vstack: column mismatch");
  auto e = entries_;
  e.insert(e.end(), below.entries_.begin(), below.entries_.end());
  return Matrix(rows_ + below.rows_, cols_, std::move(e));
}

Matrix Matrix::hstack(Matrix const &other) const
{
  if (other.rows_ != rows_)
    throw std::invalid_argument("hstack: row mismatch");
  Matrix m(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c)
      m(r, cols_ + c) = other(r, c);
  }
  return m;
}

Matrix operator*(Matrix const &a, Matrix const &b)
{
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: inner dimension mismatch");
  Matrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      auto const &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0)
          p(i, j) += aik * b(k, j);
    }
  return p;
}

Vector operator*(Matrix const &m, Vector const &v)
{
  if (m.cols() != v.size())
    throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (m(i, k) != 0 && v[k] != 0)
        r[i] += m(i, k) * v[k];
  return r;
}

Matrix operator+(Matrix const &a, Matrix const &b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: shape mismatch");
  auto e = a.entries();
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] += b.entries()[i];
  return Matrix(a.rows(), a.cols(), std::move(e));
}

Matrix operator-(Matrix const &a, Matrix const &b)
{
  return a + Rational(-1) * b;
}

Matrix operator*(Rational const &s, Matrix const &m)
{
  auto e = m.entries();
  for (auto &x : e)
    x *= s;
  return Matrix(m.rows(), m.cols(), std::move(e));
}

std::ostream &operator<<(std::ostream &os, Matrix const &m)
{
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c)
      os << (c ? " " : "") << to_string(m(r, c));
    os << "]\n";
  }
  return os;
}

namespace
{

// Gauss-Jordan on `m` in place. Pivot choice is the first nonzero entry in
// the column, so the result depends only on the input.
std::vector<std::size_t> eliminate(Matrix &m, bool back_substitute)
{
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0)
      ++p;
    if (p == m.rows())
      continue;
    if (p != row)
      for (std::size_t c = col; c < m.cols(); ++c)
        std::swap(m(p, c), m(row, c));

    Rational const inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (m(row, c) != 0)
        m(row, c) *= inv;

    std::size_t const first = back_substitute ? 0 : row + 1;
    for (std::size_t r = first; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0)
        continue;
      Rational const f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (m(row, c) != 0)
          m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

Echelon reduced_echelon(Matrix const &m)
{
  Echelon e{m, {}};
  e.pivots = eliminate(e.reduced, true);
  return e;
}

std::size_t rank(Matrix const &m)
{
  // Elimination cost scales with rows * cols * rank; work on the short side.
  Matrix w = m.rows() < m.cols() ? m : m.transpose();
  return eliminate(w, false).size();
}

std::vector<Vector> nullspace_basis(Matrix const &m)
{
  auto const e = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots)
    is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve_affine(Matrix const &m, Vector const &b)
{
  if (b.size() != m.rows())
    throw std::invalid_argument("solve_affine: right-hand side has length " +
                                std::to_string(b.size()) + ", expected " +
                                std::to_string(m.rows()));
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto const pivots = eliminate(aug, true);
  if (!pivots.empty() && pivots.back() == m.cols())
    return std::nullopt;

  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug(i, m.cols());
  return x;
}

} // namespace hplie

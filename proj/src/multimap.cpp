#include "hplie/multimap.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hplie
{

std::size_t ipow(std::size_t base, std::size_t exp)
{
  std::size_t r = 1;
  while (exp--)
    r *= base;
  return r;
}

void for_each_index(std::size_t dim, std::size_t arity,
                    std::function<void(MultiIndex const &)> const &visit)
{
  MultiIndex idx(arity, 0);
  if (arity > 0 && dim == 0)
    return;
  for (;;) {
    visit(idx);
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < dim)
        break;
      idx[pos] = 0;
      if (pos == 0)
        return;
    }
    if (arity == 0)
      return;
  }
}

MultiMap::MultiMap(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim)
  : arity_(arity), domain_dim_(domain_dim), codomain_dim_(codomain_dim),
    coeffs_(ipow(domain_dim, arity) * codomain_dim)
{}

MultiMap::MultiMap(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim,
                   std::vector<Rational> coeffs)
  : arity_(arity), domain_dim_(domain_dim), codomain_dim_(codomain_dim),
    coeffs_(std::move(coeffs))
{
  if (coeffs_.size() != ipow(domain_dim, arity) * codomain_dim)
    throw std::invalid_argument("multimap: expected " +
                                std::to_string(ipow(domain_dim, arity) * codomain_dim) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
}

MultiMap MultiMap::identity(std::size_t dim)
{
  MultiMap m(1, dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    m.coeffs_[i * dim + i] = 1;
  return m;
}

MultiMap MultiMap::from_matrix(Matrix const &mat)
{
  MultiMap m(1, mat.cols(), mat.rows());
  for (std::size_t c = 0; c < mat.cols(); ++c)
    for (std::size_t r = 0; r < mat.rows(); ++r)
      m.coeffs_[c * mat.rows() + r] = mat(r, c);
  return m;
}

std::size_t MultiMap::flat_input(std::span<std::size_t const> idx) const
{
  if (idx.size() != arity_)
    throw std::invalid_argument("multimap: index of length " + std::to_string(idx.size()) +
                                " for arity " + std::to_string(arity_));
  std::size_t f = 0;
  for (auto i : idx) {
    if (i >= domain_dim_)
      throw std::out_of_range("multimap: basis index out of range");
    f = f * domain_dim_ + i;
  }
  return f;
}

Vector MultiMap::value(std::span<std::size_t const> idx) const
{
  auto const base = flat_input(idx) * codomain_dim_;
  return Vector(coeffs_.begin() + base, coeffs_.begin() + base + codomain_dim_);
}

void MultiMap::set_value(std::span<std::size_t const> idx, Vector const &v)
{
  if (v.size() != codomain_dim_)
    throw std::invalid_argument("multimap: value has wrong dimension");
  auto const base = flat_input(idx) * codomain_dim_;
  for (std::size_t j = 0; j < codomain_dim_; ++j)
    coeffs_[base + j] = v[j];
}

namespace
{

void accumulate(MultiMap const &m, std::span<Vector const> args, std::size_t pos,
                std::size_t flat, Rational const &weight, Vector &out)
{
  if (pos == args.size()) {
    auto const base = flat * m.codomain_dim();
    for (std::size_t j = 0; j < m.codomain_dim(); ++j)
      if (m.coeffs()[base + j] != 0)
        out[j] += weight * m.coeffs()[base + j];
    return;
  }
  auto const &v = args[pos];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      accumulate(m, args, pos + 1, flat * m.domain_dim() + i, weight * v[i], out);
}

} // namespace

Vector MultiMap::apply(std::span<Vector const> args) const
{
  if (args.size() != arity_)
    throw std::invalid_argument("multimap: " + std::to_string(args.size()) +
                                " arguments for arity " + std::to_string(arity_));
  for (auto const &a : args)
    if (a.size() != domain_dim_)
      throw std::invalid_argument("multimap: argument has wrong dimension");
  Vector out(codomain_dim_);
  accumulate(*this, args, 0, 0, Rational(1), out);
  return out;
}

Matrix MultiMap::as_matrix() const
{
  if (arity_ != 1)
    throw std::invalid_argument("multimap: as_matrix needs arity 1");
  Matrix m(codomain_dim_, domain_dim_);
  for (std::size_t c = 0; c < domain_dim_; ++c)
    for (std::size_t r = 0; r < codomain_dim_; ++r)
      m(r, c) = coeffs_[c * codomain_dim_ + r];
  return m;
}

bool MultiMap::is_zero() const
{
  for (auto const &x : coeffs_)
    if (x != 0)
      return false;
  return true;
}

void MultiMap::check_same_shape(MultiMap const &o) const
{
  if (arity_ != o.arity_ || domain_dim_ != o.domain_dim_ || codomain_dim_ != o.codomain_dim_)
    throw std::invalid_argument("multimap: shape mismatch");
}

MultiMap &MultiMap::operator+=(MultiMap const &o)
{
  check_same_shape(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  return *this;
}

MultiMap &MultiMap::operator-=(MultiMap const &o)
{
  check_same_shape(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  return *this;
}

MultiMap &MultiMap::operator*=(Rational const &s)
{
  for (auto &x : coeffs_)
    x *= s;
  return *this;
}

MultiMap operator+(MultiMap a, MultiMap const &b) { return a += b; }
MultiMap operator-(MultiMap a, MultiMap const &b) { return a -= b; }
MultiMap operator*(Rational const &s, MultiMap m) { return m *= s; }

MultiMap compose_after(Matrix const &linear, MultiMap const &m)
{
  if (linear.cols() != m.codomain_dim())
    throw std::invalid_argument("compose_after: dimension mismatch");
  MultiMap r(m.arity(), m.domain_dim(), linear.rows());
  for_each_index(m.domain_dim(), m.arity(), [&](MultiIndex const &idx) {
    r.set_value(idx, linear * m.value(idx));
  });
  return r;
}

MultiMap precompose_all(MultiMap const &m, Matrix const &linear)
{
  if (linear.rows() != m.domain_dim())
    throw std::invalid_argument("precompose_all: dimension mismatch");
  MultiMap r(m.arity(), linear.cols(), m.codomain_dim());
  std::vector<Vector> args(m.arity());
  for_each_index(linear.cols(), m.arity(), [&](MultiIndex const &idx) {
    for (std::size_t k = 0; k < idx.size(); ++k)
      args[k] = linear.column(idx[k]);
    r.set_value(idx, m.apply(args));
  });
  return r;
}

MultiMap precompose_each(MultiMap const &m, std::vector<Matrix> const &linear)
{
  if (linear.size() != m.arity())
    throw std::invalid_argument("precompose_each: one map per argument required");
  if (linear.empty())
    return m;
  auto const d = linear.front().cols();
  for (auto const &l : linear)
    if (l.rows() != m.domain_dim() || l.cols() != d)
      throw std::invalid_argument("precompose_each: dimension mismatch");
  MultiMap r(m.arity(), d, m.codomain_dim());
  std::vector<Vector> args(m.arity());
  for_each_index(d, m.arity(), [&](MultiIndex const &idx) {
    for (std::size_t k = 0; k < idx.size(); ++k)
      args[k] = linear[k].column(idx[k]);
    r.set_value(idx, m.apply(args));
  });
  return r;
}

MultiMap compose_binary(MultiMap const &outer, MultiMap const &left, MultiMap const &right)
{
  if (outer.arity() != 2 || left.codomain_dim() != outer.domain_dim() ||
      right.codomain_dim() != outer.domain_dim() || left.domain_dim() != right.domain_dim())
    throw std::invalid_argument("compose_binary: shape mismatch");
  auto const p = left.arity();
  MultiMap r(p + right.arity(), left.domain_dim(), outer.codomain_dim());
  std::vector<Vector> args(2);
  for_each_index(left.domain_dim(), r.arity(), [&](MultiIndex const &idx) {
    std::span<std::size_t const> const all(idx);
    args[0] = left.value(all.first(p));
    args[1] = right.value(all.subspan(p));
    r.set_value(idx, outer.apply(args));
  });
  return r;
}

MultiMap permute_arguments(MultiMap const &m, std::vector<std::size_t> const &perm)
{
  if (perm.size() != m.arity())
    throw std::invalid_argument("permute_arguments: permutation length mismatch");
  MultiMap r(m.arity(), m.domain_dim(), m.codomain_dim());
  MultiIndex src(m.arity());
  for_each_index(m.domain_dim(), m.arity(), [&](MultiIndex const &idx) {
    for (std::size_t k = 0; k < perm.size(); ++k)
      src[k] = idx.at(perm[k]);
    r.set_value(idx, m.value(src));
  });
  return r;
}

} // namespace hplie

#include "hplie/algebra.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

namespace hplie
{

bool ValidationReport::has(std::string const &condition) const
{
  return std::any_of(defects.begin(), defects.end(),
                     [&](Defect const &d) { return d.condition == condition; });
}

void ValidationReport::append(ValidationReport const &other)
{
  defects.insert(defects.end(), other.defects.begin(), other.defects.end());
}

Vector basis_vector(std::size_t dim, std::size_t i)
{
  Vector v(dim);
  v.at(i) = 1;
  return v;
}

namespace
{

void check_bilinear(std::size_t dim, MultiMap const &m, char const *what)
{
  if (m.arity() != 2 || m.domain_dim() != dim || m.codomain_dim() != dim)
    throw std::invalid_argument(std::string(what) + " must be bilinear on a " +
                                std::to_string(dim) + "-dimensional space");
}

void check_linear(std::size_t dim, MultiMap const &m, char const *what)
{
  if (m.arity() != 1 || m.domain_dim() != dim || m.codomain_dim() != dim)
    throw std::invalid_argument(std::string(what) + " must be an endomorphism of a " +
                                std::to_string(dim) + "-dimensional space");
}

Vector eval2(MultiMap const &m, Vector const &x, Vector const &y)
{
  std::array<Vector, 2> args{x, y};
  return m.apply(args);
}

Vector eval1(MultiMap const &m, Vector const &x)
{
  std::array<Vector, 1> args{x};
  return m.apply(args);
}

void record(ValidationReport &report, char const *condition,
            std::vector<std::size_t> zero_based, Vector defect)
{
  if (is_zero(defect))
    return;
  for (auto &i : zero_based)
    ++i;
  report.defects.push_back({condition, std::move(zero_based), std::move(defect), std::nullopt});
}

// Operator identity lhs == rhs on V, reported per basis vector of V.
void record_operator(ValidationReport &report, char const *condition,
                     std::vector<std::size_t> const &indices, Matrix const &lhs,
                     Matrix const &rhs)
{
  Matrix const diff = lhs - rhs;
  for (std::size_t v = 0; v < diff.cols(); ++v) {
    auto idx = indices;
    idx.push_back(v);
    record(report, condition, std::move(idx), diff.column(v));
  }
}

Matrix combine(std::vector<Matrix> const &ops, Vector const &a, std::size_t space_dim)
{
  Matrix m(space_dim, space_dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      m = m + a[i] * ops[i];
  return m;
}

} // namespace

ValidationReport validate_hom_pre_lie(std::size_t dim, MultiMap const &mult,
                                      MultiMap const &alpha)
{
  check_bilinear(dim, mult, "multiplication");
  check_linear(dim, alpha, "structure map");

  ValidationReport report;
  auto prod = [&](Vector const &x, Vector const &y) { return eval2(mult, x, y); };
  auto tw = [&](Vector const &x) { return eval1(alpha, x); };

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        auto const a = basis_vector(dim, i);
        auto const b = basis_vector(dim, j);
        auto const c = basis_vector(dim, k);
        auto const lhs = prod(prod(a, b), tw(c)) - prod(tw(a), prod(b, c));
        auto const rhs = prod(prod(b, a), tw(c)) - prod(tw(b), prod(a, c));
        record(report, kLeftSymmetry, {i, j, k}, lhs - rhs);
      }

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto const a = basis_vector(dim, i);
      auto const b = basis_vector(dim, j);
      record(report, kMultiplicativity, {i, j}, tw(prod(a, b)) - prod(tw(a), tw(b)));
    }
  return report;
}

HomPreLieAlgebra::HomPreLieAlgebra(MultiMap mult, MultiMap alpha)
  : dim_(alpha.domain_dim()), mult_(std::move(mult)), alpha_(std::move(alpha))
{
  auto report = validate_hom_pre_lie(dim_, mult_, alpha_);
  if (!report.ok())
    throw InvalidStructure("not a multiplicative Hom-pre-Lie algebra", std::move(report));
  alpha_matrix_ = alpha_.as_matrix();
}

HomPreLieAlgebra HomPreLieAlgebra::zero(Matrix const &alpha)
{
  auto const d = alpha.cols();
  return HomPreLieAlgebra(MultiMap(2, d, d), MultiMap::from_matrix(alpha));
}

Matrix HomPreLieAlgebra::alpha_power(std::size_t k) const
{
  Matrix p = Matrix::identity(dim_);
  for (std::size_t i = 0; i < k; ++i)
    p = alpha_matrix_ * p;
  return p;
}

Vector HomPreLieAlgebra::product(Vector const &x, Vector const &y) const
{
  return eval2(mult_, x, y);
}

Vector HomPreLieAlgebra::bracket(Vector const &x, Vector const &y) const
{
  return product(x, y) - product(y, x);
}

Matrix HomPreLieAlgebra::left_mult(Vector const &x) const
{
  Matrix m(dim_, dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    auto const col = product(x, basis_vector(dim_, c));
    for (std::size_t r = 0; r < dim_; ++r)
      m(r, c) = col[r];
  }
  return m;
}

Matrix HomPreLieAlgebra::right_mult(Vector const &x) const
{
  Matrix m(dim_, dim_);
  for (std::size_t c = 0; c < dim_; ++c) {
    auto const col = product(basis_vector(dim_, c), x);
    for (std::size_t r = 0; r < dim_; ++r)
      m(r, c) = col[r];
  }
  return m;
}

bool is_regular(HomPreLieAlgebra const &a)
{
  return rank(a.alpha_matrix()) == a.dim();
}

ValidationReport validate_hom_lie(std::size_t dim, MultiMap const &bracket,
                                  MultiMap const &alpha)
{
  check_bilinear(dim, bracket, "bracket");
  check_linear(dim, alpha, "structure map");

  ValidationReport report;
  auto br = [&](Vector const &x, Vector const &y) { return eval2(bracket, x, y); };
  auto tw = [&](Vector const &x) { return eval1(alpha, x); };

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto const x = basis_vector(dim, i);
      auto const y = basis_vector(dim, j);
      record(report, kSkewSymmetry, {i, j}, br(x, y) + br(y, x));
      record(report, kBracketMultiplicativity, {i, j}, tw(br(x, y)) - br(tw(x), tw(y)));
    }

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        auto const x = basis_vector(dim, i);
        auto const y = basis_vector(dim, j);
        auto const z = basis_vector(dim, k);
        auto const jac = br(tw(x), br(y, z)) + br(tw(y), br(z, x)) + br(tw(z), br(x, y));
        record(report, kHomJacobi, {i, j, k}, jac);
      }
  return report;
}

HomLieAlgebra::HomLieAlgebra(MultiMap bracket, MultiMap alpha)
  : bracket_(std::move(bracket)), alpha_(std::move(alpha))
{
  auto report = validate_hom_lie(alpha_.domain_dim(), bracket_, alpha_);
  if (!report.ok())
    throw InvalidStructure("not a Hom-Lie algebra", std::move(report));
}

HomLieAlgebra commutator_algebra(HomPreLieAlgebra const &a)
{
  auto const d = a.dim();
  MultiMap bracket(2, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        std::array<std::size_t, 2> const ij{i, j};
        std::array<std::size_t, 2> const ji{j, i};
        bracket.at(ij, k) = a.mult().at(ij, k) - a.mult().at(ji, k);
      }
  return HomLieAlgebra(std::move(bracket), a.alpha());
}

Representation::Representation(HomPreLieAlgebra algebra, std::vector<Matrix> rho,
                               std::vector<Matrix> mu, Matrix beta)
  : algebra_(std::move(algebra)), rho_(std::move(rho)), mu_(std::move(mu)),
    beta_(std::move(beta))
{
  auto report = validate_representation(algebra_, rho_, mu_, beta_);
  if (!report.ok())
    throw InvalidStructure("not a representation", std::move(report));
}

Matrix Representation::rho_of(Vector const &a) const
{
  return combine(rho_, a, space_dim());
}

Matrix Representation::mu_of(Vector const &a) const
{
  return combine(mu_, a, space_dim());
}

ValidationReport validate_representation(HomPreLieAlgebra const &a,
                                         std::vector<Matrix> const &rho,
                                         std::vector<Matrix> const &mu, Matrix const &beta)
{
  auto const d = a.dim();
  auto const e = beta.rows();
  if (beta.cols() != e || rho.size() != d || mu.size() != d)
    throw std::invalid_argument("representation: operator count or shape mismatch");
  for (auto const *ops : {&rho, &mu})
    for (auto const &m : *ops)
      if (m.rows() != e || m.cols() != e)
        throw std::invalid_argument("representation: operator has wrong shape");

  auto r = [&](Vector const &x) { return combine(rho, x, e); };
  auto m = [&](Vector const &x) { return combine(mu, x, e); };

  ValidationReport report;
  for (std::size_t i = 0; i < d; ++i) {
    auto const x = basis_vector(d, i);
    record_operator(report, kRhoBeta, {i}, r(a.twist(x)) * beta, beta * r(x));
    record_operator(report, kMuBeta, {i}, beta * m(x), m(a.twist(x)) * beta);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto const x = basis_vector(d, i);
      auto const y = basis_vector(d, j);
      record_operator(report, kRhoBracket, {i, j}, r(a.bracket(x, y)) * beta,
                      r(a.twist(x)) * r(y) - r(a.twist(y)) * r(x));
      // mu(alpha b) mu(a) - mu(a.b) beta = mu(alpha b) rho(a) - rho(alpha a) mu(b)
      record_operator(report, kMuCompat, {i, j},
                      m(a.twist(y)) * m(x) - m(a.product(x, y)) * beta,
                      m(a.twist(y)) * r(x) - r(a.twist(x)) * m(y));
    }
  return report;
}

ValidationReport validate_representation(Representation const &r)
{
  return validate_representation(r.algebra(), r.rho(), r.mu(), r.beta());
}

Representation regular_representation(HomPreLieAlgebra const &a)
{
  std::vector<Matrix> rho, mu;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    rho.push_back(a.left_mult(basis_vector(a.dim(), i)));
    mu.push_back(a.right_mult(basis_vector(a.dim(), i)));
  }
  return Representation(a, std::move(rho), std::move(mu), a.alpha_matrix());
}

ValidationReport validate_morphism(HomPreLieAlgebra const &source,
                                   HomPreLieAlgebra const &target, Matrix const &phi)
{
  if (phi.cols() != source.dim() || phi.rows() != target.dim())
    throw std::invalid_argument("morphism: matrix shape does not match the algebras");
  ValidationReport report;
  for (std::size_t i = 0; i < source.dim(); ++i) {
    auto const x = basis_vector(source.dim(), i);
    record(report, kMorphismAlpha, {i},
           phi * source.twist(x) - target.twist(phi * x));
    for (std::size_t j = 0; j < source.dim(); ++j) {
      auto const y = basis_vector(source.dim(), j);
      record(report, kMorphismProduct, {i, j},
             phi * source.product(x, y) - target.product(phi * x, phi * y));
    }
  }
  return report;
}

} // namespace hplie

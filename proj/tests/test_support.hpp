// Fixture builders and seeded generators shared by the test binaries.
#ifndef HPLIE_TEST_SUPPORT_HPP
#define HPLIE_TEST_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "hplie/algebra.hpp"
#include "hplie/cochain.hpp"
#include "hplie/deform.hpp"
#include "hplie/equivariant.hpp"

namespace fixture
{

using namespace hplie;

inline MultiMap mult_from(std::size_t d,
                          std::vector<std::tuple<std::size_t, std::size_t, std::size_t, int>> const
                              &entries)
{
  MultiMap m(2, d, d);
  for (auto const &[i, j, k, v] : entries) {
    std::array<std::size_t, 2> const ij{i - 1, j - 1};
    m.at(ij, k - 1) = v;
  }
  return m;
}

inline Matrix cols(std::vector<Vector> const &images)
{
  return Matrix::from_columns(images.empty() ? 0 : images[0].size(), images);
}

// The two-dimensional example: a2.a1 = a1, a2.a2 = a1 + a2, alpha(a1) = a1,
// alpha(a2) = a1 + a2.
inline MultiMap golden_mult() { return mult_from(2, {{2, 1, 1, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}}); }
inline Matrix golden_alpha() { return cols({{1, 0}, {1, 1}}); }
inline HomPreLieAlgebra golden()
{
  return HomPreLieAlgebra(golden_mult(), MultiMap::from_matrix(golden_alpha()));
}

inline HomPreLieAlgebra zero_algebra(std::size_t d) { return HomPreLieAlgebra::zero(Matrix::identity(d)); }

// Yau twist x.y = alpha(x o y) of an associative (hence pre-Lie) product o
// by an algebra endomorphism alpha.
inline HomPreLieAlgebra yau_twist(MultiMap const &assoc, Matrix const &alpha)
{
  return HomPreLieAlgebra(compose_after(alpha, assoc), MultiMap::from_matrix(alpha));
}

// Upper-triangular 2x2 matrices, basis E11, E12, E22.
inline MultiMap upper_triangular()
{
  return mult_from(3, {{1, 1, 1, 1}, {1, 2, 2, 1}, {2, 3, 2, 1}, {3, 3, 3, 1}});
}

inline Matrix diag(std::vector<int> const &d)
{
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    m(i, i) = d[i];
  return m;
}

// The ground field as a one-dimensional algebra; its second cohomology vanishes.
inline HomPreLieAlgebra line()
{
  return HomPreLieAlgebra(mult_from(1, {{1, 1, 1, 1}}), MultiMap::identity(1));
}

struct Named
{
  std::string name;
  HomPreLieAlgebra algebra;
};

// Algebras on which every structural property is checked.
inline std::vector<Named> corpus()
{
  std::vector<Named> out;
  out.push_back({"golden", golden()});
  for (std::size_t d = 1; d <= 3; ++d)
    out.push_back({"zero-" + std::to_string(d), zero_algebra(d)});
  out.push_back({"zero-2-golden-alpha", HomPreLieAlgebra::zero(golden_alpha())});
  out.push_back({"upper-triangular", yau_twist(upper_triangular(), Matrix::identity(3))});
  out.push_back({"upper-triangular-scaled", yau_twist(upper_triangular(), diag({1, 2, 1}))});
  out.push_back({"upper-triangular-projected", yau_twist(upper_triangular(), diag({1, 0, 1}))});
  out.push_back({"nilpotent-scaled", yau_twist(mult_from(2, {{1, 1, 2, 1}}), diag({2, 4}))});
  out.push_back({"line", line()});
  out.push_back({"line-collapsed", HomPreLieAlgebra(line().mult(), MultiMap(1, 1, 1))});
  out.push_back({"line-squared",
                 HomPreLieAlgebra(mult_from(2, {{1, 1, 1, 1}, {2, 2, 2, 1}}), MultiMap::identity(2))});
  return out;
}

// nu_t = (1 + t)^2 nu: both identities are homogeneous in nu.
inline TruncatedDeformation scaled(HomPreLieAlgebra const &a, std::size_t order)
{
  std::vector<MultiMap> nu, alpha;
  auto const d = a.dim();
  for (std::size_t i = 1; i <= order; ++i) {
    nu.push_back(i == 1 ? Rational(2) * a.mult() : i == 2 ? a.mult() : MultiMap(2, d, d));
    alpha.emplace_back(1, d, d);
  }
  return TruncatedDeformation::from_higher_terms(a, std::move(nu), std::move(alpha));
}

// Yau twists of the upper-triangular matrices by the automorphisms
// E12 -> (1 + t)^2 E12, a polynomial family in t.
inline TruncatedDeformation yau_family(std::size_t order)
{
  auto const assoc = upper_triangular();
  std::vector<Matrix> a{Matrix::identity(3), diag({0, 2, 0}), diag({0, 1, 0})};
  while (a.size() <= order)
    a.emplace_back(3, 3);
  std::vector<MultiMap> nu, alpha;
  for (std::size_t i = 0; i <= order; ++i) {
    nu.push_back(compose_after(a[i], assoc));
    alpha.push_back(MultiMap::from_matrix(a[i]));
  }
  return TruncatedDeformation(yau_twist(assoc, Matrix::identity(3)), std::move(nu),
                              std::move(alpha));
}

// The zero algebra on a line deformed to the ground field: nu_t = t nu_1.
// Its infinitesimal is not a coboundary since every differential vanishes.
inline TruncatedDeformation line_from_zero(std::size_t order)
{
  std::vector<MultiMap> nu{mult_from(1, {{1, 1, 1, 1}})}, alpha{MultiMap(1, 1, 1)};
  for (std::size_t i = 2; i <= order; ++i) {
    nu.emplace_back(2, 1, 1);
    alpha.emplace_back(1, 1, 1);
  }
  return TruncatedDeformation::from_higher_terms(zero_algebra(1), std::move(nu), std::move(alpha));
}

// Independent rank oracle: fraction-free integer elimination after clearing
// denominators row by row, unlike the library's Gauss-Jordan path.
inline std::size_t bareiss_rank(Matrix const &m)
{
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      l = lcm(l, m(r, c).get_den());
    for (std::size_t c = 0; c < m.cols(); ++c)
      a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][c] == 0)
      ++p;
    if (p == m.rows())
      continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      for (std::size_t k = c + 1; k < m.cols(); ++k)
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Permutations of {0, 1, 2} in lexicographic order; the product is composition.
inline std::vector<std::array<std::size_t, 3>> permutations3()
{
  std::array<std::size_t, 3> p{0, 1, 2};
  std::vector<std::array<std::size_t, 3>> out;
  do
    out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline FiniteGroup symmetric3()
{
  auto const perms = permutations3();
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<std::size_t, 3> c{};
      for (std::size_t i = 0; i < 3; ++i)
        c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(std::move(t));
}

// K x K x K with idempotent basis vectors, permuted by S3.
inline GroupAction permuted_cube()
{
  auto const a = HomPreLieAlgebra(mult_from(3, {{1, 1, 1, 1}, {2, 2, 2, 1}, {3, 3, 3, 1}}),
                                  MultiMap::identity(3));
  std::vector<Matrix> maps;
  for (auto const &p : permutations3()) {
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      m(p[i], i) = 1;
    maps.push_back(m);
  }
  return GroupAction(symmetric3(), a, std::move(maps));
}

inline GroupAction involution(HomPreLieAlgebra a, Matrix const &m)
{
  return GroupAction(FiniteGroup::cyclic(2), std::move(a), {Matrix::identity(m.rows()), m});
}

// Z/2 acting by minus the identity on the zero product (parity fixture).
inline GroupAction negation(std::size_t d) { return involution(zero_algebra(d), Rational(-1) * Matrix::identity(d)); }

struct NamedAction
{
  std::string name;
  GroupAction action;
};

// Actions on which the fixed-point gates and complex properties are checked.
inline std::vector<NamedAction> action_corpus()
{
  std::vector<NamedAction> out;
  out.push_back({"trivial/golden", GroupAction::identity(FiniteGroup::trivial(), golden())});
  out.push_back({"z2-identity/golden", GroupAction::identity(FiniteGroup::cyclic(2), golden())});
  out.push_back({"z2-negation/zero-2", negation(2)});
  out.push_back({"z2-negation/zero-2-golden-alpha",
                 involution(HomPreLieAlgebra::zero(golden_alpha()), Rational(-1) * Matrix::identity(2))});
  out.push_back({"z2-swap/line-squared",
                 involution(HomPreLieAlgebra(mult_from(2, {{1, 1, 1, 1}, {2, 2, 2, 1}}), MultiMap::identity(2)),
                            cols({{0, 1}, {1, 0}}))});
  out.push_back({"z2-conjugation/upper-triangular-scaled",
                 involution(yau_twist(upper_triangular(), diag({1, 2, 1})), diag({1, -1, 1}))});
  out.push_back({"z4-rotation/zero-2",
                 [] {
                   auto const r = cols({{0, 1}, {-1, 0}});
                   return GroupAction(FiniteGroup::cyclic(4), zero_algebra(2),
                                      {Matrix::identity(2), r, r * r, r * r * r});
                 }()});
  out.push_back({"s3-permutation/cube", permuted_cube()});
  return out;
}

// Group average of m; it commutes with the action.
inline Matrix reynolds(GroupAction const &act, Matrix const &m)
{
  auto const &g = act.group();
  Matrix s(m.rows(), m.cols());
  for (std::size_t x = 0; x < g.order(); ++x)
    s = s + act.map(x) * m * act.map(g.inverse(x));
  return Rational(1, static_cast<long>(g.order())) * s;
}

class Generator
{
public:
  explicit Generator(unsigned seed = 20240521u) : rng_(seed) {}

  Rational rational()
  {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    int const p = num(rng_);
    int const q_den = den(rng_);
    Rational q(p, q_den);
    q.canonicalize();
    return q;
  }

  MultiMap multimap(std::size_t arity, std::size_t d, std::size_t e)
  {
    MultiMap m(arity, d, e);
    for (auto &x : m.coeffs())
      x = rational();
    return m;
  }

  AlphaCochain cochain(std::size_t degree, std::size_t d, std::size_t e)
  {
    auto phi = multimap(degree, d, e);
    auto psi = degree == 1 ? MultiMap(0, d, e) : multimap(degree - 1, d, e);
    return AlphaCochain(std::move(phi), std::move(psi));
  }

  Matrix matrix(std::size_t r, std::size_t c)
  {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = rational();
    return m;
  }

  FormalIso iso(std::size_t dim, std::size_t order)
  {
    std::vector<Matrix> t{Matrix::identity(dim)};
    for (std::size_t i = 1; i <= order; ++i)
      t.push_back(matrix(dim, dim));
    return FormalIso(std::move(t));
  }

  // id + sum of averaged random terms: an iso commuting with the action.
  FormalIso equivariant_iso(GroupAction const &act, std::size_t order)
  {
    auto const d = act.algebra().dim();
    std::vector<Matrix> t{Matrix::identity(d)};
    for (std::size_t i = 1; i <= order; ++i)
      t.push_back(reynolds(act, matrix(d, d)));
    return FormalIso(std::move(t));
  }

  std::mt19937 &engine() { return rng_; }

private:
  std::mt19937 rng_;
};

struct NamedDeformation
{
  std::string name;
  TruncatedDeformation deformation;
};

// Valid deformations, all of order 2.
inline std::vector<NamedDeformation> deformation_corpus()
{
  Generator g(31);
  std::vector<NamedDeformation> out;
  for (auto const &[name, a] : corpus()) {
    out.push_back({name + "/scaled", scaled(a, 2)});
    out.push_back({name + "/pushforward",
                   transform(TruncatedDeformation::trivial(a, 2), g.iso(a.dim(), 2))});
  }
  out.push_back({"upper-triangular/yau-family", yau_family(2)});
  out.push_back({"zero-1/line", line_from_zero(2)});
  return out;
}

} // namespace fixture

#endif

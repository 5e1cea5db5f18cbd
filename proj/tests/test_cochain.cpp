#include <doctest.h>

#include "hplie/cochain.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace hplie;
using fixture::Oracle;
using fixture::oracle_differential;

namespace
{

Vector apply(Matrix const &m, AlphaCochain const &c) { return m * c.coordinates(); }

} // namespace

TEST_CASE("cochain shape invariants")
{
  CHECK_NOTHROW(AlphaCochain(MultiMap(2, 2, 2), MultiMap(1, 2, 2)));
  CHECK_THROWS_AS(AlphaCochain(MultiMap(2, 2, 2), MultiMap(2, 2, 2)), std::invalid_argument);
  MultiMap nonzero(0, 2, 2);
  nonzero.coeffs()[0] = 1;
  CHECK_THROWS_AS(AlphaCochain(MultiMap(1, 2, 2), nonzero), std::invalid_argument);
  CHECK(cochain_dim(1, 2, 2) == 4);
  CHECK(cochain_dim(2, 2, 2) == 12);
  CHECK(cochain_dim(3, 3, 2) == 54 + 18);

  fixture::Generator g;
  auto const c = g.cochain(3, 2, 2);
  CHECK(AlphaCochain::from_coordinates(3, 2, 2, c.coordinates()) == c);
}

TEST_CASE("d_nu_nu examples")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  CHECK(d_nu_nu(rep, MultiMap(2, 2, 2)).is_zero());
  CHECK(d_nu_nu(rep, MultiMap::identity(2)) == a.mult());

  fixture::Generator g;
  auto const z = regular_representation(fixture::zero_algebra(2));
  CHECK(d_nu_nu(z, g.multimap(2, 2, 2)).is_zero());
  CHECK_THROWS_AS(d_nu_nu(rep, MultiMap(0, 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(d_nu_nu(rep, MultiMap(1, 3, 2)), std::invalid_argument);
}

TEST_CASE("d_nu_alpha examples")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  CHECK(d_nu_alpha(rep, MultiMap::identity(2)).is_zero());
  CHECK(d_nu_alpha(rep, a.alpha()).is_zero());
  CHECK(d_nu_alpha(rep, a.mult()).is_zero());
}

TEST_CASE("d_alpha_alpha and d_alpha_nu examples")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  CHECK(d_alpha_alpha(rep, MultiMap(1, 2, 2)).is_zero());
  CHECK(d_alpha_nu(rep, MultiMap(2, 2, 2)).is_zero());

  fixture::Generator g;
  auto const z = regular_representation(fixture::zero_algebra(3));
  CHECK(d_alpha_alpha(z, g.multimap(2, 3, 3)).is_zero());
  CHECK(d_alpha_nu(z, g.multimap(2, 3, 3)).is_zero());

  Oracle const o{a};
  auto const id = MultiMap::identity(2);
  CHECK(d_alpha_alpha(rep, id) ==
        fixture::tabulate(2, 2, [&](auto const &v) { return o.aa2(id, v[0], v[1]); }));
  CHECK(d_alpha_nu(rep, id) ==
        fixture::tabulate(3, 2, [&](auto const &v) { return o.an2(id, v[0], v[1], v[2]); }));

  CHECK_THROWS_AS(d_alpha_alpha(rep, MultiMap(0, 2, 2)), std::invalid_argument);
}

TEST_CASE("library evaluators match the closed-form oracle on random cochains")
{
  fixture::Generator g(11);
  for (auto const &[name, a] : fixture::corpus()) {
    CAPTURE(name);
    auto const rep = regular_representation(a);
    Oracle const o{a};
    auto const d = a.dim();
    for (int t = 0; t < 10; ++t) {
      auto const f1 = g.multimap(1, d, d);
      auto const f2 = g.multimap(2, d, d);
      CHECK(d_nu_nu(rep, f1) == fixture::tabulate(2, d, [&](auto const &v) { return o.nn1(f1, v[0], v[1]); }));
      CHECK(d_nu_nu(rep, f2) ==
            fixture::tabulate(3, d, [&](auto const &v) { return o.nn2(f2, v[0], v[1], v[2]); }));
      CHECK(d_alpha_alpha(rep, f1) ==
            fixture::tabulate(2, d, [&](auto const &v) { return o.aa2(f1, v[0], v[1]); }));
      CHECK(d_alpha_nu(rep, f1) ==
            fixture::tabulate(3, d, [&](auto const &v) { return o.an2(f1, v[0], v[1], v[2]); }));
      CHECK(d_nu_alpha(rep, f2) == fixture::tabulate(2, d, [&](auto const &v) { return o.na(f2, v); }));
    }
  }
}

TEST_CASE("d_total examples")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  CHECK(d_total(rep, AlphaCochain::zero(2, 2, 2)).is_zero());
  auto const dc = d_total(rep, AlphaCochain::from_phi(MultiMap::identity(2)));
  CHECK(dc.phi() == a.mult());
  CHECK(dc.psi().is_zero());
  CHECK(dc.degree() == 2);
}

TEST_CASE("assembled differential shapes")
{
  auto const z = regular_representation(fixture::zero_algebra(1));
  auto const m = assemble_differential(z, 1);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 1);
  CHECK(m.is_zero());

  auto const rep = regular_representation(fixture::golden());
  auto const d1 = assemble_differential(rep, 1);
  CHECK(d1.rows() == 12);
  CHECK(d1.cols() == 4);
  CHECK(assemble_differential(rep, 3) * assemble_differential(rep, 2) == Matrix(48, 12));
}

TEST_CASE("assembled matrices agree with the oracle-built matrices")
{
  for (auto const &[name, a] : fixture::corpus()) {
    CAPTURE(name);
    auto const rep = regular_representation(a);
    CHECK(assemble_differential(rep, 1) == oracle_differential(a, 1));
    CHECK(assemble_differential(rep, 2) == oracle_differential(a, 2));
  }
}

TEST_CASE("matrix application equals direct evaluation")
{
  fixture::Generator g(5);
  for (auto const &[name, a] : fixture::corpus()) {
    CAPTURE(name);
    auto const rep = regular_representation(a);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto const m = assemble_differential(rep, n);
      for (int t = 0; t < 5; ++t) {
        auto const c = g.cochain(n, a.dim(), a.dim());
        CHECK(apply(m, c) == d_total(rep, c).coordinates());
      }
    }
  }
}

TEST_CASE("square zero and component identities on the corpus")
{
  for (auto const &[name, a] : fixture::corpus()) {
    CAPTURE(name);
    auto const rep = regular_representation(a);
    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(n);
      CHECK(assemble_differential(rep, n + 1) * assemble_differential(rep, n) ==
            Matrix(cochain_dim(n + 2, a.dim(), a.dim()), cochain_dim(n, a.dim(), a.dim())));

      auto const N = [&](std::size_t k) { return assemble_component(rep, Component::NuNu, k); };
      auto const S = [&](std::size_t k) { return assemble_component(rep, Component::NuAlpha, k); };
      auto const X = [&](std::size_t k) { return assemble_component(rep, Component::AlphaAlpha, k); };
      auto const Y = [&](std::size_t k) { return assemble_component(rep, Component::AlphaNu, k); };
      CHECK(N(n + 1) * N(n) == Y(n + 1) * S(n));
      CHECK(S(n + 1) * N(n) == X(n + 1) * S(n));
      if (n >= 2) {
        CHECK(N(n + 1) * Y(n) == Y(n + 1) * X(n));
        CHECK(X(n + 1) * X(n) == S(n + 1) * Y(n));
      }
    }
  }
}

TEST_CASE("square-zero gate reports the failing identity")
{
  auto const rep = regular_representation(fixture::golden());
  auto const d1 = assemble_differential(rep, 1);
  auto d2 = assemble_differential(rep, 2);
  CHECK_FALSE(square_zero_defect(rep, 1, d1, d2));
  // corrupt one entry of the psi -> psi block
  d2(d2.rows() - 1, d2.cols() - 1) += 1;
  auto const msg = square_zero_defect(rep, 1, d1, d2);
  REQUIRE(msg);
  CHECK(msg->find("degree 1") != std::string::npos);
  CHECK(msg->find("d_nu_alpha d_nu_nu = d_alpha_alpha d_nu_alpha") != std::string::npos);
}

TEST_CASE("linearity of the total differential")
{
  fixture::Generator g(9);
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      auto const c1 = g.cochain(n, 2, 2);
      auto const c2 = g.cochain(n, 2, 2);
      auto const l = g.rational();
      CHECK(d_total(rep, c1 + l * c2) == d_total(rep, c1) + l * d_total(rep, c2));
    }
}

TEST_CASE("cohomology dimensions")
{
  auto const z = AlphaComplex(regular_representation(fixture::zero_algebra(1)), 1);
  CHECK(z.cohomology_dim(1) == 1);
  CHECK_THROWS_AS(z.cohomology_dim(2), std::out_of_range);
  CHECK_THROWS_AS(z.cohomology_dim(0), std::out_of_range);

  auto const a = fixture::golden();
  AlphaComplex const cx(regular_representation(a), 3);
  auto const o1 = oracle_differential(a, 1);
  auto const o2 = oracle_differential(a, 2);
  auto const rank1 = fixture::bareiss_rank(o1);
  auto const rank2 = fixture::bareiss_rank(o2);
  CHECK(cx.cohomology_dim(1) == 4 - rank1);
  CHECK(cx.cohomology_dim(2) == 12 - rank2 - rank1);
}

TEST_CASE("classical subcomplex")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  CHECK(in_classical_subcomplex(rep, MultiMap::identity(2)));
  CHECK(classical_differential(rep, MultiMap::identity(2)) == a.mult());

  // commutant of a 2x2 Jordan block is two-dimensional
  CHECK(classical_subcomplex_dim(rep, 1) == 2);

  auto const z = regular_representation(fixture::zero_algebra(2));
  for (std::size_t n = 1; n <= 3; ++n)
    CHECK(classical_subcomplex_dim(z, n) == ipow(2, n) * 2);

  MultiMap bad(1, 2, 2);
  std::array<std::size_t, 1> const i1{0};
  bad.at(i1, 1) = 1; // a1 -> a2 does not commute with alpha
  CHECK_FALSE(in_classical_subcomplex(rep, bad));
  CHECK_THROWS_AS(classical_differential(rep, bad), NotInSubcomplex);
}

TEST_CASE("classical subcomplex embeds into the total complex")
{
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto const &f : classical_subcomplex_basis(rep, n)) {
      auto const dc = d_total(rep, AlphaCochain::from_phi(f));
      CHECK(dc.psi().is_zero());
      CHECK(dc.phi() == classical_differential(rep, f));
      CHECK(dc.phi() == fixture::tabulate(n + 1, 2, [&](auto const &v) {
              return fixture::classical_coboundary(a, f, v);
            }));
      CHECK(in_classical_subcomplex(rep, dc.phi()));
    }
}

TEST_CASE("complex construction runs the square-zero gate")
{
  for (auto const &[name, a] : fixture::corpus()) {
    CAPTURE(name);
    CHECK_NOTHROW(AlphaComplex(regular_representation(a), 3));
  }
}

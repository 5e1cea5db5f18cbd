#include "hplie/deform.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hplie
{

// ---------------------------------------------------------------------------
// TruncatedDeformation

TruncatedDeformation::TruncatedDeformation(HomPreLieAlgebra base, std::vector<MultiMap> nu,
                                           std::vector<MultiMap> alpha)
  : base_(std::move(base)), nu_(std::move(nu)), alpha_(std::move(alpha))
{
  auto const d = base_.dim();
  if (nu_.empty() || nu_.size() != alpha_.size())
    throw std::invalid_argument("deformation: need matching nu and alpha terms from order 0");
  for (auto const &m : nu_)
    if (m.arity() != 2 || m.domain_dim() != d || m.codomain_dim() != d)
      throw std::invalid_argument("deformation: nu terms must be bilinear maps on A");
  for (auto const &m : alpha_)
    if (m.arity() != 1 || m.domain_dim() != d || m.codomain_dim() != d)
      throw std::invalid_argument("deformation: alpha terms must be linear maps on A");
  if (nu_[0] != base_.mult() || alpha_[0] != base_.alpha())
    throw std::invalid_argument("deformation: order-0 terms must equal the base structure");
}

TruncatedDeformation TruncatedDeformation::trivial(HomPreLieAlgebra base, std::size_t order)
{
  auto const d = base.dim();
  std::vector<MultiMap> nu{base.mult()}, alpha{base.alpha()};
  for (std::size_t i = 1; i <= order; ++i) {
    nu.emplace_back(2, d, d);
    alpha.emplace_back(1, d, d);
  }
  return TruncatedDeformation(std::move(base), std::move(nu), std::move(alpha));
}

TruncatedDeformation TruncatedDeformation::from_higher_terms(HomPreLieAlgebra base,
                                                             std::vector<MultiMap> nu,
                                                             std::vector<MultiMap> alpha)
{
  nu.insert(nu.begin(), base.mult());
  alpha.insert(alpha.begin(), base.alpha());
  return TruncatedDeformation(std::move(base), std::move(nu), std::move(alpha));
}

TruncatedDeformation TruncatedDeformation::truncated(std::size_t m) const
{
  if (m > order())
    throw std::out_of_range("deformation: cannot truncate above the current order");
  return TruncatedDeformation(base_, {nu_.begin(), nu_.begin() + m + 1},
                              {alpha_.begin(), alpha_.begin() + m + 1});
}

TruncatedDeformation TruncatedDeformation::extended(MultiMap nu_next, MultiMap alpha_next) const
{
  auto nu = nu_;
  auto alpha = alpha_;
  nu.push_back(std::move(nu_next));
  alpha.push_back(std::move(alpha_next));
  return TruncatedDeformation(base_, std::move(nu), std::move(alpha));
}

bool TruncatedDeformation::is_trivial() const
{
  for (std::size_t i = 1; i <= order(); ++i)
    if (!nu_[i].is_zero() || !alpha_[i].is_zero())
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// FormalIso

FormalIso::FormalIso(std::vector<Matrix> terms) : terms_(std::move(terms))
{
  if (terms_.empty())
    throw std::invalid_argument("formal iso: needs at least the order-0 term");
  auto const d = terms_.front().rows();
  for (auto const &m : terms_)
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("formal iso: terms must be square of equal size");
  if (terms_.front() != Matrix::identity(d))
    throw std::invalid_argument("formal iso: order-0 term must be the identity");
}

FormalIso FormalIso::identity(std::size_t dim, std::size_t order)
{
  std::vector<Matrix> t{Matrix::identity(dim)};
  for (std::size_t i = 1; i <= order; ++i)
    t.emplace_back(dim, dim);
  return FormalIso(std::move(t));
}

FormalIso FormalIso::elementary(Matrix const &phi, std::size_t n, std::size_t order)
{
  if (n < 1 || n > order)
    throw std::invalid_argument("formal iso: elementary term order out of range");
  auto t = identity(phi.rows(), order).terms_;
  t[n] = phi;
  return FormalIso(std::move(t));
}

FormalIso FormalIso::inverse() const
{
  auto const d = dim();
  std::vector<Matrix> inv{Matrix::identity(d)};
  for (std::size_t m = 1; m <= order(); ++m) {
    Matrix s(d, d);
    for (std::size_t k = 1; k <= m; ++k)
      if (!terms_[k].is_zero())
        s = s - terms_[k] * inv[m - k];
    inv.push_back(std::move(s));
  }
  return FormalIso(std::move(inv));
}

FormalIso compose(FormalIso const &outer, FormalIso const &inner)
{
  if (outer.order() != inner.order() || outer.dim() != inner.dim())
    throw std::invalid_argument("formal iso: composition needs equal order and dimension");
  std::vector<Matrix> t;
  for (std::size_t m = 0; m <= outer.order(); ++m) {
    Matrix s(outer.dim(), outer.dim());
    for (std::size_t p = 0; p <= m; ++p)
      s = s + outer.term(p) * inner.term(m - p);
    t.push_back(std::move(s));
  }
  return FormalIso(std::move(t));
}

// ---------------------------------------------------------------------------
// Order-by-order sums

namespace
{

// The two order-n sums with every index bounded by `bound`.
AlphaCochain order_sums(TruncatedDeformation const &d, std::size_t n, std::size_t bound)
{
  auto const dim = d.dim();
  auto const top = std::min(bound, d.order());
  MultiMap assoc(3, dim, dim);
  MultiMap mult(2, dim, dim);

  for (std::size_t i = 0; i <= top; ++i)
    for (std::size_t j = 0; j <= top && i + j <= n; ++j) {
      auto const k = n - i - j;
      if (k > top)
        continue;
      auto const &nu_i = d.nu(i);
      if (nu_i.is_zero())
        continue;
      if (!d.nu(j).is_zero() && !d.alpha(k).is_zero())
        assoc += compose_binary(nu_i, d.nu(j), d.alpha(k));
      if (!d.alpha(j).is_zero() && !d.nu(k).is_zero())
        assoc -= compose_binary(nu_i, d.alpha(j), d.nu(k));
      if (!d.alpha(j).is_zero() && !d.alpha(k).is_zero())
        mult += compose_binary(nu_i, d.alpha(j), d.alpha(k));
    }
  for (std::size_t i = 0; i <= top && i <= n; ++i) {
    auto const j = n - i;
    if (j <= top && !d.alpha(i).is_zero() && !d.nu(j).is_zero())
      mult -= compose_after(d.alpha(i).as_matrix(), d.nu(j));
  }
  // left-symmetry: T(a, b, c) - T(b, a, c)
  assoc -= permute_arguments(assoc, {1, 0, 2});
  return AlphaCochain(std::move(assoc), std::move(mult));
}

void record_tensor(ValidationReport &report, char const *condition, MultiMap const &m,
                   std::size_t order)
{
  for_each_index(m.domain_dim(), m.arity(), [&](MultiIndex const &idx) {
    auto v = m.value(idx);
    if (is_zero(v))
      return;
    std::vector<std::size_t> one_based(idx.begin(), idx.end());
    for (auto &i : one_based)
      ++i;
    report.defects.push_back({condition, std::move(one_based), std::move(v), order});
  });
}

} // namespace

AlphaCochain residuals(TruncatedDeformation const &d, std::size_t n)
{
  if (n > d.order())
    throw std::out_of_range("residuals: order " + std::to_string(n) + " exceeds the truncation");
  return order_sums(d, n, n);
}

ValidationReport validate_deformation(TruncatedDeformation const &d)
{
  ValidationReport report;
  for (std::size_t n = 0; n <= d.order(); ++n) {
    auto const r = residuals(d, n);
    record_tensor(report, kDeformLeftSymmetry, r.phi(), n);
    record_tensor(report, kDeformMultiplicativity, r.psi(), n);
  }
  return report;
}

std::optional<std::pair<std::size_t, AlphaCochain>> infinitesimal(TruncatedDeformation const &d)
{
  for (std::size_t n = 1; n <= d.order(); ++n)
    if (!d.nu(n).is_zero() || !d.alpha(n).is_zero())
      return std::pair{n, AlphaCochain(d.nu(n), d.alpha(n))};
  return std::nullopt;
}

AlphaCochain obstruction(TruncatedDeformation const &d)
{
  auto o = order_sums(d, d.order() + 1, d.order());
  if (!d_total(regular_representation(d.base()), o).is_zero())
    throw std::logic_error("obstruction is not closed; the input is not a valid deformation");
  return o;
}

std::optional<std::pair<MultiMap, MultiMap>> extend(TruncatedDeformation const &d)
{
  auto const o = obstruction(d);
  auto const rep = regular_representation(d.base());
  auto const x = solve_affine(assemble_differential(rep, 2), o.coordinates());
  if (!x)
    return std::nullopt;
  auto const c = AlphaCochain::from_coordinates(2, d.dim(), d.dim(), *x);
  if (!validate_deformation(d.extended(c.phi(), c.psi())).ok())
    throw std::logic_error("extension does not re-validate");
  return std::pair{c.phi(), c.psi()};
}

TruncatedDeformation transform(TruncatedDeformation const &d, FormalIso const &iso)
{
  if (iso.order() != d.order() || iso.dim() != d.dim())
    throw std::invalid_argument("transform: iso and deformation differ in order or dimension");
  auto const N = d.order();
  auto const dim = d.dim();
  auto const inv = iso.inverse();

  std::vector<MultiMap> nu(N + 1, MultiMap(2, dim, dim));
  std::vector<MultiMap> alpha(N + 1, MultiMap(1, dim, dim));
  for (std::size_t q = 0; q <= N; ++q) {
    if (!d.nu(q).is_zero())
      for (std::size_t r = 0; q + r <= N; ++r) {
        if (iso.term(r).is_zero())
          continue;
        for (std::size_t s = 0; q + r + s <= N; ++s) {
          if (iso.term(s).is_zero())
            continue;
          auto const inner = precompose_each(d.nu(q), {iso.term(r), iso.term(s)});
          for (std::size_t p = 0; p + q + r + s <= N; ++p)
            if (!inv.term(p).is_zero())
              nu[p + q + r + s] += compose_after(inv.term(p), inner);
        }
      }
    if (!d.alpha(q).is_zero()) {
      Matrix const a = d.alpha(q).as_matrix();
      for (std::size_t r = 0; q + r <= N; ++r)
        for (std::size_t p = 0; p + q + r <= N; ++p)
          alpha[p + q + r] += MultiMap::from_matrix(inv.term(p) * a * iso.term(r));
    }
  }
  TruncatedDeformation out(d.base(), std::move(nu), std::move(alpha));
  if (validate_deformation(d).ok() && !validate_deformation(out).ok())
    throw std::logic_error("transform: image of a valid deformation fails validation");
  return out;
}

std::optional<MultiMap> coboundary_preimage(Representation const &rep, AlphaCochain const &c)
{
  if (c.degree() != 2)
    throw std::invalid_argument("coboundary_preimage: expected a degree-2 cochain");
  auto const x = solve_affine(assemble_differential(rep, 1), c.coordinates());
  if (!x)
    return std::nullopt;
  return MultiMap(1, rep.algebra().dim(), rep.space_dim(), *x);
}

bool cohomologous_infinitesimals(TruncatedDeformation const &d1, TruncatedDeformation const &d2)
{
  if (d1.base().mult() != d2.base().mult() || d1.base().alpha() != d2.base().alpha())
    throw std::invalid_argument("cohomologous_infinitesimals: deformations of different algebras");
  auto const dim = d1.dim();
  auto first = [&](TruncatedDeformation const &d) {
    return d.order() >= 1 ? AlphaCochain(d.nu(1), d.alpha(1)) : AlphaCochain::zero(2, dim, dim);
  };
  return coboundary_preimage(regular_representation(d1.base()), first(d1) - first(d2))
      .has_value();
}

RigidityReport rigidity_probe(TruncatedDeformation const &d, std::size_t max_steps)
{
  auto const rep = regular_representation(d.base());
  TruncatedDeformation cur = d;
  std::size_t steps = 0;
  for (;;) {
    auto inf = infinitesimal(cur);
    if (!inf)
      return {RigidityReport::Status::ReducedToTrivial, steps, cur, std::nullopt};
    if (steps == max_steps)
      return {RigidityReport::Status::StepLimit, steps, cur, std::move(inf)};
    auto const phi = coboundary_preimage(rep, Rational(-1) * inf->second);
    if (!phi)
      return {RigidityReport::Status::StuckWithNonCoboundary, steps, cur, std::move(inf)};
    cur = transform(cur, FormalIso::elementary(phi->as_matrix(), inf->first, cur.order()));
    ++steps;
  }
}

char const *to_string(RigidityReport::Status s)
{
  switch (s) {
  case RigidityReport::Status::ReducedToTrivial:
    return "reduced-to-trivial";
  case RigidityReport::Status::StuckWithNonCoboundary:
    return "stuck-with-noncoboundary-infinitesimal";
  case RigidityReport::Status::StepLimit:
    return "step-limit";
  }
  return "unknown";
}

} // namespace hplie

#include "hplie/cochain.hpp"

#include <future>
#include <sstream>
#include <utility>

namespace hplie
{

// ---------------------------------------------------------------------------
// AlphaCochain

AlphaCochain::AlphaCochain(MultiMap phi, MultiMap psi) : phi_(std::move(phi)), psi_(std::move(psi))
{
  if (phi_.arity() < 1)
    throw std::invalid_argument("cochain: degree must be at least 1");
  if (psi_.arity() + 1 != phi_.arity())
    throw std::invalid_argument("cochain: psi arity must be one less than phi arity");
  if (psi_.domain_dim() != phi_.domain_dim() || psi_.codomain_dim() != phi_.codomain_dim())
    throw std::invalid_argument("cochain: phi and psi live over different spaces");
  if (phi_.arity() == 1 && !psi_.is_zero())
    throw std::invalid_argument("cochain: the psi component vanishes in degree 1");
}

AlphaCochain AlphaCochain::zero(std::size_t degree, std::size_t domain_dim,
                                std::size_t codomain_dim)
{
  if (degree < 1)
    throw std::invalid_argument("cochain: degree must be at least 1");
  return AlphaCochain(MultiMap(degree, domain_dim, codomain_dim),
                      MultiMap(degree - 1, domain_dim, codomain_dim));
}

AlphaCochain AlphaCochain::from_phi(MultiMap phi)
{
  auto const n = phi.arity();
  auto const d = phi.domain_dim();
  auto const e = phi.codomain_dim();
  if (n < 1)
    throw std::invalid_argument("cochain: degree must be at least 1");
  return AlphaCochain(std::move(phi), MultiMap(n - 1, d, e));
}

AlphaCochain AlphaCochain::from_coordinates(std::size_t degree, std::size_t domain_dim,
                                            std::size_t codomain_dim, Vector const &coords)
{
  if (coords.size() != hplie::cochain_dim(degree, domain_dim, codomain_dim))
    throw std::invalid_argument("cochain: coordinate vector has wrong length");
  auto const np = ipow(domain_dim, degree) * codomain_dim;
  MultiMap phi(degree, domain_dim, codomain_dim,
               Vector(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(np)));
  MultiMap psi(degree - 1, domain_dim, codomain_dim);
  if (degree >= 2)
    psi = MultiMap(degree - 1, domain_dim, codomain_dim,
                   Vector(coords.begin() + static_cast<std::ptrdiff_t>(np), coords.end()));
  return AlphaCochain(std::move(phi), std::move(psi));
}

Vector AlphaCochain::coordinates() const
{
  Vector v = phi_.coeffs();
  if (degree() >= 2)
    v.insert(v.end(), psi_.coeffs().begin(), psi_.coeffs().end());
  return v;
}

AlphaCochain &AlphaCochain::operator+=(AlphaCochain const &o)
{
  phi_ += o.phi_;
  psi_ += o.psi_;
  return *this;
}

AlphaCochain &AlphaCochain::operator-=(AlphaCochain const &o)
{
  phi_ -= o.phi_;
  psi_ -= o.psi_;
  return *this;
}

AlphaCochain &AlphaCochain::operator*=(Rational const &s)
{
  phi_ *= s;
  psi_ *= s;
  return *this;
}

AlphaCochain operator+(AlphaCochain a, AlphaCochain const &b) { return a += b; }
AlphaCochain operator-(AlphaCochain a, AlphaCochain const &b) { return a -= b; }
AlphaCochain operator*(Rational const &s, AlphaCochain c) { return c *= s; }

std::size_t cochain_dim(std::size_t degree, std::size_t d, std::size_t e)
{
  if (degree < 1)
    throw std::invalid_argument("cochain: degree must be at least 1");
  std::size_t n = ipow(d, degree) * e;
  if (degree >= 2)
    n += ipow(d, degree - 1) * e;
  return n;
}

// ---------------------------------------------------------------------------
// Shared per-representation data: basis vectors, alpha powers, products.

namespace
{

struct Context
{
  Representation const &rep;
  HomPreLieAlgebra const &alg;
  std::size_t d;
  std::size_t e;
  std::vector<Vector> basis;

  explicit Context(Representation const &r)
    : rep(r), alg(r.algebra()), d(r.algebra().dim()), e(r.space_dim())
  {
    for (std::size_t i = 0; i < d; ++i)
      basis.push_back(basis_vector(d, i));
  }

  Vector twist(Vector const &x, std::size_t k) const { return alg.alpha_power(k) * x; }
};

int sign_of(std::size_t parity) { return parity % 2 == 0 ? 1 : -1; }

template <class T>
std::vector<T> without(std::vector<T> const &v, std::size_t i)
{
  std::vector<T> r;
  r.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i)
      r.push_back(v[k]);
  return r;
}

template <class T>
std::vector<T> without(std::vector<T> const &v, std::size_t i, std::size_t j)
{
  std::vector<T> r;
  r.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != i && k != j)
      r.push_back(v[k]);
  return r;
}

// (x_1, .., x_m) -> (x_1, .., ^x_j, .., x_m, x_j)
template <class T>
std::vector<T> move_to_end(std::vector<T> const &v, std::size_t j)
{
  auto r = without(v, j);
  r.push_back(v[j]);
  return r;
}

void check_cochain(Context const &c, MultiMap const &m, std::size_t min_arity, char const *what)
{
  if (m.domain_dim() != c.d || m.codomain_dim() != c.e)
    throw std::invalid_argument(std::string(what) + ": cochain lives over the wrong spaces");
  if (m.arity() < min_arity)
    throw std::invalid_argument(std::string(what) + ": arity " + std::to_string(m.arity()) +
                                " below the minimum " + std::to_string(min_arity));
}

// ---------------------------------------------------------------------------
// Direct evaluation, one basis tuple at a time.

MultiMap tabulate(Context const &c, std::size_t arity,
                  std::function<Vector(std::vector<Vector> const &)> const &f)
{
  MultiMap out(arity, c.d, c.e);
  for_each_index(c.d, arity, [&](MultiIndex const &idx) {
    std::vector<Vector> a;
    for (auto i : idx)
      a.push_back(c.basis[i]);
    out.set_value(idx, f(a));
  });
  return out;
}

Vector eval(MultiMap const &m, std::vector<Vector> const &args) { return m.apply(args); }

// Shared by d_nu_nu (m = n) and d_alpha_alpha (m = n - 1): the sums range
// over the first m arguments of an (m+1)-tuple, and rho/mu are twisted by
// alpha^{n-1}.
Vector classical_like(Context const &c, MultiMap const &f, std::vector<Vector> const &a,
                      std::size_t twist_power)
{
  auto const m = f.arity();
  auto const &last = a[m];
  Vector r(c.e);
  std::vector<Vector> ta;
  for (auto const &x : a)
    ta.push_back(c.alg.twist(x));
  Matrix const mu_last = c.rep.mu_of(c.twist(last, twist_power));

  for (std::size_t i = 0; i < m; ++i) {
    Rational const s = sign_of(i);
    r = r + s * (c.rep.rho_of(c.twist(a[i], twist_power)) * eval(f, without(a, i)));

    auto head = without(std::vector<Vector>(a.begin(), a.begin() + m), i);
    head.push_back(a[i]);
    r = r + s * (mu_last * eval(f, head));

    auto twisted = without(std::vector<Vector>(ta.begin(), ta.begin() + m), i);
    twisted.push_back(c.alg.product(a[i], last));
    r = r - s * eval(f, twisted);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<Vector> args{c.alg.bracket(a[i], a[j])};
      for (auto &x : without(ta, i, j))
        args.push_back(std::move(x));
      r = r + Rational(sign_of(i + j)) * eval(f, args);
    }
  return r;
}

} // namespace

MultiMap d_nu_nu(Representation const &rep, MultiMap const &phi)
{
  Context const c(rep);
  check_cochain(c, phi, 1, "d_nu_nu");
  auto const n = phi.arity();
  return tabulate(c, n + 1, [&](auto const &a) { return classical_like(c, phi, a, n - 1); });
}

MultiMap d_alpha_alpha(Representation const &rep, MultiMap const &psi)
{
  Context const c(rep);
  check_cochain(c, psi, 1, "d_alpha_alpha");
  auto const n = psi.arity() + 1;
  return tabulate(c, n, [&](auto const &a) { return classical_like(c, psi, a, n - 1); });
}

MultiMap d_nu_alpha(Representation const &rep, MultiMap const &phi)
{
  Context const c(rep);
  check_cochain(c, phi, 1, "d_nu_alpha");
  return compose_after(rep.beta(), phi) - precompose_all(phi, c.alg.alpha_matrix());
}

MultiMap d_alpha_nu(Representation const &rep, MultiMap const &psi)
{
  Context const c(rep);
  check_cochain(c, psi, 1, "d_alpha_nu");
  auto const n = psi.arity() + 1;
  return tabulate(c, n + 1, [&](std::vector<Vector> const &a) {
    Vector r(c.e);
    for (std::size_t i = 0; i < n; ++i) {
      Matrix const mu = c.rep.mu_of(c.twist(c.alg.product(a[i], a[n]), n - 2));
      auto const rest = without(std::vector<Vector>(a.begin(), a.begin() + n), i);
      for (std::size_t j = 0; j + 1 < n; ++j)
        r = r + Rational(sign_of(i + j)) * (mu * eval(psi, move_to_end(rest, j)));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Matrix const rho =
            c.rep.rho_of(c.alg.bracket(c.twist(a[i], n - 2), c.twist(a[j], n - 2)));
        r = r - Rational(sign_of(i + j)) * (rho * eval(psi, without(a, i, j)));
      }
    return r;
  });
}

AlphaCochain d_total(Representation const &rep, AlphaCochain const &c)
{
  if (c.phi().domain_dim() != rep.algebra().dim() || c.phi().codomain_dim() != rep.space_dim())
    throw std::invalid_argument("d_total: cochain lives over the wrong spaces");
  auto phi = d_nu_nu(rep, c.phi());
  auto psi = d_nu_alpha(rep, c.phi());
  if (c.degree() >= 2) {
    phi -= d_alpha_nu(rep, c.psi());
    psi -= d_alpha_alpha(rep, c.psi());
  }
  return AlphaCochain(std::move(phi), std::move(psi));
}

// ---------------------------------------------------------------------------
// Matrix assembly. Every term of every component has the shape
//   coefficient * L(f(v_1, .., v_m))
// with L a fixed operator on V (or the identity) and v_k fixed vectors of A.
// Its contribution to the column of basis cochain (i_1..i_m -> f_j) is
// coefficient * L(:, j) * prod_k v_k[i_k], accumulated over the nonzero
// supports of the v_k.

namespace
{

class Assembler
{
public:
  Assembler(Context const &c, std::size_t out_arity, std::size_t in_arity)
    : c_(c), in_arity_(in_arity),
      out_(ipow(c.d, out_arity) * c.e, ipow(c.d, in_arity) * c.e)
  {}

  // op == nullptr means the identity on V.
  void add(std::size_t out_flat, Rational const &coeff, Matrix const *op,
           std::vector<Vector> const &args)
  {
    if (coeff == 0)
      return;
    if (args.size() != in_arity_)
      throw std::logic_error("assembler: argument count does not match arity");
    walk(out_flat, op, args, 0, 0, coeff);
  }

  Matrix take() { return std::move(out_); }

private:
  void walk(std::size_t out_flat, Matrix const *op, std::vector<Vector> const &args,
            std::size_t pos, std::size_t in_flat, Rational const &w)
  {
    if (pos == args.size()) {
      auto const row0 = out_flat * c_.e;
      auto const col0 = in_flat * c_.e;
      for (std::size_t j = 0; j < c_.e; ++j) {
        if (op == nullptr) {
          out_(row0 + j, col0 + j) += w;
          continue;
        }
        for (std::size_t k = 0; k < c_.e; ++k)
          if ((*op)(k, j) != 0)
            out_(row0 + k, col0 + j) += w * (*op)(k, j);
      }
      return;
    }
    auto const &v = args[pos];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0)
        walk(out_flat, op, args, pos + 1, in_flat * c_.d + i, w * v[i]);
  }

  Context const &c_;
  std::size_t in_arity_;
  Matrix out_;
};

// Tables reused across every output tuple of one assembly.
struct Tables
{
  std::vector<Vector> twisted;                  // alpha(e_i)
  std::vector<std::vector<Vector>> product;     // e_i . e_j
  std::vector<std::vector<Vector>> bracket;     // [e_i, e_j]
  std::vector<Matrix> rho_twisted;              // rho(alpha^k e_i), k = twist power
  std::vector<Matrix> mu_twisted;               // mu(alpha^k e_i)

  Tables(Context const &c, std::size_t k)
  {
    Matrix const ak = c.alg.alpha_power(k);
    product.assign(c.d, {});
    bracket.assign(c.d, {});
    for (std::size_t i = 0; i < c.d; ++i) {
      twisted.push_back(c.alg.twist(c.basis[i]));
      rho_twisted.push_back(c.rep.rho_of(ak.column(i)));
      mu_twisted.push_back(c.rep.mu_of(ak.column(i)));
      for (std::size_t j = 0; j < c.d; ++j) {
        product[i].push_back(c.alg.product(c.basis[i], c.basis[j]));
        bracket[i].push_back(c.alg.bracket(c.basis[i], c.basis[j]));
      }
    }
  }
};

// Matrix of classical_like: maps arity-m cochains to arity-(m+1) ones.
Matrix assemble_classical_like(Context const &c, std::size_t m, std::size_t twist_power)
{
  Tables const t(c, twist_power);
  Assembler as(c, m + 1, m);
  std::size_t out_flat = 0;
  for_each_index(c.d, m + 1, [&](MultiIndex const &idx) {
    auto const last = idx[m];
    std::vector<Vector> a, ta;
    for (auto i : idx) {
      a.push_back(c.basis[i]);
      ta.push_back(t.twisted[i]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      Rational const s = sign_of(i);
      as.add(out_flat, s, &t.rho_twisted[idx[i]], without(a, i));

      auto head = without(std::vector<Vector>(a.begin(), a.begin() + m), i);
      head.push_back(a[i]);
      as.add(out_flat, s, &t.mu_twisted[last], head);

      auto twisted = without(std::vector<Vector>(ta.begin(), ta.begin() + m), i);
      twisted.push_back(t.product[idx[i]][last]);
      as.add(out_flat, -s, nullptr, twisted);
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        std::vector<Vector> args{t.bracket[idx[i]][idx[j]]};
        for (auto &x : without(ta, i, j))
          args.push_back(std::move(x));
        as.add(out_flat, sign_of(i + j), nullptr, args);
      }
    ++out_flat;
  });
  return as.take();
}

Matrix assemble_nu_alpha(Context const &c, std::size_t n)
{
  Tables const t(c, 0);
  Assembler as(c, n, n);
  std::size_t out_flat = 0;
  for_each_index(c.d, n, [&](MultiIndex const &idx) {
    std::vector<Vector> a, ta;
    for (auto i : idx) {
      a.push_back(c.basis[i]);
      ta.push_back(t.twisted[i]);
    }
    as.add(out_flat, 1, &c.rep.beta(), a);
    as.add(out_flat, -1, nullptr, ta);
    ++out_flat;
  });
  return as.take();
}

Matrix assemble_alpha_nu(Context const &c, std::size_t n)
{
  Tables const t(c, 0);
  Matrix const an2 = c.alg.alpha_power(n - 2);
  std::vector<Vector> twisted_n2;
  for (std::size_t i = 0; i < c.d; ++i)
    twisted_n2.push_back(an2.column(i));

  Assembler as(c, n + 1, n - 1);
  std::size_t out_flat = 0;
  for_each_index(c.d, n + 1, [&](MultiIndex const &idx) {
    std::vector<Vector> a;
    for (auto i : idx)
      a.push_back(c.basis[i]);
    for (std::size_t i = 0; i < n; ++i) {
      Matrix const mu = c.rep.mu_of(an2 * t.product[idx[i]][idx[n]]);
      auto const rest = without(std::vector<Vector>(a.begin(), a.begin() + n), i);
      for (std::size_t j = 0; j + 1 < n; ++j)
        as.add(out_flat, sign_of(i + j), &mu, move_to_end(rest, j));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Matrix const rho =
            c.rep.rho_of(c.alg.bracket(twisted_n2[idx[i]], twisted_n2[idx[j]]));
        as.add(out_flat, -sign_of(i + j), &rho, without(a, i, j));
      }
    ++out_flat;
  });
  return as.take();
}

void paste(Matrix &dst, Matrix const &src, std::size_t r0, std::size_t c0, Rational const &s)
{
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t col = 0; col < src.cols(); ++col)
      if (src(r, col) != 0)
        dst(r0 + r, c0 + col) = s * src(r, col);
}

} // namespace

Matrix assemble_component(Representation const &rep, Component which, std::size_t degree)
{
  Context const c(rep);
  if (degree < 1)
    throw std::invalid_argument("assemble_component: degree must be at least 1");
  switch (which) {
  case Component::NuNu:
    return assemble_classical_like(c, degree, degree - 1);
  case Component::NuAlpha:
    return assemble_nu_alpha(c, degree);
  case Component::AlphaAlpha:
  case Component::AlphaNu:
    if (degree < 2)
      throw std::invalid_argument("assemble_component: psi components start in degree 2");
    return which == Component::AlphaAlpha ? assemble_classical_like(c, degree - 1, degree - 1)
                                          : assemble_alpha_nu(c, degree);
  }
  throw std::logic_error("assemble_component: unknown component");
}

Matrix assemble_differential(Representation const &rep, std::size_t degree)
{
  auto const d = rep.algebra().dim();
  auto const e = rep.space_dim();
  auto const n = degree;
  Matrix out(cochain_dim(n + 1, d, e), cochain_dim(n, d, e));
  auto const phi_rows = ipow(d, n + 1) * e;
  auto const phi_cols = ipow(d, n) * e;
  paste(out, assemble_component(rep, Component::NuNu, n), 0, 0, 1);
  paste(out, assemble_component(rep, Component::NuAlpha, n), phi_rows, 0, 1);
  if (n >= 2) {
    paste(out, assemble_component(rep, Component::AlphaNu, n), 0, phi_cols, -1);
    paste(out, assemble_component(rep, Component::AlphaAlpha, n), phi_rows, phi_cols, -1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Square-zero gate.

namespace
{

std::string describe_basis_cochain(std::size_t flat, std::size_t arity, std::size_t d,
                                   std::size_t e, char const *component)
{
  auto const out = flat % e;
  auto in = flat / e;
  std::vector<std::size_t> idx(arity);
  for (std::size_t k = arity; k-- > 0;) {
    idx[k] = in % d;
    in /= d;
  }
  std::ostringstream os;
  os << component << "(";
  for (std::size_t k = 0; k < arity; ++k)
    os << (k ? "," : "") << "e" << idx[k] + 1;
  os << ") = f" << out + 1;
  return os.str();
}

} // namespace

std::optional<std::string> square_zero_defect(Representation const &rep, std::size_t degree,
                                              Matrix const &d_n, Matrix const &d_next)
{
  Matrix const p = d_next * d_n;
  if (p.is_zero())
    return std::nullopt;

  auto const d = rep.algebra().dim();
  auto const e = rep.space_dim();
  auto const n = degree;
  auto const phi_cols = ipow(d, n) * e;
  auto const phi_rows = ipow(d, n + 2) * e;

  for (std::size_t col = 0; col < p.cols(); ++col)
    for (std::size_t row = 0; row < p.rows(); ++row) {
      if (p(row, col) == 0)
        continue;
      bool const from_phi = col < phi_cols;
      bool const to_phi = row < phi_rows;
      char const *identity = from_phi ? (to_phi ? "d_nu_nu d_nu_nu = d_alpha_nu d_nu_alpha"
                                                : "d_nu_alpha d_nu_nu = d_alpha_alpha d_nu_alpha")
                                      : (to_phi ? "d_nu_nu d_alpha_nu = d_alpha_nu d_alpha_alpha"
                                                : "d_alpha_alpha d_alpha_alpha = d_nu_alpha d_alpha_nu");
      auto const basis = from_phi ? describe_basis_cochain(col, n, d, e, "phi")
                                  : describe_basis_cochain(col - phi_cols, n - 1, d, e, "psi");
      std::ostringstream os;
      os << "differential does not square to zero at degree " << n << ": identity "
         << identity << " fails on basis cochain " << basis;
      return os.str();
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// AlphaComplex

AlphaComplex::AlphaComplex(Representation rep, std::size_t degree_cap)
  : rep_(std::move(rep)), degree_cap_(degree_cap), ranks_(degree_cap)
{
  if (degree_cap_ < 1)
    throw std::invalid_argument("complex: degree cap must be at least 1");

  std::vector<std::future<Matrix>> jobs;
  for (std::size_t n = 1; n <= degree_cap_; ++n)
    jobs.push_back(std::async(std::launch::async,
                              [this, n] { return assemble_differential(rep_, n); }));
  for (auto &j : jobs)
    differentials_.push_back(j.get());

  for (std::size_t n = 1; n < degree_cap_; ++n)
    if (auto defect = square_zero_defect(rep_, n, differentials_[n - 1], differentials_[n]))
      throw SquareZeroFailure(*defect);
}

Matrix const &AlphaComplex::differential(std::size_t degree) const
{
  if (degree < 1 || degree > degree_cap_)
    throw std::out_of_range("complex: degree " + std::to_string(degree) +
                            " outside 1.." + std::to_string(degree_cap_));
  return differentials_[degree - 1];
}

std::size_t AlphaComplex::cochain_dim(std::size_t degree) const
{
  return hplie::cochain_dim(degree, rep_.algebra().dim(), rep_.space_dim());
}

std::size_t AlphaComplex::rank_of(std::size_t degree) const
{
  auto const &m = differential(degree);
  {
    std::lock_guard lock(rank_mutex_);
    if (ranks_[degree - 1])
      return *ranks_[degree - 1];
  }
  auto const r = rank(m);
  std::lock_guard lock(rank_mutex_);
  ranks_[degree - 1] = r;
  return r;
}

std::size_t AlphaComplex::cocycle_dim(std::size_t degree) const
{
  return cochain_dim(degree) - rank_of(degree);
}

std::size_t AlphaComplex::cohomology_dim(std::size_t degree) const
{
  (void)differential(degree); // range check
  auto const z = cocycle_dim(degree);
  return degree == 1 ? z : z - rank_of(degree - 1);
}

// ---------------------------------------------------------------------------
// Classical subcomplex.

bool in_classical_subcomplex(Representation const &rep, MultiMap const &f)
{
  return d_nu_alpha(rep, f).is_zero();
}

MultiMap classical_differential(Representation const &rep, MultiMap const &f)
{
  if (!in_classical_subcomplex(rep, f))
    throw NotInSubcomplex("classical differential: cochain does not commute with the twists");
  return d_nu_nu(rep, f);
}

std::size_t classical_subcomplex_dim(Representation const &rep, std::size_t degree)
{
  auto const m = assemble_component(rep, Component::NuAlpha, degree);
  return m.cols() - rank(m);
}

std::vector<MultiMap> classical_subcomplex_basis(Representation const &rep, std::size_t degree)
{
  std::vector<MultiMap> out;
  for (auto &v : nullspace_basis(assemble_component(rep, Component::NuAlpha, degree)))
    out.emplace_back(degree, rep.algebra().dim(), rep.space_dim(), std::move(v));
  return out;
}

} // namespace hplie

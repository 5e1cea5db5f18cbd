#include "hplie/equivariant.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <stdexcept>
#include <string>

namespace hplie
{

namespace
{

std::vector<std::size_t> one_based(std::initializer_list<std::size_t> prefix, MultiIndex const &idx)
{
  std::vector<std::size_t> out;
  for (auto i : prefix)
    out.push_back(i + 1);
  for (auto i : idx)
    out.push_back(i + 1);
  return out;
}

// Coordinates of v in the basis given by the columns of `basis`.
std::optional<Vector> coordinates_in(Matrix const &basis, Vector const &v)
{
  return solve_affine(basis, v);
}

Vector expect_coordinates(Matrix const &basis, Vector const &v, char const *what)
{
  auto x = coordinates_in(basis, v);
  if (!x)
    throw std::logic_error(std::string("fixed subalgebra: ") + what + " leaves the fixed space");
  return *x;
}

// Rows [offset, offset + count) of m.
Matrix row_block(Matrix const &m, std::size_t offset, std::size_t count)
{
  Matrix out(count, m.cols());
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = m(offset + r, c);
  return out;
}

// Records every nonzero value of `m` as a defect with the given prefix.
void record_tensor(ValidationReport &report, char const *condition,
                   std::initializer_list<std::size_t> prefix, MultiMap const &m,
                   std::optional<std::size_t> order)
{
  for_each_index(m.domain_dim(), m.arity(), [&](MultiIndex const &idx) {
    auto v = m.value(idx);
    if (!is_zero(v))
      report.defects.push_back({condition, one_based(prefix, idx), std::move(v), order});
  });
}

bool same_algebra(HomPreLieAlgebra const &a, HomPreLieAlgebra const &b)
{
  return a.mult() == b.mult() && a.alpha() == b.alpha();
}

} // namespace

// ---------------------------------------------------------------------------
// Groups

ValidationReport validate_group(std::vector<std::vector<std::size_t>> const &table)
{
  auto const m = table.size();
  if (m == 0)
    throw std::invalid_argument("group: empty multiplication table");
  for (auto const &row : table) {
    if (row.size() != m)
      throw std::invalid_argument("group: multiplication table is not square");
    for (auto x : row)
      if (x >= m)
        throw std::invalid_argument("group: table entry out of range");
  }

  ValidationReport report;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          report.defects.push_back({kGroupAssociativity, {a + 1, b + 1, c + 1}, {}, std::nullopt});

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < m && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a)
      ok = table[e][a] == a && table[a][e] == a;
    if (ok)
      identity = e;
  }
  if (!identity) {
    report.defects.push_back({kGroupIdentity, {}, {}, std::nullopt});
    return report;
  }
  for (std::size_t a = 0; a < m; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < m && !found; ++b)
      found = table[a][b] == *identity && table[b][a] == *identity;
    if (!found)
      report.defects.push_back({kGroupInverse, {a + 1}, {}, std::nullopt});
  }
  return report;
}

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table))
{
  auto report = validate_group(table_);
  if (!report.ok())
    throw InvalidStructure("group: table violates the group axioms", std::move(report));
  auto const m = table_.size();
  for (std::size_t e = 0; e < m; ++e)
    if (table_[e][e] == e) {
      identity_ = e;
      break;
    }
  inverse_.resize(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (table_[a][b] == identity_)
        inverse_[a] = b;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t order)
{
  if (order == 0)
    throw std::invalid_argument("group: cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      t[a][b] = (a + b) % order;
  return FiniteGroup(std::move(t));
}

bool Subgroup::contains(std::size_t g) const
{
  return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup make_subgroup(FiniteGroup const &g, std::vector<std::size_t> elements)
{
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup h{std::move(elements)};
  for (auto x : h.elements)
    if (x >= g.order())
      throw std::invalid_argument("subgroup: element out of range");
  if (!h.contains(g.identity()))
    throw std::invalid_argument("subgroup: identity missing");
  for (auto a : h.elements) {
    if (!h.contains(g.inverse(a)))
      throw std::invalid_argument("subgroup: not closed under inverses");
    for (auto b : h.elements)
      if (!h.contains(g.mul(a, b)))
        throw std::invalid_argument("subgroup: not closed under the product");
  }
  return h;
}

std::vector<Subgroup> subgroups(FiniteGroup const &g, std::size_t max_order)
{
  auto const m = g.order();
  if (m > max_order)
    throw std::invalid_argument("subgroups: group order " + std::to_string(m) +
                                " exceeds the enumeration limit " + std::to_string(max_order));
  std::vector<Subgroup> out;
  // A nonempty finite subset closed under the product is a subgroup.
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (!(mask >> g.identity() & 1))
      continue;
    bool closed = true;
    for (std::size_t a = 0; a < m && closed; ++a)
      for (std::size_t b = 0; b < m && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1))
          closed = mask >> g.mul(a, b) & 1;
    if (!closed)
      continue;
    Subgroup h;
    for (std::size_t a = 0; a < m; ++a)
      if (mask >> a & 1)
        h.elements.push_back(a);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> subconjugacy_morphisms(FiniteGroup const &g, Subgroup const &h,
                                                Subgroup const &k)
{
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : h.elements)
      if (!k.contains(g.mul(g.mul(g.inverse(x), y), x))) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Actions

ValidationReport validate_action(FiniteGroup const &g, HomPreLieAlgebra const &a,
                                 std::vector<Matrix> const &maps)
{
  auto const d = a.dim();
  if (maps.size() != g.order())
    throw std::invalid_argument("action: need one matrix per group element");
  for (auto const &m : maps)
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("action: matrices must be square of the algebra dimension");

  ValidationReport report;
  auto const e = g.identity();
  for (std::size_t i = 0; i < d; ++i) {
    auto v = maps[e].column(i) - basis_vector(d, i);
    if (!is_zero(v))
      report.defects.push_back({kActionIdentity, {e + 1, i + 1}, std::move(v), std::nullopt});
  }
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y) {
      auto const diff = maps[g.mul(x, y)] - maps[x] * maps[y];
      for (std::size_t i = 0; i < d; ++i) {
        auto v = diff.column(i);
        if (!is_zero(v))
          report.defects.push_back(
              {kActionComposition, {x + 1, y + 1, i + 1}, std::move(v), std::nullopt});
      }
    }
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto const &p = maps[x];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto v = p * a.product(basis_vector(d, i), basis_vector(d, j)) -
                 a.product(p.column(i), p.column(j));
        if (!is_zero(v))
          report.defects.push_back(
              {kActionProduct, {x + 1, i + 1, j + 1}, std::move(v), std::nullopt});
      }
    auto const twist = p * a.alpha_matrix() - a.alpha_matrix() * p;
    for (std::size_t i = 0; i < d; ++i) {
      auto v = twist.column(i);
      if (!is_zero(v))
        report.defects.push_back({kActionAlpha, {x + 1, i + 1}, std::move(v), std::nullopt});
    }
  }
  return report;
}

GroupAction::GroupAction(FiniteGroup group, HomPreLieAlgebra algebra, std::vector<Matrix> maps)
  : group_(std::move(group)), algebra_(std::move(algebra)), maps_(std::move(maps))
{
  auto report = validate_action(group_, algebra_, maps_);
  if (!report.ok())
    throw InvalidStructure("action: not an action by algebra automorphisms", std::move(report));
}

GroupAction GroupAction::identity(FiniteGroup group, HomPreLieAlgebra algebra)
{
  std::vector<Matrix> maps(group.order(), Matrix::identity(algebra.dim()));
  return GroupAction(std::move(group), std::move(algebra), std::move(maps));
}

FixedSubalgebra fixed_subalgebra(GroupAction const &act, Subgroup const &h)
{
  auto const &a = act.algebra();
  auto const d = a.dim();
  Matrix stacked(0, d);
  for (auto x : h.elements)
    stacked = stacked.vstack(act.map(x) - Matrix::identity(d));
  auto const inclusion = Matrix::from_columns(d, nullspace_basis(stacked));
  auto const f = inclusion.cols();

  MultiMap mult(2, f, f);
  Matrix alpha(f, f);
  for (std::size_t p = 0; p < f; ++p) {
    auto const col = expect_coordinates(inclusion, a.twist(inclusion.column(p)), "alpha");
    for (std::size_t r = 0; r < f; ++r)
      alpha(r, p) = col[r];
    for (std::size_t q = 0; q < f; ++q) {
      std::array<std::size_t, 2> const pq{p, q};
      mult.set_value(pq, expect_coordinates(
                             inclusion, a.product(inclusion.column(p), inclusion.column(q)),
                             "product"));
    }
  }
  auto const alpha_map = MultiMap::from_matrix(alpha);
  if (!validate_hom_pre_lie(f, mult, alpha_map).ok())
    throw std::logic_error("fixed subalgebra: induced structure is not Hom-pre-Lie");
  return {h, inclusion, HomPreLieAlgebra(std::move(mult), alpha_map)};
}

// ---------------------------------------------------------------------------
// Orbit diagram

OrbitDiagram::OrbitDiagram(GroupAction act)
  : act_(std::move(act)), subgroups_(hplie::subgroups(act_.group()))
{
  for (auto const &h : subgroups_)
    fixed_.push_back(fixed_subalgebra(act_, h));
  for (std::size_t s = 0; s < subgroups_.size(); ++s)
    for (std::size_t t = 0; t < subgroups_.size(); ++t)
      for (auto g : subconjugacy_morphisms(act_.group(), subgroups_[s], subgroups_[t])) {
        // psi_g maps A^K into A^H; express it in fixed-basis coordinates.
        auto const &incl_h = fixed_[s].inclusion;
        auto const image = act_.map(g) * fixed_[t].inclusion;
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < image.cols(); ++c) {
          auto x = coordinates_in(incl_h, image.column(c));
          if (!x)
            throw std::logic_error("orbit diagram: psi_g does not map A^K into A^H");
          cols.push_back(std::move(*x));
        }
        morphisms_.push_back({s, t, g, Matrix::from_columns(incl_h.cols(), cols)});
      }
}

std::size_t OrbitDiagram::position(Subgroup const &h) const
{
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), h);
  if (it == subgroups_.end() || *it != h)
    throw std::out_of_range("orbit diagram: not a subgroup of the acting group");
  return static_cast<std::size_t>(it - subgroups_.begin());
}

std::size_t OrbitDiagram::ambient_dim(std::size_t degree) const
{
  return block_offset(fixed_.size(), degree);
}

std::size_t OrbitDiagram::block_offset(std::size_t h, std::size_t degree) const
{
  std::size_t off = 0;
  for (std::size_t s = 0; s < h; ++s)
    off += cochain_dim(degree, fixed_[s].dim(), fixed_[s].dim());
  return off;
}

// ---------------------------------------------------------------------------
// Equivariant cochains

EquivariantCochain EquivariantCochain::zero(OrbitDiagram const &diagram, std::size_t degree)
{
  EquivariantCochain c{degree, {}};
  for (auto const &f : diagram.fixed())
    c.components.push_back(AlphaCochain::zero(degree, f.dim(), f.dim()));
  return c;
}

EquivariantCochain EquivariantCochain::from_coordinates(OrbitDiagram const &diagram,
                                                        std::size_t degree, Vector const &coords)
{
  if (coords.size() != diagram.ambient_dim(degree))
    throw std::invalid_argument("equivariant cochain: coordinate vector has wrong length");
  EquivariantCochain c{degree, {}};
  auto it = coords.begin();
  for (auto const &f : diagram.fixed()) {
    auto const n = static_cast<std::ptrdiff_t>(cochain_dim(degree, f.dim(), f.dim()));
    c.components.push_back(AlphaCochain::from_coordinates(degree, f.dim(), f.dim(), Vector(it, it + n)));
    it += n;
  }
  return c;
}

Vector EquivariantCochain::coordinates() const
{
  Vector out;
  for (auto const &c : components) {
    auto v = c.coordinates();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool EquivariantCochain::is_zero() const
{
  return std::all_of(components.begin(), components.end(),
                     [](AlphaCochain const &c) { return c.is_zero(); });
}

namespace
{

// Rows of c^H o R^(x)arity - R o c^K for one component of one triple.
// `col_h` and `col_k` are the ambient offsets of the two components.
void constraint_rows(std::vector<Vector> &rows, std::size_t ambient, Matrix const &r,
                     std::size_t arity, std::size_t col_h, std::size_t col_k)
{
  auto const h = r.rows();
  auto const k = r.cols();
  if (h == 0 || k == 0)
    return; // both sides are maps from or into the zero space
  std::vector<MultiIndex> h_tuples;
  for_each_index(h, arity, [&](MultiIndex const &idx) { h_tuples.push_back(idx); });

  for_each_index(k, arity, [&](MultiIndex const &t) {
    // weight[p] = prod_r R(idx_r, t_r) for the p-th H-tuple
    std::vector<Rational> weight(h_tuples.size());
    for (std::size_t p = 0; p < h_tuples.size(); ++p) {
      Rational w = 1;
      for (std::size_t s = 0; s < arity && w != 0; ++s)
        w *= r(h_tuples[p][s], t[s]);
      weight[p] = w;
    }
    std::size_t t_flat = 0;
    for (auto x : t)
      t_flat = t_flat * k + x;
    for (std::size_t j = 0; j < h; ++j) {
      Vector row(ambient);
      for (std::size_t p = 0; p < h_tuples.size(); ++p)
        if (weight[p] != 0)
          row[col_h + p * h + j] += weight[p];
      for (std::size_t l = 0; l < k; ++l)
        if (r(j, l) != 0)
          row[col_k + t_flat * k + l] -= r(j, l);
      if (!is_zero(row))
        rows.push_back(std::move(row));
    }
  });
}

} // namespace

Matrix invariance_constraint_matrix(OrbitDiagram const &diagram, std::size_t degree)
{
  if (degree < 1)
    throw std::invalid_argument("invariance constraints: degree must be at least 1");
  auto const ambient = diagram.ambient_dim(degree);
  std::vector<Vector> rows;
  for (auto const &m : diagram.morphisms()) {
    auto const dh = diagram.fixed()[m.source].dim();
    auto const dk = diagram.fixed()[m.target].dim();
    auto const off_h = diagram.block_offset(m.source, degree);
    auto const off_k = diagram.block_offset(m.target, degree);
    constraint_rows(rows, ambient, m.restricted, degree, off_h, off_k);
    if (degree >= 2)
      constraint_rows(rows, ambient, m.restricted, degree - 1, off_h + ipow(dh, degree) * dh,
                      off_k + ipow(dk, degree) * dk);
  }
  if (rows.empty())
    return Matrix(0, ambient);
  return Matrix::from_rows(rows);
}

Matrix invariance_constraint_matrix(GroupAction const &act, std::size_t degree)
{
  return invariance_constraint_matrix(OrbitDiagram(act), degree);
}

bool is_invariant(OrbitDiagram const &diagram, EquivariantCochain const &c)
{
  return is_zero(invariance_constraint_matrix(diagram, c.degree) * c.coordinates());
}

// ---------------------------------------------------------------------------
// Equivariant complex

EquivariantComplex::EquivariantComplex(OrbitDiagram diagram, std::size_t degree_cap)
  : diagram_(std::move(diagram)), degree_cap_(degree_cap)
{
  if (degree_cap_ < 1)
    throw std::invalid_argument("equivariant complex: degree cap must be at least 1");

  std::vector<std::future<std::shared_ptr<AlphaComplex const>>> jobs;
  for (auto const &f : diagram_.fixed())
    jobs.push_back(std::async(std::launch::async, [&f, cap = degree_cap_] {
      return std::make_shared<AlphaComplex const>(regular_representation(f.induced), cap);
    }));
  for (auto &j : jobs)
    blocks_.push_back(j.get());

  std::vector<Matrix> constraints;
  for (std::size_t n = 1; n <= degree_cap_; ++n) {
    constraints.push_back(invariance_constraint_matrix(diagram_, n));
    bases_.push_back(
        Matrix::from_columns(diagram_.ambient_dim(n), nullspace_basis(constraints.back())));
  }
  for (std::size_t n = 1; n <= degree_cap_; ++n) {
    auto const &b = bases_[n - 1];
    Matrix image(0, b.cols());
    for (std::size_t h = 0; h < blocks_.size(); ++h) {
      auto const rows = blocks_[h]->cochain_dim(n);
      image = image.vstack(blocks_[h]->differential(n) *
                           row_block(b, diagram_.block_offset(h, n), rows));
    }
    if (n < degree_cap_ && !(constraints[n] * image).is_zero())
      throw InvarianceFailure("differential does not preserve invariant cochains at degree " +
                              std::to_string(n));
    ranks_.push_back(rank(image));
    image_of_bases_.push_back(std::move(image));
  }
}

Matrix EquivariantComplex::differential(std::size_t degree) const
{
  Matrix out(diagram_.ambient_dim(degree + 1), diagram_.ambient_dim(degree));
  for (std::size_t h = 0; h < blocks_.size(); ++h) {
    auto const &d = blocks_[h]->differential(degree);
    auto const r0 = diagram_.block_offset(h, degree + 1);
    auto const c0 = diagram_.block_offset(h, degree);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        out(r0 + r, c0 + c) = d(r, c);
  }
  return out;
}

Matrix const &EquivariantComplex::invariant_basis(std::size_t degree) const
{
  if (degree < 1 || degree > degree_cap_)
    throw std::out_of_range("equivariant complex: degree " + std::to_string(degree) +
                            " outside 1.." + std::to_string(degree_cap_));
  return bases_[degree - 1];
}

std::size_t EquivariantComplex::invariant_dim(std::size_t degree) const
{
  return invariant_basis(degree).cols();
}

std::size_t EquivariantComplex::restricted_rank(std::size_t degree) const
{
  (void)invariant_basis(degree);
  return ranks_[degree - 1];
}

std::size_t EquivariantComplex::cohomology_dim(std::size_t degree) const
{
  auto const kernel = invariant_dim(degree) - restricted_rank(degree);
  return kernel - (degree >= 2 ? restricted_rank(degree - 1) : 0);
}

EquivariantCochain EquivariantComplex::delta(EquivariantCochain const &c) const
{
  if (c.components.size() != blocks_.size())
    throw std::invalid_argument("equivariant complex: one component per subgroup required");
  EquivariantCochain out{c.degree + 1, {}};
  for (std::size_t h = 0; h < blocks_.size(); ++h)
    out.components.push_back(d_total(blocks_[h]->representation(), c.components[h]));
  return out;
}

std::optional<EquivariantCochain>
EquivariantComplex::invariant_preimage(EquivariantCochain const &c) const
{
  if (c.degree < 2)
    throw std::invalid_argument("equivariant complex: degree-1 cochains have no preimage");
  auto const n = c.degree - 1;
  (void)invariant_basis(n);
  auto const y = solve_affine(image_of_bases_[n - 1], c.coordinates());
  if (!y)
    return std::nullopt;
  return EquivariantCochain::from_coordinates(diagram_, n, bases_[n - 1] * *y);
}

std::size_t equivariant_cohomology_dim(GroupAction const &act, std::size_t degree)
{
  return EquivariantComplex(OrbitDiagram(act), degree).cohomology_dim(degree);
}

// ---------------------------------------------------------------------------
// Equivariant deformations

EquivariantFamily trivial_family(OrbitDiagram const &diagram, std::size_t order)
{
  EquivariantFamily out;
  for (auto const &f : diagram.fixed())
    out.push_back(TruncatedDeformation::trivial(f.induced, order));
  return out;
}

namespace
{

bool commutes_with_action(GroupAction const &act, MultiMap const &m)
{
  for (auto const &p : act.maps()) {
    auto const lhs = compose_after(p, m);
    auto const rhs = m.arity() == 0 ? m : precompose_all(m, p);
    if (lhs != rhs)
      return false;
  }
  return true;
}

// The restriction of an equivariant multilinear map on A to A^H.
MultiMap restrict_to(FixedSubalgebra const &f, MultiMap const &m)
{
  auto const through = precompose_all(m, f.inclusion);
  MultiMap out(m.arity(), f.dim(), f.dim());
  for_each_index(f.dim(), m.arity(), [&](MultiIndex const &idx) {
    out.set_value(idx, expect_coordinates(f.inclusion, through.value(idx), "equivariant map"));
  });
  return out;
}

void check_family_shape(OrbitDiagram const &diagram, EquivariantFamily const &family)
{
  if (family.size() != diagram.subgroups().size())
    throw std::invalid_argument("equivariant family: need one deformation per subgroup");
  for (std::size_t h = 0; h < family.size(); ++h) {
    if (family[h].order() != family.front().order())
      throw std::invalid_argument("equivariant family: members have different orders");
    if (!same_algebra(family[h].base(), diagram.fixed()[h].induced))
      throw std::invalid_argument("equivariant family: member " + std::to_string(h + 1) +
                                  " is not over the induced algebra on A^H");
  }
}

} // namespace

EquivariantFamily restrict_deformation(OrbitDiagram const &diagram, TruncatedDeformation const &d)
{
  if (!same_algebra(d.base(), diagram.action().algebra()))
    throw std::invalid_argument("restrict_deformation: deformation of a different algebra");
  for (std::size_t t = 0; t <= d.order(); ++t)
    if (!commutes_with_action(diagram.action(), d.nu(t)) ||
        !commutes_with_action(diagram.action(), d.alpha(t)))
      throw std::invalid_argument("restrict_deformation: order " + std::to_string(t) +
                                  " term does not commute with the action");
  EquivariantFamily out;
  for (auto const &f : diagram.fixed()) {
    std::vector<MultiMap> nu, alpha;
    for (std::size_t t = 0; t <= d.order(); ++t) {
      nu.push_back(restrict_to(f, d.nu(t)));
      alpha.push_back(restrict_to(f, d.alpha(t)));
    }
    out.emplace_back(f.induced, std::move(nu), std::move(alpha));
  }
  return out;
}

std::vector<Matrix> restrict_equivariant_map(OrbitDiagram const &diagram, Matrix const &m)
{
  auto const mm = MultiMap::from_matrix(m);
  if (!commutes_with_action(diagram.action(), mm))
    throw std::invalid_argument("restrict_equivariant_map: map does not commute with the action");
  std::vector<Matrix> out;
  for (auto const &f : diagram.fixed())
    out.push_back(restrict_to(f, mm).as_matrix());
  return out;
}

ValidationReport validate_equivariant_deformation(OrbitDiagram const &diagram,
                                                  EquivariantFamily const &family)
{
  check_family_shape(diagram, family);
  ValidationReport report;
  for (std::size_t h = 0; h < family.size(); ++h)
    for (auto d : validate_deformation(family[h]).defects) {
      d.indices.insert(d.indices.begin(), h + 1);
      report.defects.push_back(std::move(d));
    }
  auto const N = family.front().order();
  for (auto const &m : diagram.morphisms()) {
    auto const &src = family[m.source];
    auto const &tgt = family[m.target];
    for (std::size_t t = 0; t <= N; ++t) {
      auto const nu = precompose_all(src.nu(t), m.restricted) - compose_after(m.restricted, tgt.nu(t));
      record_tensor(report, kNaturalityProduct, {m.source, m.target, m.element}, nu, t);
      auto const al = precompose_all(src.alpha(t), m.restricted) -
                      compose_after(m.restricted, tgt.alpha(t));
      record_tensor(report, kNaturalityAlpha, {m.source, m.target, m.element}, al, t);
    }
  }
  return report;
}

std::optional<std::pair<std::size_t, EquivariantCochain>>
equivariant_infinitesimal(EquivariantComplex const &complex, EquivariantFamily const &family)
{
  auto const &diagram = complex.diagram();
  check_family_shape(diagram, family);
  auto const N = family.front().order();
  for (std::size_t n = 1; n <= N; ++n) {
    EquivariantCochain c{2, {}};
    for (auto const &d : family)
      c.components.emplace_back(d.nu(n), d.alpha(n));
    if (c.is_zero())
      continue;
    if (!is_invariant(diagram, c))
      throw std::logic_error("equivariant infinitesimal is not invariant");
    if (!complex.delta(c).is_zero())
      throw std::logic_error("equivariant infinitesimal is not a cocycle");
    return std::pair{n, std::move(c)};
  }
  return std::nullopt;
}

EquivariantObstruction equivariant_obstruction(EquivariantComplex const &complex,
                                               EquivariantFamily const &family)
{
  auto const &diagram = complex.diagram();
  check_family_shape(diagram, family);
  EquivariantCochain o{3, {}};
  for (auto const &d : family)
    o.components.push_back(obstruction(d));
  if (!is_invariant(diagram, o))
    throw std::logic_error("equivariant obstruction is not invariant");

  EquivariantObstruction out{o, std::nullopt};
  auto const x = complex.invariant_preimage(o);
  if (!x)
    return out;
  std::vector<std::pair<MultiMap, MultiMap>> terms;
  EquivariantFamily longer;
  for (std::size_t h = 0; h < family.size(); ++h) {
    auto const &c = x->components[h];
    terms.emplace_back(c.phi(), c.psi());
    longer.push_back(family[h].extended(c.phi(), c.psi()));
  }
  if (!validate_equivariant_deformation(diagram, longer).ok())
    throw std::logic_error("equivariant extension does not re-validate");
  out.extension = std::move(terms);
  return out;
}

EquivariantFamily transform_family(EquivariantFamily const &family,
                                   std::vector<FormalIso> const &isos)
{
  if (isos.size() != family.size())
    throw std::invalid_argument("transform_family: need one iso per subgroup");
  EquivariantFamily out;
  for (std::size_t h = 0; h < family.size(); ++h)
    out.push_back(transform(family[h], isos[h]));
  return out;
}

ValidationReport check_equivariant_equivalence(OrbitDiagram const &diagram,
                                               EquivariantFamily const &from,
                                               EquivariantFamily const &to,
                                               std::vector<FormalIso> const &isos,
                                               EquivalenceMode mode)
{
  check_family_shape(diagram, from);
  check_family_shape(diagram, to);
  if (from.front().order() != to.front().order())
    throw std::invalid_argument("equivalence: families have different orders");
  auto const moved = transform_family(from, isos);
  auto const N = from.front().order();

  ValidationReport report;
  for (std::size_t h = 0; h < from.size(); ++h)
    for (std::size_t t = 0; t <= N; ++t) {
      record_tensor(report, kEquivalenceProduct, {h}, moved[h].nu(t) - to[h].nu(t), t);
      record_tensor(report, kEquivalenceAlpha, {h}, moved[h].alpha(t) - to[h].alpha(t), t);
    }
  if (mode == EquivalenceMode::Strict)
    for (auto const &m : diagram.morphisms())
      for (std::size_t t = 0; t <= N; ++t) {
        auto const diff = isos[m.source].term(t) * m.restricted - m.restricted * isos[m.target].term(t);
        record_tensor(report, kIsoNaturality, {m.source, m.target, m.element},
                      MultiMap::from_matrix(diff), t);
      }
  return report;
}

bool equivariant_cohomologous_infinitesimals(EquivariantComplex const &complex,
                                             EquivariantFamily const &a, EquivariantFamily const &b)
{
  auto const &diagram = complex.diagram();
  check_family_shape(diagram, a);
  check_family_shape(diagram, b);
  auto diff = EquivariantCochain::zero(diagram, 2);
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (a[h].order() >= 1)
      diff.components[h] += AlphaCochain(a[h].nu(1), a[h].alpha(1));
    if (b[h].order() >= 1)
      diff.components[h] -= AlphaCochain(b[h].nu(1), b[h].alpha(1));
  }
  return complex.invariant_preimage(diff).has_value();
}

} // namespace hplie

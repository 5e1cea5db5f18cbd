#include "hplie/io.hpp"

#include <array>
#include <fstream>
#include <set>
#include <tuple>

namespace hplie::io
{

namespace
{

[[noreturn]] void fail(std::string const &path, std::string const &what)
{
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

Json const &field(Json const &obj, std::string const &path, char const *key)
{
  if (!obj.is_object())
    fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    fail(path + "/" + key, "missing field");
  return *it;
}

Rational rational_at(Json const &j, std::string const &path)
{
  if (j.is_number_integer())
    return Rational(std::to_string(j.get<long long>()), 10);
  if (!j.is_string())
    fail(path, "expected a rational string such as \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (std::invalid_argument const &e) {
    fail(path, e.what());
  }
}

std::size_t count_at(Json const &j, std::string const &path)
{
  if (!j.is_number_unsigned())
    fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

// 1-based index in [1, bound], returned 0-based.
std::size_t index_at(Json const &j, std::string const &path, std::size_t bound)
{
  auto const i = count_at(j, path);
  if (i < 1 || i > bound)
    fail(path, "index " + std::to_string(i) + " outside 1.." + std::to_string(bound));
  return i - 1;
}

Json const &array_at(Json const &j, std::string const &path)
{
  if (!j.is_array())
    fail(path, "expected an array");
  return j;
}

Matrix matrix_at(Json const &j, std::string const &path, std::size_t rows, std::size_t cols)
{
  array_at(j, path);
  if (j.size() != rows)
    fail(path, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto const rp = path + "/" + std::to_string(r);
    array_at(j[r], rp);
    if (j[r].size() != cols)
      fail(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rational_at(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

MultiMap mult_at(Json const &j, std::string const &path, std::size_t d)
{
  array_at(j, path);
  MultiMap m(2, d, d);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < j.size(); ++n) {
    auto const ep = path + "/" + std::to_string(n);
    auto const i = index_at(field(j[n], ep, "i"), ep + "/i", d);
    auto const jj = index_at(field(j[n], ep, "j"), ep + "/j", d);
    auto const k = index_at(field(j[n], ep, "k"), ep + "/k", d);
    if (!seen.insert({i, jj, k}).second)
      fail(ep, "duplicate structure constant");
    std::array<std::size_t, 2> const idx{i, jj};
    m.at(idx, k) = rational_at(field(j[n], ep, "value"), ep + "/value");
  }
  return m;
}

Json rational_json(Rational const &q) { return to_string(q); }

// Terms of a deformation over `base`, with orders checked against `order`.
TruncatedDeformation terms_at(Json const &terms, std::string const &path, std::size_t order,
                              HomPreLieAlgebra const &base)
{
  array_at(terms, path);
  auto const d = base.dim();
  std::vector<MultiMap> nu, alpha;
  std::size_t expected = 0;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    auto const tp = path + "/" + std::to_string(n);
    auto const o = count_at(field(terms[n], tp, "order"), tp + "/order");
    if (n == 0 && o == 1) {
      nu.push_back(base.mult());
      alpha.push_back(base.alpha());
      expected = 1;
    }
    if (o != expected)
      fail(tp + "/order", "orders must run contiguously from 0 or 1");
    ++expected;
    nu.push_back(terms[n].contains("mult") ? mult_at(terms[n]["mult"], tp + "/mult", d)
                                           : MultiMap(2, d, d));
    alpha.push_back(terms[n].contains("alpha")
                        ? MultiMap::from_matrix(matrix_at(terms[n]["alpha"], tp + "/alpha", d, d))
                        : MultiMap(1, d, d));
  }
  if (nu.empty()) {
    nu.push_back(base.mult());
    alpha.push_back(base.alpha());
  }
  if (nu.size() != order + 1)
    fail(path, "terms must reach the declared order " + std::to_string(order));
  try {
    return TruncatedDeformation(base, std::move(nu), std::move(alpha));
  } catch (std::invalid_argument const &e) {
    fail(path, e.what());
  }
}

Json terms_json(TruncatedDeformation const &d)
{
  Json terms = Json::array();
  for (std::size_t n = 1; n <= d.order(); ++n) {
    Json t;
    t["order"] = n;
    t["mult"] = Json::array();
    for_each_index(d.dim(), 2, [&](MultiIndex const &idx) {
      for (std::size_t k = 0; k < d.dim(); ++k) {
        auto const &v = d.nu(n).at(idx, k);
        if (v != 0)
          t["mult"].push_back(
              {{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"k", k + 1}, {"value", rational_json(v)}});
      }
    });
    t["alpha"] = matrix_to_json(d.alpha(n).as_matrix());
    terms.push_back(std::move(t));
  }
  return terms;
}

} // namespace

Json read_json(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (nlohmann::json::parse_error const &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

AlgebraData algebra_data_from_json(Json const &doc)
{
  auto const d = count_at(field(doc, "", "dim"), "/dim");
  auto mult = mult_at(field(doc, "", "mult"), "/mult", d);
  auto alpha = matrix_at(field(doc, "", "alpha"), "/alpha", d, d);
  return {std::move(mult), MultiMap::from_matrix(alpha)};
}

HomPreLieAlgebra algebra_from_json(Json const &doc)
{
  auto data = algebra_data_from_json(doc);
  return HomPreLieAlgebra(std::move(data.mult), std::move(data.alpha));
}

Json algebra_to_json(HomPreLieAlgebra const &a)
{
  Json doc;
  doc["dim"] = a.dim();
  doc["mult"] = Json::array();
  for_each_index(a.dim(), 2, [&](MultiIndex const &idx) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
      auto const &v = a.mult().at(idx, k);
      if (v != 0)
        doc["mult"].push_back(
            {{"i", idx[0] + 1}, {"j", idx[1] + 1}, {"k", k + 1}, {"value", rational_json(v)}});
    }
  });
  doc["alpha"] = matrix_to_json(a.alpha_matrix());
  return doc;
}

ActionData action_data_from_json(Json const &doc, std::filesystem::path const &base_dir)
{
  auto const &alg = field(doc, "", "algebra");
  auto algebra = [&] {
    if (alg.is_string())
      return algebra_from_json(read_json(base_dir / alg.get<std::string>()));
    return algebra_from_json(alg);
  }();

  auto const &table_doc = array_at(field(doc, "", "group"), "/group");
  auto const m = table_doc.size();
  std::vector<std::vector<std::size_t>> table(m);
  for (std::size_t r = 0; r < m; ++r) {
    auto const rp = "/group/" + std::to_string(r);
    array_at(table_doc[r], rp);
    if (table_doc[r].size() != m)
      fail(rp, "multiplication table must be square");
    for (std::size_t c = 0; c < m; ++c)
      table[r].push_back(index_at(table_doc[r][c], rp + "/" + std::to_string(c), m));
  }
  auto const &maps_doc = array_at(field(doc, "", "maps"), "/maps");
  if (maps_doc.size() != m)
    fail("/maps", "need one matrix per group element");
  std::vector<Matrix> maps;
  for (std::size_t g = 0; g < m; ++g)
    maps.push_back(matrix_at(maps_doc[g], "/maps/" + std::to_string(g), algebra.dim(), algebra.dim()));
  if (m == 0)
    fail("/group", "empty multiplication table");
  return {FiniteGroup(std::move(table)), std::move(algebra), std::move(maps)};
}

Json action_to_json(GroupAction const &act)
{
  Json doc;
  doc["algebra"] = algebra_to_json(act.algebra());
  doc["group"] = Json::array();
  for (auto const &row : act.group().table()) {
    Json r = Json::array();
    for (auto x : row)
      r.push_back(x + 1);
    doc["group"].push_back(std::move(r));
  }
  doc["maps"] = Json::array();
  for (auto const &m : act.maps())
    doc["maps"].push_back(matrix_to_json(m));
  return doc;
}

TruncatedDeformation deformation_from_json(Json const &doc, HomPreLieAlgebra const &base)
{
  auto const order = count_at(field(doc, "", "order"), "/order");
  return terms_at(field(doc, "", "terms"), "/terms", order, base);
}

std::optional<EquivariantFamily> family_from_json(Json const &doc, OrbitDiagram const &diagram)
{
  if (!doc.is_object() || !doc.contains("subgroups"))
    return std::nullopt;
  auto const order = count_at(field(doc, "", "order"), "/order");
  auto const &sections = array_at(doc["subgroups"], "/subgroups");
  auto const &group = diagram.action().group();
  std::vector<std::optional<TruncatedDeformation>> slots(diagram.subgroups().size());
  for (std::size_t n = 0; n < sections.size(); ++n) {
    auto const sp = "/subgroups/" + std::to_string(n);
    auto const &elems = array_at(field(sections[n], sp, "elements"), sp + "/elements");
    std::vector<std::size_t> e;
    for (std::size_t i = 0; i < elems.size(); ++i)
      e.push_back(index_at(elems[i], sp + "/elements/" + std::to_string(i), group.order()));
    std::size_t pos = 0;
    try {
      pos = diagram.position(make_subgroup(group, e));
    } catch (std::exception const &ex) {
      fail(sp + "/elements", ex.what());
    }
    if (slots[pos])
      fail(sp, "subgroup listed twice");
    slots[pos] = terms_at(field(sections[n], sp, "terms"), sp + "/terms", order,
                          diagram.fixed()[pos].induced);
  }
  EquivariantFamily family;
  for (std::size_t h = 0; h < slots.size(); ++h) {
    if (!slots[h])
      fail("/subgroups", "no section for subgroup " + std::to_string(h + 1) +
                             " of the canonical list");
    family.push_back(std::move(*slots[h]));
  }
  return family;
}

Json deformation_to_json(TruncatedDeformation const &d)
{
  Json doc;
  doc["order"] = d.order();
  doc["terms"] = terms_json(d);
  return doc;
}

Json family_to_json(OrbitDiagram const &diagram, EquivariantFamily const &family)
{
  Json doc;
  doc["order"] = family.empty() ? 0 : family.front().order();
  doc["subgroups"] = Json::array();
  for (std::size_t h = 0; h < family.size(); ++h) {
    Json elems = Json::array();
    for (auto x : diagram.subgroups()[h].elements)
      elems.push_back(x + 1);
    doc["subgroups"].push_back({{"elements", std::move(elems)}, {"terms", terms_json(family[h])}});
  }
  return doc;
}

FormalIso iso_from_json(Json const &doc, std::size_t dim)
{
  auto const order = count_at(field(doc, "", "order"), "/order");
  std::vector<Matrix> terms(order + 1, Matrix(dim, dim));
  terms[0] = Matrix::identity(dim);
  std::vector<bool> seen(order + 1, false);
  auto const &list = array_at(field(doc, "", "terms"), "/terms");
  for (std::size_t n = 0; n < list.size(); ++n) {
    auto const tp = "/terms/" + std::to_string(n);
    auto const o = count_at(field(list[n], tp, "order"), tp + "/order");
    if (o < 1 || o > order)
      fail(tp + "/order", "iso terms run over orders 1.." + std::to_string(order));
    if (seen[o])
      fail(tp + "/order", "order listed twice");
    seen[o] = true;
    terms[o] = matrix_at(field(list[n], tp, "matrix"), tp + "/matrix", dim, dim);
  }
  return FormalIso(std::move(terms));
}

Json iso_to_json(FormalIso const &iso)
{
  Json doc;
  doc["order"] = iso.order();
  doc["terms"] = Json::array();
  for (std::size_t n = 1; n <= iso.order(); ++n)
    doc["terms"].push_back({{"order", n}, {"matrix", matrix_to_json(iso.term(n))}});
  return doc;
}

Json matrix_to_json(Matrix const &m)
{
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows.push_back(vector_to_json(m.row(r)));
  return rows;
}

Json vector_to_json(Vector const &v)
{
  Json out = Json::array();
  for (auto const &x : v)
    out.push_back(rational_json(x));
  return out;
}

Json multimap_to_json(MultiMap const &m)
{
  Json out = Json::array();
  for_each_index(m.domain_dim(), m.arity(), [&](MultiIndex const &idx) {
    for (std::size_t k = 0; k < m.codomain_dim(); ++k) {
      auto const &v = m.at(idx, k);
      if (v == 0)
        continue;
      Json inputs = Json::array();
      for (auto i : idx)
        inputs.push_back(i + 1);
      out.push_back({{"inputs", std::move(inputs)}, {"output", k + 1}, {"value", rational_json(v)}});
    }
  });
  return out;
}

Json cochain_to_json(AlphaCochain const &c)
{
  return {{"degree", c.degree()}, {"phi", multimap_to_json(c.phi())}, {"psi", multimap_to_json(c.psi())}};
}

Json report_to_json(ValidationReport const &r)
{
  Json defects = Json::array();
  for (auto const &d : r.defects) {
    Json j;
    j["condition"] = d.condition;
    j["indices"] = d.indices;
    if (d.order)
      j["order"] = *d.order;
    j["defect"] = vector_to_json(d.defect);
    defects.push_back(std::move(j));
  }
  return {{"ok", r.ok()}, {"defects", std::move(defects)}};
}

} // namespace hplie::io

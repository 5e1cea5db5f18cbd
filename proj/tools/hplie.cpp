// Command-line front end. Every command prints one JSON report (or a text
// summary) on stdout. Exit codes: 0 all checks passed, 1 negative
// mathematical verdict, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hplie/io.hpp"

using namespace hplie;
using io::Json;

namespace
{

constexpr int kPass = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Outcome
{
  Json report;
  int code;
};

// Thrown for a document that parses but describes an invalid structure.
struct Rejected
{
  Json report;
};

std::size_t resolve_max_degree(std::optional<std::size_t> flag)
{
  if (flag)
    return *flag;
  if (char const *env = std::getenv("HOMPRELIE_MAX_DEGREE")) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(env, &pos);
    } catch (std::exception const &) {
      pos = 0;
    }
    if (pos == 0 || env[pos] != '\0')
      throw std::invalid_argument("HOMPRELIE_MAX_DEGREE: expected a positive integer");
    return v;
  }
  return AlphaComplex::kDefaultDegreeCap;
}

std::size_t checked_degree(std::size_t n)
{
  if (n < 1)
    throw std::invalid_argument("max degree must be at least 1");
  return n;
}

HomPreLieAlgebra load_algebra(std::string const &path)
{
  auto data = io::algebra_data_from_json(io::read_json(path));
  auto const dim = data.mult.domain_dim();
  auto report = validate_hom_pre_lie(dim, data.mult, data.alpha);
  if (!report.ok())
    throw Rejected{{{"valid", false}, {"hom_pre_lie", io::report_to_json(report)}}};
  return HomPreLieAlgebra(std::move(data.mult), std::move(data.alpha));
}

Json infinitesimal_json(std::optional<std::pair<std::size_t, AlphaCochain>> const &inf)
{
  if (!inf)
    return nullptr;
  return {{"order", inf->first}, {"cochain", io::cochain_to_json(inf->second)}};
}

Outcome cmd_validate(std::string const &algebra)
{
  auto data = io::algebra_data_from_json(io::read_json(algebra));
  auto const dim = data.mult.domain_dim();
  auto const report = validate_hom_pre_lie(dim, data.mult, data.alpha);
  Json out;
  out["command"] = "validate";
  out["dim"] = dim;
  out["valid"] = report.ok();
  out["hom_pre_lie"] = io::report_to_json(report);
  if (!report.ok()) {
    out["regular"] = nullptr;
    out["sub_adjacent"] = nullptr;
    return {out, kNegative};
  }
  HomPreLieAlgebra const a(std::move(data.mult), std::move(data.alpha));
  auto const lie = commutator_algebra(a);
  auto const bracket = validate_hom_lie(dim, lie.bracket(), lie.alpha());
  out["regular"] = is_regular(a);
  out["sub_adjacent"] = io::report_to_json(bracket);
  return {out, bracket.ok() ? kPass : kNegative};
}

Outcome cmd_cohomology(std::string const &algebra, std::size_t cap)
{
  auto const a = load_algebra(algebra);
  Json out;
  out["command"] = "cohomology";
  out["max_degree"] = cap;
  try {
    AlphaComplex const c(regular_representation(a), cap);
    out["square_zero"] = {{"passed", true}, {"pairs_checked", cap - 1}};
    Json rows = Json::array();
    for (std::size_t n = 1; n <= cap; ++n)
      rows.push_back({{"degree", n},
                      {"cochain_dim", c.cochain_dim(n)},
                      {"cocycle_dim", c.cocycle_dim(n)},
                      {"cohomology_dim", c.cohomology_dim(n)}});
    out["degrees"] = std::move(rows);
    return {out, kPass};
  } catch (SquareZeroFailure const &e) {
    out["square_zero"] = {{"passed", false}, {"message", e.what()}};
    return {out, kNegative};
  }
}

Outcome cmd_check_deformation(std::string const &algebra, std::string const &deformation)
{
  auto const a = load_algebra(algebra);
  auto const d = io::deformation_from_json(io::read_json(deformation), a);
  Json out;
  out["command"] = "check-deformation";
  out["order"] = d.order();
  Json orders = Json::array();
  for (std::size_t n = 0; n <= d.order(); ++n) {
    auto const r = residuals(d, n);
    orders.push_back({{"order", n},
                      {"zero", r.is_zero()},
                      {"left_symmetry", io::multimap_to_json(r.phi())},
                      {"multiplicativity", io::multimap_to_json(r.psi())}});
  }
  out["residuals"] = std::move(orders);
  auto const report = validate_deformation(d);
  out["valid"] = report.ok();
  auto const inf = infinitesimal(d);
  out["infinitesimal"] = infinitesimal_json(inf);
  bool cocycle = true;
  if (inf) {
    cocycle = d_total(regular_representation(a), inf->second).is_zero();
    out["infinitesimal"]["cocycle"] = cocycle;
  }
  return {out, report.ok() && cocycle ? kPass : kNegative};
}

Outcome cmd_obstruction(std::string const &algebra, std::string const &deformation, bool want_extension)
{
  auto const a = load_algebra(algebra);
  auto const d = io::deformation_from_json(io::read_json(deformation), a);
  Json out;
  out["command"] = "obstruction";
  out["order"] = d.order();
  auto const report = validate_deformation(d);
  if (!report.ok()) {
    out["valid"] = false;
    out["defects"] = io::report_to_json(report);
    return {out, kNegative};
  }
  out["valid"] = true;
  AlphaCochain o = AlphaCochain::zero(3, a.dim(), a.dim());
  try {
    o = obstruction(d);
  } catch (std::logic_error const &e) {
    out["closed"] = false;
    out["message"] = e.what();
    return {out, kNegative};
  }
  out["obstruction"] = io::cochain_to_json(o);
  out["zero"] = o.is_zero();
  out["closed"] = true;
  if (!want_extension)
    return {out, kPass};
  auto const ext = extend(d);
  out["extendable"] = ext.has_value();
  if (!ext) {
    out["verdict"] = "not extendable";
    out["witness"] = io::cochain_to_json(o);
    return {out, kNegative};
  }
  out["extension"] = io::deformation_to_json(d.extended(ext->first, ext->second));
  return {out, kPass};
}

Outcome cmd_equivalence(std::string const &algebra, std::vector<std::string> const &deformations,
                        std::optional<std::string> const &iso_path)
{
  auto const a = load_algebra(algebra);
  if (deformations.empty() || deformations.size() > 2)
    throw std::invalid_argument("equivalence: pass one or two --deformation files");
  if (deformations.size() == 1 && !iso_path)
    throw std::invalid_argument("equivalence: one deformation needs an --iso file");
  auto const d1 = io::deformation_from_json(io::read_json(deformations[0]), a);
  Json out;
  out["command"] = "equivalence";
  std::optional<TruncatedDeformation> moved;
  if (iso_path) {
    auto const iso = io::iso_from_json(io::read_json(*iso_path), a.dim());
    moved = transform(d1, iso);
  }
  if (deformations.size() == 1) {
    out["transformed"] = io::deformation_to_json(*moved);
    out["valid"] = validate_deformation(*moved).ok();
    return {out, out["valid"].get<bool>() || !validate_deformation(d1).ok() ? kPass : kNegative};
  }
  auto const d2 = io::deformation_from_json(io::read_json(deformations[1]), a);
  bool const coh = cohomologous_infinitesimals(d1, d2);
  out["cohomologous_infinitesimals"] = coh;
  bool ok = coh;
  if (moved) {
    bool const eq = *moved == d2;
    out["equivalent_under_iso"] = eq;
    ok = ok && eq;
  }
  return {out, ok ? kPass : kNegative};
}

Outcome cmd_rigidity(std::string const &algebra, std::string const &deformation, std::size_t max_steps)
{
  auto const a = load_algebra(algebra);
  auto const d = io::deformation_from_json(io::read_json(deformation), a);
  Json out;
  out["command"] = "rigidity-probe";
  auto const report = validate_deformation(d);
  if (!report.ok()) {
    out["valid"] = false;
    out["defects"] = io::report_to_json(report);
    return {out, kNegative};
  }
  auto const r = rigidity_probe(d, max_steps);
  out["valid"] = true;
  out["status"] = to_string(r.status);
  out["steps"] = r.steps;
  out["result"] = io::deformation_to_json(r.result);
  out["witness"] = infinitesimal_json(r.witness);
  return {out, r.status == RigidityReport::Status::ReducedToTrivial ? kPass : kNegative};
}

Outcome cmd_equivariant(std::string const &action_path, std::size_t cap,
                        std::optional<std::string> const &deformation)
{
  auto const dir = std::filesystem::path(action_path).parent_path();
  auto data = io::action_data_from_json(io::read_json(action_path), dir);
  auto const report = validate_action(data.group, data.algebra, data.maps);
  if (!report.ok())
    throw Rejected{{{"valid", false}, {"action", io::report_to_json(report)}}};
  OrbitDiagram const diagram(GroupAction(data.group, data.algebra, data.maps));
  EquivariantComplex const complex(diagram, cap);

  Json out;
  out["command"] = "equivariant";
  out["group_order"] = diagram.action().group().order();
  Json subs = Json::array();
  for (std::size_t h = 0; h < diagram.subgroups().size(); ++h) {
    Json elems = Json::array();
    for (auto x : diagram.subgroups()[h].elements)
      elems.push_back(x + 1);
    subs.push_back({{"index", h + 1}, {"elements", std::move(elems)}, {"fixed_dim", diagram.fixed()[h].dim()}});
  }
  out["subgroups"] = std::move(subs);
  out["subconjugacy_triples"] = diagram.morphisms().size();
  out["max_degree"] = cap;
  Json rows = Json::array();
  for (std::size_t n = 1; n <= cap; ++n)
    rows.push_back({{"degree", n},
                    {"invariant_dim", complex.invariant_dim(n)},
                    {"cohomology_dim", complex.cohomology_dim(n)}});
  out["degrees"] = std::move(rows);
  if (!deformation)
    return {out, kPass};

  auto const doc = io::read_json(*deformation);
  auto family = io::family_from_json(doc, diagram);
  if (!family)
    family = restrict_deformation(diagram, io::deformation_from_json(doc, diagram.action().algebra()));
  Json def;
  auto const verdict = validate_equivariant_deformation(diagram, *family);
  def["valid"] = verdict.ok();
  def["defects"] = io::report_to_json(verdict);
  if (verdict.ok()) {
    std::optional<EquivariantComplex> small;
    if (cap < 2)
      small.emplace(diagram, 2);
    auto const &c = small ? *small : complex;
    auto const inf = equivariant_infinitesimal(c, *family);
    if (inf)
      def["infinitesimal"] = {{"order", inf->first},
                              {"cocycle", true},
                              {"coboundary", c.invariant_preimage(inf->second).has_value()}};
    else
      def["infinitesimal"] = nullptr;
    auto const o = equivariant_obstruction(c, *family);
    def["obstruction"] = {{"zero", o.obstruction.is_zero()}, {"extendable", o.extension.has_value()}};
  }
  out["deformation"] = std::move(def);
  return {out, verdict.ok() ? kPass : kNegative};
}

// ---------------------------------------------------------------------------
// Text rendering

std::string render_text(Json const &r)
{
  std::ostringstream os;
  auto const cmd = r.value("command", std::string());
  if (r.contains("valid") && !r["valid"].get<bool>() && cmd.empty()) {
    os << "invalid input structure\n";
    for (auto const &[key, rep] : r.items())
      if (rep.is_object() && rep.contains("defects"))
        for (auto const &d : rep["defects"])
          os << "  " << d["condition"].get<std::string>() << " at " << d["indices"].dump() << "\n";
    return os.str();
  }
  os << cmd << "\n";
  if (cmd == "validate") {
    os << "  valid: " << r["valid"] << "\n";
    for (auto const &d : r["hom_pre_lie"]["defects"])
      os << "  " << d["condition"].get<std::string>() << " fails at " << d["indices"].dump()
         << " by " << d["defect"].dump() << "\n";
    if (r["valid"].get<bool>())
      os << "  regular: " << r["regular"] << "\n  sub-adjacent Hom-Lie: " << r["sub_adjacent"]["ok"]
         << "\n";
  } else if (cmd == "cohomology" || cmd == "equivariant") {
    if (cmd == "equivariant") {
      os << "  group order " << r["group_order"] << ", " << r["subconjugacy_triples"]
         << " subconjugacy triples\n";
      for (auto const &s : r["subgroups"])
        os << "  H" << s["index"] << " = " << s["elements"].dump() << "  dim A^H = " << s["fixed_dim"] << "\n";
    } else {
      os << "  square zero: " << r["square_zero"]["passed"] << "\n";
    }
    if (r.contains("degrees"))
      for (auto const &d : r["degrees"]) {
        os << "  n = " << d["degree"];
        if (d.contains("invariant_dim"))
          os << "  dim S^n = " << d["invariant_dim"];
        else
          os << "  dim C^n = " << d["cochain_dim"];
        os << "  dim H^n = " << d["cohomology_dim"] << "\n";
      }
    if (r.contains("deformation")) {
      auto const &d = r["deformation"];
      os << "  deformation valid: " << d["valid"] << "\n";
      if (d.contains("obstruction"))
        os << "  obstruction zero: " << d["obstruction"]["zero"] << "  extendable: "
           << d["obstruction"]["extendable"] << "\n";
    }
  } else {
    for (auto const &[key, v] : r.items())
      if (key != "command" && (v.is_primitive()))
        os << "  " << key << ": " << v.dump() << "\n";
    if (r.contains("infinitesimal") && r["infinitesimal"].is_object())
      os << "  infinitesimal at order " << r["infinitesimal"]["order"] << "\n";
    if (r.contains("witness") && r["witness"].is_object())
      os << "  witness: " << r["witness"].dump() << "\n";
  }
  return os.str();
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Exact cohomology and deformations of multiplicative Hom-pre-Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::string algebra, deformation, action;
  std::vector<std::string> deformations;
  std::optional<std::string> iso, optional_deformation;
  std::optional<std::size_t> max_degree;
  std::size_t max_steps = 0;
  bool want_extension = false;

  auto *validate = app.add_subcommand("validate", "Check the Hom-pre-Lie identities");
  validate->add_option("--algebra", algebra, "Algebra document")->required();

  auto *cohomology = app.add_subcommand("cohomology", "Dimensions of the alpha-type cohomology");
  cohomology->add_option("--algebra", algebra, "Algebra document")->required();
  cohomology->add_option("--max-degree", max_degree, "Degree cap (default 4 or HOMPRELIE_MAX_DEGREE)");

  auto *check = app.add_subcommand("check-deformation", "Residuals and infinitesimal of a deformation");
  check->add_option("--algebra", algebra, "Algebra document")->required();
  check->add_option("--deformation", deformation, "Deformation document")->required();

  auto *obstr = app.add_subcommand("obstruction", "Obstruction to extending a deformation");
  obstr->add_option("--algebra", algebra, "Algebra document")->required();
  obstr->add_option("--deformation", deformation, "Deformation document")->required();
  obstr->add_flag("--extend", want_extension, "Solve for the next order");

  auto *equiv = app.add_subcommand("equivalence", "Transform a deformation or compare two");
  equiv->add_option("--algebra", algebra, "Algebra document")->required();
  equiv->add_option("--deformation", deformations, "One or two deformation documents")
      ->required()
      ->expected(1, 2);
  equiv->add_option("--iso", iso, "Formal isomorphism document");

  auto *rigid = app.add_subcommand("rigidity-probe", "Remove coboundary infinitesimals order by order");
  rigid->add_option("--algebra", algebra, "Algebra document")->required();
  rigid->add_option("--deformation", deformation, "Deformation document")->required();
  rigid->add_option("--max-steps", max_steps, "Step limit")->required();

  auto *eqv = app.add_subcommand("equivariant", "Equivariant cohomology and deformation checks");
  eqv->add_option("--action", action, "Action document")->required();
  eqv->add_option("--max-degree", max_degree, "Degree cap (default 4 or HOMPRELIE_MAX_DEGREE)");
  eqv->add_option("--deformation", optional_deformation, "Deformation document, ambient or per subgroup");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    auto const code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  Outcome outcome;
  try {
    if (*validate)
      outcome = cmd_validate(algebra);
    else if (*cohomology)
      outcome = cmd_cohomology(algebra, checked_degree(resolve_max_degree(max_degree)));
    else if (*check)
      outcome = cmd_check_deformation(algebra, deformation);
    else if (*obstr)
      outcome = cmd_obstruction(algebra, deformation, want_extension);
    else if (*equiv)
      outcome = cmd_equivalence(algebra, deformations, iso);
    else if (*rigid)
      outcome = cmd_rigidity(algebra, deformation, max_steps);
    else
      outcome = cmd_equivariant(action, checked_degree(resolve_max_degree(max_degree)),
                                optional_deformation);
  } catch (Rejected const &r) {
    outcome = {r.report, kNegative};
  } catch (io::ParseError const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (InvalidStructure const &e) {
    outcome = {{{"valid", false}, {"message", e.what()}, {"report", io::report_to_json(e.report())}},
               kNegative};
  } catch (std::invalid_argument const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (std::out_of_range const &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (std::exception const &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kNegative;
  }

  if (format == "text")
    std::cout << render_text(outcome.report);
  else
    std::cout << outcome.report.dump(2) << "\n";
  return outcome.code;
}

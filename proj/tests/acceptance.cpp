// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hplie/io.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace hplie;
using io::Json;

namespace
{

std::string const fixtures = HPLIE_FIXTURES;
std::string const cli = HPLIE_CLI;

// Collects failed checks; the criterion passes when none failed.
struct Tally
{
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, std::string const &what)
  {
    ++checks;
    if (!ok)
      failures.push_back(what);
  }
};

struct Outcome
{
  Tally tally;
  std::string summary;
};

MultiMap phi_from(Vector const &coords, std::size_t arity, std::size_t d)
{
  return MultiMap(arity, d, d, coords);
}

TruncatedDeformation single_term(HomPreLieAlgebra const &a, MultiMap nu1, MultiMap alpha1)
{
  return TruncatedDeformation::from_higher_terms(a, {std::move(nu1)}, {std::move(alpha1)});
}

Outcome golden_fixture()
{
  Outcome o;
  auto &t = o.tally;
  auto const data = io::algebra_data_from_json(io::read_json(fixtures + "/E.json"));
  t.expect(data.mult == fixture::golden_mult(), "E.json product differs from the fixture");
  t.expect(data.alpha.as_matrix() == fixture::golden_alpha(), "E.json alpha differs from the fixture");

  auto const a1 = basis_vector(2, 0), a2 = basis_vector(2, 1);
  auto const a = io::algebra_from_json(io::read_json(fixtures + "/E.json"));
  t.expect(a.product(a2, a1) == a1, "a2.a1 != a1");
  t.expect(a.product(a2, a2) == a1 + a2, "a2.a2 != a1 + a2");
  t.expect(a.product(a1, a1) == Vector(2) && a.product(a1, a2) == Vector(2), "a1 products nonzero");
  t.expect(a.twist(a1) == a1 && a.twist(a2) == a1 + a2, "alpha differs");
  t.expect(validate_hom_pre_lie(2, data.mult, data.alpha).ok(), "Hom-pre-Lie validation failed");
  t.expect(is_regular(a), "alpha is not invertible");

  auto const lie = commutator_algebra(a);
  t.expect(validate_hom_lie(2, lie.bracket(), lie.alpha()).ok(), "commutator fails skew-symmetry or Hom-Jacobi");
  t.expect(lie.bracket().apply(std::vector<Vector>{a2, a1}) == a1, "[a2, a1] != a1");
  o.summary = "E validates, is regular, commutator is Hom-Lie";
  return o;
}

Outcome square_zero()
{
  Outcome o;
  auto &t = o.tally;
  std::size_t algebras = 0;
  for (auto const &[name, a] : fixture::corpus()) {
    ++algebras;
    auto const rep = regular_representation(a);
    auto const d = a.dim();
    for (std::size_t n = 1; n <= 3; ++n) {
      auto const at = name + " n=" + std::to_string(n);
      t.expect(assemble_differential(rep, n + 1) * assemble_differential(rep, n) ==
                   Matrix(cochain_dim(n + 2, d, d), cochain_dim(n, d, d)),
               at + ": D^2 != 0");
      auto const N = [&](std::size_t k) { return assemble_component(rep, Component::NuNu, k); };
      auto const S = [&](std::size_t k) { return assemble_component(rep, Component::NuAlpha, k); };
      auto const X = [&](std::size_t k) { return assemble_component(rep, Component::AlphaAlpha, k); };
      auto const Y = [&](std::size_t k) { return assemble_component(rep, Component::AlphaNu, k); };
      t.expect(N(n + 1) * N(n) == Y(n + 1) * S(n), at + ": NN != YS");
      t.expect(S(n + 1) * N(n) == X(n + 1) * S(n), at + ": SN != XS");
      if (n >= 2) {
        t.expect(N(n + 1) * Y(n) == Y(n + 1) * X(n), at + ": NY != YX");
        t.expect(X(n + 1) * X(n) == S(n + 1) * Y(n), at + ": XX != SY");
      }
    }
  }
  o.summary = std::to_string(algebras) + " algebras, n = 1..3, square zero and four component identities";
  return o;
}

Outcome classical_embedding()
{
  Outcome o;
  auto &t = o.tally;
  auto const a = fixture::golden();
  auto const rep = regular_representation(a);
  std::size_t total = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    // kernel of the nu-alpha component, computed here rather than taken from the library
    auto const basis = nullspace_basis(assemble_component(rep, Component::NuAlpha, n));
    t.expect(basis.size() == classical_subcomplex_dim(rep, n), "subcomplex dimension mismatch");
    for (auto const &v : basis) {
      ++total;
      auto const f = phi_from(v, n, 2);
      auto const dc = d_total(rep, AlphaCochain::from_phi(f));
      t.expect(dc.psi().is_zero(), "second component nonzero at n=" + std::to_string(n));
      t.expect(dc.phi() == fixture::tabulate(n + 1, 2, [&](auto const &x) {
                 return fixture::classical_coboundary(a, f, x);
               }),
               "first component differs from the classical coboundary at n=" + std::to_string(n));
    }
  }
  o.summary = std::to_string(total) + " basis cochains at degrees 1..3 match the classical coboundary";
  return o;
}

Outcome oracle_equivalence()
{
  constexpr int kSamples = 100;
  Outcome o;
  auto &t = o.tally;
  fixture::Generator g(20240601u);
  for (auto const &[name, a] : fixture::corpus()) {
    auto const rep = regular_representation(a);
    fixture::Oracle const orc{a};
    auto const d = a.dim();
    for (std::size_t n = 1; n <= 3; ++n) {
      auto const N = assemble_component(rep, Component::NuNu, n);
      auto const S = assemble_component(rep, Component::NuAlpha, n);
      auto const D = assemble_differential(rep, n);
      Matrix X, Y;
      if (n >= 2) {
        X = assemble_component(rep, Component::AlphaAlpha, n);
        Y = assemble_component(rep, Component::AlphaNu, n);
      }
      auto const at = name + " n=" + std::to_string(n);
      for (int s = 0; s < kSamples; ++s) {
        auto const c = g.cochain(n, d, d);
        t.expect(d_nu_nu(rep, c.phi()).coeffs() == N * c.phi().coeffs(), at + ": nu-nu");
        t.expect(d_nu_alpha(rep, c.phi()).coeffs() == S * c.phi().coeffs(), at + ": nu-alpha");
        if (n >= 2) {
          t.expect(d_alpha_alpha(rep, c.psi()).coeffs() == X * c.psi().coeffs(), at + ": alpha-alpha");
          t.expect(d_alpha_nu(rep, c.psi()).coeffs() == Y * c.psi().coeffs(), at + ": alpha-nu");
        }
        t.expect(d_total(rep, c).coordinates() == D * c.coordinates(), at + ": total");

        // hand-written closed forms at low arity
        if (n == 1) {
          t.expect(d_nu_nu(rep, c.phi()) ==
                       fixture::tabulate(2, d, [&](auto const &v) { return orc.nn1(c.phi(), v[0], v[1]); }),
                   at + ": closed-form nu-nu");
          t.expect(d_nu_alpha(rep, c.phi()) == fixture::tabulate(1, d, [&](auto const &v) {
                     return orc.na(c.phi(), v);
                   }),
                   at + ": closed-form nu-alpha");
        }
        if (n == 2) {
          t.expect(d_nu_nu(rep, c.phi()) == fixture::tabulate(3, d, [&](auto const &v) {
                     return orc.nn2(c.phi(), v[0], v[1], v[2]);
                   }),
                   at + ": closed-form nu-nu");
          t.expect(d_nu_alpha(rep, c.phi()) == fixture::tabulate(2, d, [&](auto const &v) {
                     return orc.na(c.phi(), v);
                   }),
                   at + ": closed-form nu-alpha");
          t.expect(d_alpha_alpha(rep, c.psi()) == fixture::tabulate(2, d, [&](auto const &v) {
                     return orc.aa2(c.psi(), v[0], v[1]);
                   }),
                   at + ": closed-form alpha-alpha");
          t.expect(d_alpha_nu(rep, c.psi()) == fixture::tabulate(3, d, [&](auto const &v) {
                     return orc.an2(c.psi(), v[0], v[1], v[2]);
                   }),
                   at + ": closed-form alpha-nu");
        }
      }
    }
  }
  o.summary = std::to_string(kSamples) + " random cochains per degree 1..3 on every corpus algebra";
  return o;
}

Outcome deformation_identities()
{
  Outcome o;
  auto &t = o.tally;
  fixture::Generator g(20240602u);

  // (a) The order-1 equations are (d_nu_nu nu1 - d_alpha_nu alpha1, d_nu_alpha nu1 - d_alpha_alpha alpha1) = 0
  // with the differentials as displayed; the defining sums produce that pair with the opposite sign.
  std::size_t singles = 0;
  for (auto const &[name, a] : fixture::corpus()) {
    auto const rep = regular_representation(a);
    for (int s = 0; s < 10; ++s) {
      ++singles;
      auto const d = single_term(a, g.multimap(2, a.dim(), a.dim()), g.multimap(1, a.dim(), a.dim()));
      auto const c = AlphaCochain(d.nu(1), d.alpha(1));
      auto const pair = AlphaCochain(d_nu_nu(rep, c.phi()) - d_alpha_nu(rep, c.psi()),
                                     d_nu_alpha(rep, c.phi()) - d_alpha_alpha(rep, c.psi()));
      t.expect(d_total(rep, c) == pair, name + ": d_total is not the displayed pair");
      t.expect(residuals(d, 1) == Rational(-1) * pair, name + ": order-1 residual");
    }
  }

  std::size_t count = 0;
  for (auto const &[name, d] : fixture::deformation_corpus()) {
    ++count;
    auto const rep = regular_representation(d.base());
    t.expect(validate_deformation(d).ok(), name + ": corpus deformation invalid");

    // (b)
    if (auto const inf = infinitesimal(d))
      t.expect(d_total(rep, inf->second).is_zero(), name + ": infinitesimal not a cocycle");

    // (c)
    for (std::size_t k = 1; k <= d.order(); ++k)
      t.expect(d_total(rep, obstruction(d.truncated(k))).is_zero(),
               name + ": obstruction not closed at order " + std::to_string(k));

    // (d)
    auto const head = d.truncated(1);
    t.expect(obstruction(head) == d_total(rep, AlphaCochain(d.nu(2), d.alpha(2))),
             name + ": obstruction is not the coboundary of the second term");
    auto const ext = extend(head);
    t.expect(ext.has_value(), name + ": truncation not extendable");
    if (ext)
      t.expect(validate_deformation(head.extended(ext->first, ext->second)).ok(),
               name + ": extension does not validate");
  }
  o.summary = std::to_string(singles) + " single-term residuals equal -d_total; " + std::to_string(count) +
              " corpus deformations: cocycle infinitesimals, closed obstructions, extensions validate";
  return o;
}

Outcome equivalence_rigidity()
{
  Outcome o;
  auto &t = o.tally;
  fixture::Generator g(20240603u);
  std::size_t transforms = 0;
  for (auto const &[name, a] : fixture::corpus()) {
    auto const rep = regular_representation(a);
    auto const d = a.dim();
    for (std::size_t N = 1; N <= 3; ++N) {
      ++transforms;
      auto const phi = g.matrix(d, d);
      auto const f = MultiMap::from_matrix(phi);
      auto const moved = transform(TruncatedDeformation::trivial(a, N), FormalIso::elementary(phi, 1, N));
      // nu'_1(a, b) = a.phi(b) + phi(a).b - phi(a.b), alpha'_1 = alpha phi - phi alpha
      auto const expected_nu = fixture::tabulate(2, d, [&](auto const &v) {
        return a.product(v[0], phi * v[1]) + a.product(phi * v[0], v[1]) - phi * a.product(v[0], v[1]);
      });
      auto const expected_alpha = MultiMap::from_matrix(a.alpha_matrix() * phi - phi * a.alpha_matrix());
      t.expect(moved.nu(1) == expected_nu, name + ": transformed nu_1");
      t.expect(moved.alpha(1) == expected_alpha, name + ": transformed alpha_1");
      t.expect(moved.nu(1) == d_nu_nu(rep, f) && moved.alpha(1) == d_nu_alpha(rep, f),
               name + ": transformed term is not (d_nu_nu phi, d_nu_alpha phi)");

      auto const r = rigidity_probe(moved, N);
      t.expect(r.status == RigidityReport::Status::ReducedToTrivial && r.steps <= N && r.result.is_trivial(),
               name + ": rigidity probe did not reduce within N steps");
    }
  }
  std::size_t pairs = 0;
  for (auto const &[name, d] : fixture::deformation_corpus())
    for (int s = 0; s < 3; ++s) {
      ++pairs;
      t.expect(cohomologous_infinitesimals(d, transform(d, g.iso(d.dim(), d.order()))),
               name + ": transform not cohomologous");
    }
  o.summary = std::to_string(transforms) + " elementary transforms reduced; " + std::to_string(pairs) +
              " deformation/transform pairs cohomologous";
  return o;
}

Outcome trivial_group()
{
  Outcome o;
  auto &t = o.tally;
  auto const e = fixture::golden();
  EquivariantComplex const eq(OrbitDiagram(GroupAction::identity(FiniteGroup::trivial(), e)), 4);
  AlphaComplex const plain(regular_representation(e), 4);
  std::ostringstream dims;
  for (std::size_t n = 1; n <= 4; ++n) {
    t.expect(eq.invariant_dim(n) == cochain_dim(n, 2, 2), "dim S^" + std::to_string(n));
    t.expect(eq.cohomology_dim(n) == plain.cohomology_dim(n), "H_G^" + std::to_string(n));
    dims << (n > 1 ? "," : "") << plain.cohomology_dim(n);
  }
  o.summary = "trivial group on E matches plain cohomology, dims " + dims.str();
  return o;
}

Outcome parity()
{
  Outcome o;
  auto &t = o.tally;
  EquivariantComplex const c(OrbitDiagram(fixture::negation(2)), 4);
  t.expect(c.invariant_dim(2) == 4, "dim S^2 != 4");
  t.expect(c.invariant_dim(3) == 16, "dim S^3 != 16");
  for (std::size_t n = 1; n <= 4; ++n) {
    t.expect((c.differential(n) * c.invariant_basis(n)).is_zero(), "differential nonzero at n=" + std::to_string(n));
    t.expect(c.cohomology_dim(n) == c.invariant_dim(n), "H_G != S at n=" + std::to_string(n));
  }
  o.summary = "dim S^2 = 4, dim S^3 = 16, differentials vanish, H_G = S";
  return o;
}

Outcome fixed_point_gates()
{
  constexpr std::size_t kCap = 4;
  Outcome o;
  auto &t = o.tally;
  std::size_t pairs = 0;
  for (auto const &[name, act] : fixture::action_corpus()) {
    auto const &a = act.algebra();
    for (auto const &h : subgroups(act.group())) {
      ++pairs;
      auto const f = fixed_subalgebra(act, h);
      auto const &in = f.inclusion;
      auto const &b = f.induced;
      t.expect(validate_hom_pre_lie(b.dim(), b.mult(), b.alpha()).ok(), name + ": fixed subalgebra invalid");
      for (auto x : h.elements)
        t.expect(act.map(x) * in == in, name + ": inclusion not fixed");
      for (std::size_t i = 0; i < f.dim(); ++i) {
        auto const ei = basis_vector(f.dim(), i);
        t.expect(in * b.twist(ei) == a.twist(in * ei), name + ": induced alpha");
        for (std::size_t j = 0; j < f.dim(); ++j) {
          auto const ej = basis_vector(f.dim(), j);
          t.expect(in * b.product(ei, ej) == a.product(in * ei, in * ej), name + ": induced product");
        }
      }
    }
    try {
      EquivariantComplex const c(OrbitDiagram(act), kCap);
      for (std::size_t n = 1; n < kCap; ++n) {
        auto const image = c.differential(n) * c.invariant_basis(n);
        t.expect((invariance_constraint_matrix(c.diagram(), n + 1) * image).is_zero(),
                 name + ": differential leaves the invariant subspace at n=" + std::to_string(n));
      }
    } catch (InvarianceFailure const &e) {
      t.expect(false, name + ": " + e.what());
    }
  }
  o.summary = std::to_string(pairs) + " (action, subgroup) fixed subalgebras validate; invariant subspace preserved up to degree " +
              std::to_string(kCap);
  return o;
}

struct Run
{
  int code;
  std::string out;
};

Run run_cli(std::string const &args)
{
  auto const cmd = cli + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    throw std::runtime_error("cannot start " + cli);
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p))
    out.append(buf, n);
  int const status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_contract()
{
  Outcome o;
  auto &t = o.tally;
  auto twice = [&](std::string const &label, std::string const &args) {
    auto const first = run_cli(args);
    auto const second = run_cli(args);
    t.expect(first.code == 0 && second.code == 0, label + ": exit code " + std::to_string(first.code));
    t.expect(first.out == second.out, label + ": output differs between runs");
    return Json::parse(first.out);
  };

  auto const valid = twice("validate E", "validate --algebra " + fixtures + "/E.json");
  t.expect(valid.at("valid") == true, "validate E: not valid");

  auto const zero = twice("cohomology zero-1", "cohomology --algebra " + fixtures + "/zero-1.json --max-degree 1");
  t.expect(zero.at("degrees").size() == 1 && zero.at("degrees")[0].at("cohomology_dim") == 1,
           "cohomology zero-1: H^1 != 1");

  auto const eq = twice("equivariant trivial E", "equivariant --action " + fixtures + "/trivial-group-E.action.json");
  auto const plain = twice("cohomology E", "cohomology --algebra " + fixtures + "/E.json");
  auto const &rows = eq.at("degrees");
  auto const &plain_rows = plain.at("degrees");
  t.expect(rows.size() == plain_rows.size(), "equivariant trivial E: degree count");
  for (std::size_t i = 0; i < std::min(rows.size(), plain_rows.size()); ++i) {
    t.expect(rows[i].at("cohomology_dim") == plain_rows[i].at("cohomology_dim"), "equivariant trivial E: H row");
    t.expect(rows[i].at("invariant_dim") == plain_rows[i].at("cochain_dim"), "equivariant trivial E: S row");
  }
  o.summary = "validate E exit 0, zero-1 H^1 = 1, trivial-group table equals plain table; byte-identical reruns";
  return o;
}

} // namespace

int main()
{
  std::vector<std::function<Outcome()>> const criteria{
      golden_fixture, square_zero,  classical_embedding, oracle_equivalence, deformation_identities,
      equivalence_rigidity, trivial_group, parity, fixed_point_gates, cli_contract};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (std::exception const &e) {
      o.tally.failures.push_back(std::string("exception: ") + e.what());
    }
    bool const ok = o.tally.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << "criterion " << i + 1 << (ok ? " PASS: " : " FAIL: ");
    if (ok)
      std::cout << o.summary << " (" << o.tally.checks << " checks)\n";
    else
      std::cout << o.tally.failures.size() << " failed, first: " << o.tally.failures.front() << "\n";
  }
  return failed == 0 ? 0 : 1;
}

#ifndef HPLIE_EQUIVARIANT_HPP
#define HPLIE_EQUIVARIANT_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hplie/algebra.hpp"
#include "hplie/cochain.hpp"
#include "hplie/deform.hpp"
#include "hplie/matrix.hpp"

namespace hplie
{

/// Brute-force subgroup enumeration is only attempted up to this order.
inline constexpr std::size_t kMaxGroupOrder = 12;

// Condition ids for group, action and equivariant reports. Group and action
// defects carry 1-based element indices first, then basis indices; the
// defect vector is empty for pure group-law failures.
inline constexpr char const *kGroupAssociativity = "group-associativity"; // (a, b, c)
inline constexpr char const *kGroupIdentity = "group-identity";           // (e)
inline constexpr char const *kGroupInverse = "group-inverse";             // (a)
inline constexpr char const *kActionIdentity = "action-identity";         // (e, i)
inline constexpr char const *kActionComposition = "action-composition";   // (g, h, i)
inline constexpr char const *kActionProduct = "action-product";           // (g, i, j)
inline constexpr char const *kActionAlpha = "action-alpha";               // (g, i)

/// Checks the group axioms on a 0-based table. Throws std::invalid_argument
/// when the table is empty, not square or has entries out of range.
ValidationReport validate_group(std::vector<std::vector<std::size_t>> const &table);

/// A finite group given by its (validated) multiplication table.
class FiniteGroup
{
public:
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t order);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::vector<std::vector<std::size_t>> const &table() const { return table_; }

  friend bool operator==(FiniteGroup const &a, FiniteGroup const &b) { return a.table_ == b.table_; }

private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Sorted element indices of a subgroup.
struct Subgroup
{
  std::vector<std::size_t> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(std::size_t g) const;

  friend auto operator<=>(Subgroup const &a, Subgroup const &b)
  {
    if (a.size() != b.size())
      return a.size() <=> b.size();
    return a.elements <=> b.elements;
  }
  friend bool operator==(Subgroup const &, Subgroup const &) = default;
};

/// Validates closure and identity membership; throws std::invalid_argument.
Subgroup make_subgroup(FiniteGroup const &g, std::vector<std::size_t> elements);

/// All subgroups, sorted by (size, elements). Throws std::invalid_argument
/// when the group order exceeds `max_order`.
std::vector<Subgroup> subgroups(FiniteGroup const &g, std::size_t max_order = kMaxGroupOrder);

/// All g with g^-1 H g contained in K.
std::vector<std::size_t> subconjugacy_morphisms(FiniteGroup const &g, Subgroup const &h,
                                                Subgroup const &k);

/// Checks psi_e = id, psi_{gh} = psi_g psi_h, psi_g(a.b) = psi_g(a).psi_g(b)
/// and alpha psi_g = psi_g alpha on basis elements. `maps[g]` is the matrix
/// of psi_g. Throws std::invalid_argument on shape mismatch.
ValidationReport validate_action(FiniteGroup const &g, HomPreLieAlgebra const &a,
                                 std::vector<Matrix> const &maps);

/// A validated left action of a finite group by algebra automorphisms.
class GroupAction
{
public:
  GroupAction(FiniteGroup group, HomPreLieAlgebra algebra, std::vector<Matrix> maps);

  /// Every element acts as the identity.
  static GroupAction identity(FiniteGroup group, HomPreLieAlgebra algebra);

  FiniteGroup const &group() const { return group_; }
  HomPreLieAlgebra const &algebra() const { return algebra_; }
  Matrix const &map(std::size_t g) const { return maps_.at(g); }
  std::vector<Matrix> const &maps() const { return maps_; }

private:
  FiniteGroup group_;
  HomPreLieAlgebra algebra_;
  std::vector<Matrix> maps_;
};

/// A^H with the induced structure. Columns of `inclusion` are the canonical
/// nullspace basis of the stacked (psi_h - id), in parent coordinates.
struct FixedSubalgebra
{
  Subgroup subgroup;
  Matrix inclusion;
  HomPreLieAlgebra induced;

  std::size_t dim() const { return inclusion.cols(); }
};

/// Throws std::logic_error when a product or alpha-image of fixed vectors
/// leaves the fixed space, or the induced structure fails validation; either
/// means the action was not by automorphisms.
FixedSubalgebra fixed_subalgebra(GroupAction const &act, Subgroup const &h);

/// The orbit-category morphism given by g^-1 H g in K, with psi_g restricted
/// to A^K -> A^H in fixed-basis coordinates.
struct Subconjugacy
{
  std::size_t source; // position of H in the subgroup list
  std::size_t target; // position of K
  std::size_t element;
  Matrix restricted;
};

/// Subgroups, fixed subalgebras and every subconjugacy triple of an action.
class OrbitDiagram
{
public:
  explicit OrbitDiagram(GroupAction act);

  GroupAction const &action() const { return act_; }
  std::vector<Subgroup> const &subgroups() const { return subgroups_; }
  std::vector<FixedSubalgebra> const &fixed() const { return fixed_; }
  std::vector<Subconjugacy> const &morphisms() const { return morphisms_; }

  /// Position of a subgroup in the canonical list; throws std::out_of_range.
  std::size_t position(Subgroup const &h) const;

  /// dim of the ambient space sum_H C^n(A^H, A^H).
  std::size_t ambient_dim(std::size_t degree) const;
  /// Offset of subgroup `h`'s block in ambient coordinates.
  std::size_t block_offset(std::size_t h, std::size_t degree) const;

private:
  GroupAction act_;
  std::vector<Subgroup> subgroups_;
  std::vector<FixedSubalgebra> fixed_;
  std::vector<Subconjugacy> morphisms_;
};

/// One degree-n cochain per subgroup, each over the induced algebra on A^H.
struct EquivariantCochain
{
  std::size_t degree;
  std::vector<AlphaCochain> components;

  static EquivariantCochain zero(OrbitDiagram const &diagram, std::size_t degree);
  static EquivariantCochain from_coordinates(OrbitDiagram const &diagram, std::size_t degree,
                                             Vector const &coords);
  Vector coordinates() const;
  bool is_zero() const;

  friend bool operator==(EquivariantCochain const &, EquivariantCochain const &) = default;
};

/// Rows express c^H o R^(x)n = R o c^K and c^H_alpha o R^(x)n-1 = R o c^K_alpha
/// for every subconjugacy triple, in ambient coordinates. Rows that vanish
/// identically are omitted. S^n is the nullspace.
Matrix invariance_constraint_matrix(OrbitDiagram const &diagram, std::size_t degree);
Matrix invariance_constraint_matrix(GroupAction const &act, std::size_t degree);

bool is_invariant(OrbitDiagram const &diagram, EquivariantCochain const &c);

/// Raised when the block differential leaves the invariant subspace.
class InvarianceFailure : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// The invariant complex S^1 .. S^cap with the block-diagonal differential.
/// Construction checks that the differential maps S^n into S^{n+1} for
/// n < cap and throws InvarianceFailure otherwise; each per-subgroup complex
/// checks its own square-zero identity.
class EquivariantComplex
{
public:
  EquivariantComplex(OrbitDiagram diagram, std::size_t degree_cap = AlphaComplex::kDefaultDegreeCap);

  OrbitDiagram const &diagram() const { return diagram_; }
  std::size_t degree_cap() const { return degree_cap_; }
  AlphaComplex const &block(std::size_t h) const { return *blocks_.at(h); }

  /// Block-diagonal differential on ambient coordinates.
  Matrix differential(std::size_t degree) const;
  /// Columns form the canonical basis of S^n.
  Matrix const &invariant_basis(std::size_t degree) const;
  std::size_t invariant_dim(std::size_t degree) const;
  std::size_t cohomology_dim(std::size_t degree) const;

  EquivariantCochain delta(EquivariantCochain const &c) const;
  /// Some invariant x of degree n - 1 with delta(x) = c, or nullopt.
  std::optional<EquivariantCochain> invariant_preimage(EquivariantCochain const &c) const;

private:
  std::size_t restricted_rank(std::size_t degree) const; // rank of delta on S^n

  OrbitDiagram diagram_;
  std::size_t degree_cap_;
  std::vector<std::shared_ptr<AlphaComplex const>> blocks_;
  std::vector<Matrix> bases_;           // index n - 1
  std::vector<Matrix> image_of_bases_;  // delta applied to bases_, index n - 1
  std::vector<std::size_t> ranks_;      // rank of image_of_bases_
};

std::size_t equivariant_cohomology_dim(GroupAction const &act, std::size_t degree);

// Condition ids for equivariant deformation reports. Indices are 1-based
// subgroup positions (H, K), the element g, then basis indices of A^K; the
// per-subgroup identities carry the subgroup position before the basis
// indices.
inline constexpr char const *kNaturalityProduct = "naturality-product";
inline constexpr char const *kNaturalityAlpha = "naturality-alpha";
inline constexpr char const *kIsoNaturality = "iso-naturality";
inline constexpr char const *kEquivalenceProduct = "equivalence-product";
inline constexpr char const *kEquivalenceAlpha = "equivalence-alpha";

/// One truncated deformation per subgroup, in canonical subgroup order.
using EquivariantFamily = std::vector<TruncatedDeformation>;

/// The trivial family of order N.
EquivariantFamily trivial_family(OrbitDiagram const &diagram, std::size_t order);

/// Restricts a deformation of A whose terms all commute with the action to
/// every A^H. Throws std::invalid_argument when a term is not equivariant.
EquivariantFamily restrict_deformation(OrbitDiagram const &diagram, TruncatedDeformation const &d);

/// Restricts a linear map of A commuting with the action to every A^H.
/// Throws std::invalid_argument when it does not commute.
std::vector<Matrix> restrict_equivariant_map(OrbitDiagram const &diagram, Matrix const &m);

/// Per-subgroup deformation identities plus naturality of nu_t and alpha_t
/// under every subconjugacy triple, term by term in t. Throws
/// std::invalid_argument when the family is incomplete, has mixed orders or
/// a member is not over the induced algebra.
ValidationReport validate_equivariant_deformation(OrbitDiagram const &diagram,
                                                  EquivariantFamily const &family);

/// First order at which some member is nonzero, with all members' terms at
/// that order. Throws std::logic_error when the result is not an invariant
/// 2-cocycle.
std::optional<std::pair<std::size_t, EquivariantCochain>>
equivariant_infinitesimal(EquivariantComplex const &complex, EquivariantFamily const &family);

struct EquivariantObstruction
{
  EquivariantCochain obstruction;
  /// Order N+1 terms per subgroup, found in the invariant subspace, or
  /// nullopt when the class in equivariant cohomology is nonzero.
  std::optional<std::vector<std::pair<MultiMap, MultiMap>>> extension;
};

/// Per-subgroup obstructions assembled into one cochain. Throws
/// std::logic_error when it is not an invariant cocycle, or when a found
/// extension fails validation.
EquivariantObstruction equivariant_obstruction(EquivariantComplex const &complex,
                                               EquivariantFamily const &family);

EquivariantFamily transform_family(EquivariantFamily const &family,
                                   std::vector<FormalIso> const &isos);

enum class EquivalenceMode
{
  /// Only the per-subgroup conditions.
  PerSubgroup,
  /// Additionally every Psi^H_t o R = R o Psi^K_t.
  Strict,
};

/// Empty iff transforming `from` by `isos` gives `to` (and, in strict mode,
/// the isos are natural).
ValidationReport check_equivariant_equivalence(OrbitDiagram const &diagram,
                                               EquivariantFamily const &from,
                                               EquivariantFamily const &to,
                                               std::vector<FormalIso> const &isos,
                                               EquivalenceMode mode = EquivalenceMode::PerSubgroup);

/// Whether the difference of the order-1 terms is delta of an invariant
/// degree-1 cochain.
bool equivariant_cohomologous_infinitesimals(EquivariantComplex const &complex,
                                             EquivariantFamily const &a, EquivariantFamily const &b);

} // namespace hplie

#endif

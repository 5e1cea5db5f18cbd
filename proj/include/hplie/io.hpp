#ifndef HPLIE_IO_HPP
#define HPLIE_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hplie/algebra.hpp"
#include "hplie/cochain.hpp"
#include "hplie/deform.hpp"
#include "hplie/equivariant.hpp"

namespace hplie::io
{

using Json = nlohmann::ordered_json;

/// A malformed document. The message names the file position or the JSON
/// pointer of the offending field.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file; syntax errors report line and column.
Json read_json(std::filesystem::path const &path);

/// Structure constants and alpha as written, before validation.
struct AlgebraData
{
  MultiMap mult;
  MultiMap alpha;
};

// Algebra document:
//   {"dim": d,
//    "mult": [{"i": 2, "j": 1, "k": 1, "value": "1"}, ...],   e_i.e_j has value e_k
//    "alpha": [[row 1], ..., [row d]]}                       columns are alpha(e_c)
// Indices are 1-based, values are rational strings (integers also accepted).
AlgebraData algebra_data_from_json(Json const &doc);
/// Also validates; throws InvalidStructure for data violating the identities.
HomPreLieAlgebra algebra_from_json(Json const &doc);
Json algebra_to_json(HomPreLieAlgebra const &a);

// Action document:
//   {"algebra": <algebra document or path relative to the action file>,
//    "group": [[1-based multiplication table rows]],
//    "maps": [matrix of psi_g for each element, in table order]}
struct ActionData
{
  FiniteGroup group;
  HomPreLieAlgebra algebra;
  std::vector<Matrix> maps;
};
ActionData action_data_from_json(Json const &doc, std::filesystem::path const &base_dir);
Json action_to_json(GroupAction const &act);

// Deformation document:
//   {"order": N,
//    "terms": [{"order": n, "mult": [...], "alpha": [[...]]}, ...],
//    "subgroups": [{"elements": [1-based], "terms": [...]}, ...]}   optional
// Terms run contiguously from order 0 or 1; an omitted order 0 is the base
// structure and omitted mult/alpha entries are zero. The optional subgroup
// sections give an equivariant family, each member over the induced algebra.
TruncatedDeformation deformation_from_json(Json const &doc, HomPreLieAlgebra const &base);
/// The subgroup sections, when the document has them, resolved against the
/// diagram; otherwise nullopt.
std::optional<EquivariantFamily> family_from_json(Json const &doc, OrbitDiagram const &diagram);
/// Emits orders 1..N; order 0 is implied by the algebra.
Json deformation_to_json(TruncatedDeformation const &d);
Json family_to_json(OrbitDiagram const &diagram, EquivariantFamily const &family);

// Iso document: {"order": N, "terms": [{"order": n, "matrix": [[...]]}, ...]},
// order 0 is the identity and omitted orders are zero.
FormalIso iso_from_json(Json const &doc, std::size_t dim);
Json iso_to_json(FormalIso const &iso);

Json matrix_to_json(Matrix const &m);
Json vector_to_json(Vector const &v);
/// Nonzero values as [{"inputs": [1-based], "output": k, "value": "q"}, ...].
Json multimap_to_json(MultiMap const &m);
Json cochain_to_json(AlphaCochain const &c);
Json report_to_json(ValidationReport const &r);

} // namespace hplie::io

#endif

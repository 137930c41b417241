#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "cshv/chain_complex.hpp"
#include "cshv/cosheaf.hpp"
#include "cshv/derham.hpp"
#include "cshv/matrix.hpp"
#include "cshv/poset.hpp"
#include "cshv/sheaf.hpp"
#include "cshv/simplicial.hpp"
#include "cshv/stratify.hpp"

namespace cshv::io {

using Json = nlohmann::ordered_json;

// Every reader takes the JSON-pointer-like location of the node it parses and reports
// problems as InputError("<where>: <what>").

/// Row-major nested arrays of "p/q" strings. A matrix without rows carries no column count,
/// so readers pass the expected shape; {"rows", "cols", "entries"} is accepted as well.
Json to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j, const std::string& where, std::size_t rows, std::size_t cols);
RatMatrix matrix_from_json(const Json& j, const std::string& where = "");

/// {"elements": [...], "covers": [[lower, upper], ...]}, labels and covers sorted.
Json to_json(const FinPoset& p);
FinPoset poset_from_json(const Json& j, const std::string& where = "");

/// {"vertices": [...], "simplices": [[v, ...], ...]}.
Json to_json(const AlmostSimplicialComplex& k);
AlmostSimplicialComplex simplicial_from_json(const Json& j, const std::string& where = "");

/// {"lo": k, "dims": [...], "differentials": {"k": matrix}}.
Json to_json(const BddChainComplex& c);
BddChainComplex chain_complex_from_json(const Json& j, const std::string& where = "");

Json to_json(const GradedDims& g);

/// {"source": poset, "target": poset, "map": {label: label}}.
Json to_json(const MonotoneMap& f);
MonotoneMap map_from_json(const Json& j, const std::string& where = "");

/// {"space": poset, "strata": poset, "map": {label: stratum label}}.
Json to_json(const Stratification& s);
Stratification stratification_from_json(const Json& j, const std::string& where = "");

/// {"base": poset, "stalks": {label: complex}, "transitions": {"a->b": {degree: matrix}}}.
/// A document {"base": poset, "constant": degree} is read as the constant sheaf.
Json to_json(const PosetRep& f);
PosetRep rep_from_json(const Json& j, const std::string& where = "");

/// {"base": poset, "terms": {degree: [labels]}, "differentials": {degree: matrix}}.
Json to_json(const PseudoFreeComplex& c);
PseudoFreeComplex pseudo_free_from_json(const Json& j, const std::string& where = "");

/// {"space": poset, "sources": [[labels]], "targets": [[labels]], "matrix": matrix}.
Json to_json(const CombinatorialMap& m);
CombinatorialMap combinatorial_map_from_json(const Json& j, const std::string& where = "");

/// {"steps": [{"stratum", "label", "T1", "S1", "Mbar", "Nbar"}]}; stratum and sets by label.
Json to_json(const ClosedImageCertificate& c, const CombinatorialMap& m);
ClosedImageCertificate certificate_from_json(const Json& j, const CombinatorialMap& m, const std::string& where = "");

/// {"sets": [[labels], ...]} or a bare array of label lists.
std::vector<Subset> subsets_from_json(const Json& j, const FinPoset& p, const std::string& where = "");

/// {"base": [a, b] | "point", "window": L, "steps": [m, n], "mask": [[run lengths], ...]}.
/// Each mask row alternates counts of false and true nodes, starting with false.
Json to_json(const GridRegion& r);
GridRegion region_from_json(const Json& j, const std::string& where = "");

/// Parses a file; syntax errors report the file name and byte offset.
Json read_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace cshv::io

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cshv/chain_complex.hpp"
#include "cshv/poset.hpp"

namespace cshv {

/// A simplex as a sorted list of vertex indices.
using Simplex = std::vector<std::size_t>;

/// Any set of non-empty vertex subsets; no closure condition.
/// Vertices are kept sorted by label, simplices by (size, lexicographic).
class AlmostSimplicialComplex {
 public:
  AlmostSimplicialComplex() = default;
  /// Throws InputError on an empty simplex, an unknown vertex or a repeated vertex label.
  AlmostSimplicialComplex(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& simplices);
  AlmostSimplicialComplex(std::vector<std::string> vertices, std::vector<Simplex> simplices);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  bool contains(const Simplex& s) const;
  /// "a,b,c".
  std::string label(const Simplex& s) const;
  std::vector<std::string> vertex_labels(const Simplex& s) const;
  /// Max |σ| − 1; −1 when empty.
  int dimension() const;

  bool operator==(const AlmostSimplicialComplex& rhs) const = default;

 private:
  void canonicalize();

  std::vector<std::string> vertices_;
  std::vector<Simplex> simplices_;
};

AlmostSimplicialComplex simplicial_closure(const AlmostSimplicialComplex& k);
bool is_locally_closed(const AlmostSimplicialComplex& k);
/// Simplices ordered by inclusion, labels "a,b"; element i is simplices()[i].
FinPoset face_poset(const AlmostSimplicialComplex& k);

/// One generator per simplex in degree |σ|−1, boundary restricted to faces in K.
BddChainComplex simplicial_chain_complex(const AlmostSimplicialComplex& k);
/// Betti numbers b_0..b_dim of the complex above. Throws InputError if K is not locally closed.
std::vector<std::size_t> simplicial_betti(const AlmostSimplicialComplex& k);

// Small fixtures.
AlmostSimplicialComplex full_simplex(std::size_t n_vertices);
AlmostSimplicialComplex simplex_boundary(std::size_t n_vertices);

}  // namespace cshv

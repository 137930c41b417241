#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cshv/matrix.hpp"

namespace cshv {

/// Dimensions indexed by degree, with zeros trimmed from both ends.
/// An all-zero sequence is {lo = 0, dims = {}}.
struct GradedDims {
  int lo = 0;
  std::vector<std::size_t> dims;

  GradedDims() = default;
  GradedDims(int lo_degree, std::vector<std::size_t> values);

  std::size_t at(int degree) const;
  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  bool is_zero() const { return dims.empty(); }
  GradedDims operator+(const GradedDims& rhs) const;
  bool operator==(const GradedDims& rhs) const = default;
};

std::ostream& operator<<(std::ostream& os, const GradedDims& g);

/// Bounded chain complex of finite-dimensional ℚ-spaces, homological grading:
/// d_k : X_k → X_{k-1}.
class BddChainComplex {
 public:
  BddChainComplex() = default;
  /// `differentials[i]` is d_{lo+1+i}. Checks shapes and d∘d = 0 (InvariantError).
  BddChainComplex(int lo, std::vector<std::size_t> dims, std::vector<RatMatrix> differentials);

  static BddChainComplex zero() { return {}; }
  /// ℚ^n concentrated in one degree.
  static BddChainComplex concentrated(int degree, std::size_t n);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int k) const;
  /// Zero matrix of the right shape outside the stored range.
  RatMatrix d(int k) const;
  bool is_zero() const;
  std::size_t total_dim() const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<RatMatrix> diffs_;
};

GradedDims dims_of(const BddChainComplex& x);
GradedDims homology_dims(const BddChainComplex& x);
/// Σ(−1)^k dim X_k.
long euler_characteristic(const BddChainComplex& x);
long euler_characteristic(const GradedDims& g);

/// Degreewise linear maps between two complexes; component k has shape dim Y_k × dim X_k.
class ChainMap {
 public:
  ChainMap() = default;
  /// Zero map X → Y.
  ChainMap(const BddChainComplex& source, const BddChainComplex& target);

  static ChainMap identity(const BddChainComplex& x);

  RatMatrix& at(int k);
  RatMatrix at(int k) const;
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(comps_.size()) - 1; }

 private:
  int lo_ = 0;
  std::vector<RatMatrix> comps_;
};

bool is_chain_map(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target);
ChainMap compose(const ChainMap& g, const ChainMap& f, const BddChainComplex& source,
                 const BddChainComplex& target);
bool chain_maps_equal(const ChainMap& f, const ChainMap& g, const BddChainComplex& source,
                      const BddChainComplex& target);

/// cone(f)_k = X_{k-1} ⊕ Y_k, d(x, y) = (−dx, f x + dy).
BddChainComplex mapping_cone(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target);
bool is_quasi_isomorphism(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target);
/// Rank of H_k(f) : H_k(X) → H_k(Y).
std::size_t induced_rank(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target, int k);

/// Total complex of X ⊗ Y, d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy.
/// Degree-n basis: blocks X_i ⊗ Y_{n-i} for increasing i, Kronecker order inside a block.
BddChainComplex tensor_complex(const BddChainComplex& x, const BddChainComplex& y);
ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const BddChainComplex& fx, const BddChainComplex& fy,
                     const BddChainComplex& gx, const BddChainComplex& gy);

/// X[n]: (X[n])_k = X_{k-n}, differential scaled by (−1)^n.
BddChainComplex shift(const BddChainComplex& x, int n);
ChainMap shift(const ChainMap& f, int n);

BddChainComplex direct_sum(const BddChainComplex& x, const BddChainComplex& y);

}  // namespace cshv

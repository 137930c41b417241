#include "cshv/chain_complex.hpp"

#include <algorithm>
#include <ostream>

#include "cshv/error.hpp"

namespace cshv {

GradedDims::GradedDims(int lo_degree, std::vector<std::size_t> values) : lo(lo_degree), dims(std::move(values)) {
  std::size_t first = 0;
  while (first < dims.size() && dims[first] == 0) ++first;
  std::size_t last = dims.size();
  while (last > first && dims[last - 1] == 0) --last;
  if (first == last) {
    lo = 0;
    dims.clear();
    return;
  }
  lo += static_cast<int>(first);
  dims = std::vector<std::size_t>(dims.begin() + static_cast<long>(first), dims.begin() + static_cast<long>(last));
}

std::size_t GradedDims::at(int degree) const {
  if (degree < lo || degree > hi()) return 0;
  return dims[static_cast<std::size_t>(degree - lo)];
}

GradedDims GradedDims::operator+(const GradedDims& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  const int l = std::min(lo, rhs.lo);
  const int h = std::max(hi(), rhs.hi());
  std::vector<std::size_t> v;
  for (int k = l; k <= h; ++k) v.push_back(at(k) + rhs.at(k));
  return GradedDims(l, std::move(v));
}

std::ostream& operator<<(std::ostream& os, const GradedDims& g) {
  os << "{lo=" << g.lo << ", dims=(";
  for (std::size_t i = 0; i < g.dims.size(); ++i) os << (i ? "," : "") << g.dims[i];
  return os << ")}";
}

BddChainComplex::BddChainComplex(int lo, std::vector<std::size_t> dims, std::vector<RatMatrix> differentials)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(differentials)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (diffs_.size() != expected) throw InvariantError("chain complex: wrong number of differentials");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].rows() != dims_[i] || diffs_[i].cols() != dims_[i + 1])
      throw InvariantError("chain complex: differential d_" + std::to_string(lo_ + 1 + static_cast<int>(i)) +
                           " has the wrong shape");
  }
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
    if (!(diffs_[i] * diffs_[i + 1]).is_zero())
      throw InvariantError("chain complex: d∘d ≠ 0 at degree " + std::to_string(lo_ + 2 + static_cast<int>(i)));
  }
}

BddChainComplex BddChainComplex::concentrated(int degree, std::size_t n) { return BddChainComplex(degree, {n}, {}); }

std::size_t BddChainComplex::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return dims_[static_cast<std::size_t>(k - lo_)];
}

RatMatrix BddChainComplex::d(int k) const {
  if (k <= lo_ || k > hi()) return RatMatrix(dim(k - 1), dim(k));
  return diffs_[static_cast<std::size_t>(k - lo_ - 1)];
}

bool BddChainComplex::is_zero() const { return total_dim() == 0; }

std::size_t BddChainComplex::total_dim() const {
  std::size_t s = 0;
  for (auto v : dims_) s += v;
  return s;
}

GradedDims dims_of(const BddChainComplex& x) {
  std::vector<std::size_t> v;
  for (int k = x.lo(); k <= x.hi(); ++k) v.push_back(x.dim(k));
  return GradedDims(x.lo(), std::move(v));
}

GradedDims homology_dims(const BddChainComplex& x) {
  std::vector<std::size_t> v;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    const std::size_t rk_out = rank(x.d(k));
    const std::size_t rk_in = rank(x.d(k + 1));
    v.push_back(x.dim(k) - rk_out - rk_in);
  }
  return GradedDims(x.lo(), std::move(v));
}

long euler_characteristic(const GradedDims& g) {
  long chi = 0;
  for (int k = g.lo; k <= g.hi(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(g.at(k));
  return chi;
}

long euler_characteristic(const BddChainComplex& x) { return euler_characteristic(dims_of(x)); }

namespace {

struct Range {
  int lo;
  int hi;
};

Range union_range(const BddChainComplex& a, const BddChainComplex& b) {
  const bool ea = a.hi() < a.lo();
  const bool eb = b.hi() < b.lo();
  if (ea && eb) return {0, -1};
  if (ea) return {b.lo(), b.hi()};
  if (eb) return {a.lo(), a.hi()};
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

}  // namespace

ChainMap::ChainMap(const BddChainComplex& source, const BddChainComplex& target) {
  const Range r = union_range(source, target);
  lo_ = r.lo;
  for (int k = r.lo; k <= r.hi; ++k) comps_.emplace_back(target.dim(k), source.dim(k));
}

ChainMap ChainMap::identity(const BddChainComplex& x) {
  ChainMap f(x, x);
  for (int k = f.lo(); k <= f.hi(); ++k) f.at(k) = RatMatrix::identity(x.dim(k));
  return f;
}

RatMatrix& ChainMap::at(int k) {
  if (k < lo_ || k > hi()) throw InvariantError("chain map component out of range");
  return comps_[static_cast<std::size_t>(k - lo_)];
}

RatMatrix ChainMap::at(int k) const {
  if (k < lo_ || k > hi()) return RatMatrix();
  return comps_[static_cast<std::size_t>(k - lo_)];
}

namespace {

bool component_shapes_ok(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target) {
  const Range r = union_range(source, target);
  for (int k = r.lo; k <= r.hi; ++k) {
    const RatMatrix m = f.at(k);
    if (m.rows() != target.dim(k) || m.cols() != source.dim(k)) return false;
  }
  return true;
}

}  // namespace

bool is_chain_map(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target) {
  if (!component_shapes_ok(f, source, target)) return false;
  const Range r = union_range(source, target);
  for (int k = r.lo; k <= r.hi + 1; ++k) {
    // d^Y_k f_k = f_{k-1} d^X_k
    const RatMatrix lhs = target.d(k) * (f.at(k).empty() ? RatMatrix(target.dim(k), source.dim(k)) : f.at(k));
    const RatMatrix fk1 = f.at(k - 1).empty() ? RatMatrix(target.dim(k - 1), source.dim(k - 1)) : f.at(k - 1);
    const RatMatrix rhs = fk1 * source.d(k);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const BddChainComplex& source,
                 const BddChainComplex& target) {
  ChainMap h(source, target);
  for (int k = h.lo(); k <= h.hi(); ++k) {
    const RatMatrix gk = g.at(k);
    const RatMatrix fk = f.at(k);
    if (gk.cols() != fk.rows()) throw InvariantError("compose: incompatible chain maps");
    h.at(k) = gk * fk;
  }
  return h;
}

bool chain_maps_equal(const ChainMap& f, const ChainMap& g, const BddChainComplex& source,
                      const BddChainComplex& target) {
  const Range r = union_range(source, target);
  for (int k = r.lo; k <= r.hi; ++k) {
    RatMatrix a = f.at(k), b = g.at(k);
    if (a.rows() == 0 && a.cols() == 0) a = RatMatrix(target.dim(k), source.dim(k));
    if (b.rows() == 0 && b.cols() == 0) b = RatMatrix(target.dim(k), source.dim(k));
    if (!(a == b)) return false;
  }
  return true;
}

BddChainComplex mapping_cone(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target) {
  const bool es = source.hi() < source.lo();
  const bool et = target.hi() < target.lo();
  if (es && et) return BddChainComplex::zero();
  const int lo = es ? target.lo() : (et ? source.lo() + 1 : std::min(source.lo() + 1, target.lo()));
  const int hi = es ? target.hi() : (et ? source.hi() + 1 : std::max(source.hi() + 1, target.hi()));
  std::vector<std::size_t> dims;
  for (int k = lo; k <= hi; ++k) dims.push_back(source.dim(k - 1) + target.dim(k));
  std::vector<RatMatrix> diffs;
  for (int k = lo + 1; k <= hi; ++k) {
    RatMatrix d(source.dim(k - 2) + target.dim(k - 1), source.dim(k - 1) + target.dim(k));
    const RatMatrix dx = source.d(k - 1);
    const RatMatrix dy = target.d(k);
    RatMatrix fk = f.at(k - 1);
    if (fk.rows() == 0 && fk.cols() == 0) fk = RatMatrix(target.dim(k - 1), source.dim(k - 1));
    for (std::size_t r = 0; r < dx.rows(); ++r)
      for (std::size_t c = 0; c < dx.cols(); ++c) d(r, c) = -dx(r, c);
    const std::size_t ro = source.dim(k - 2);
    const std::size_t co = source.dim(k - 1);
    for (std::size_t r = 0; r < fk.rows(); ++r)
      for (std::size_t c = 0; c < fk.cols(); ++c) d(ro + r, c) = fk(r, c);
    for (std::size_t r = 0; r < dy.rows(); ++r)
      for (std::size_t c = 0; c < dy.cols(); ++c) d(ro + r, co + c) = dy(r, c);
    diffs.push_back(std::move(d));
  }
  return BddChainComplex(lo, std::move(dims), std::move(diffs));
}

bool is_quasi_isomorphism(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target) {
  return homology_dims(mapping_cone(f, source, target)).is_zero();
}

std::size_t induced_rank(const ChainMap& f, const BddChainComplex& source, const BddChainComplex& target, int k) {
  if (source.dim(k) == 0 || target.dim(k) == 0) return 0;
  const RatMatrix cycles = kernel_basis(source.d(k));
  const RatMatrix boundaries = target.d(k + 1);
  const RatMatrix image = f.at(k) * cycles;
  return rank(RatMatrix::hconcat(image, boundaries)) - rank(boundaries);
}

namespace {

// Offsets of the blocks X_i ⊗ Y_{n-i} inside (X ⊗ Y)_n.
std::map<int, std::size_t> tensor_blocks(const BddChainComplex& x, const BddChainComplex& y, int n,
                                         std::size_t* total) {
  std::map<int, std::size_t> offsets;
  std::size_t off = 0;
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const int j = n - i;
    if (j < y.lo() || j > y.hi()) continue;
    offsets[i] = off;
    off += x.dim(i) * y.dim(j);
  }
  if (total) *total = off;
  return offsets;
}

}  // namespace

BddChainComplex tensor_complex(const BddChainComplex& x, const BddChainComplex& y) {
  if (x.hi() < x.lo() || y.hi() < y.lo()) return BddChainComplex::zero();
  const int lo = x.lo() + y.lo();
  const int hi = x.hi() + y.hi();
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) {
    std::size_t total = 0;
    tensor_blocks(x, y, n, &total);
    dims.push_back(total);
  }
  std::vector<RatMatrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    std::size_t src_total = 0, tgt_total = 0;
    const auto src = tensor_blocks(x, y, n, &src_total);
    const auto tgt = tensor_blocks(x, y, n - 1, &tgt_total);
    RatMatrix d(tgt_total, src_total);
    for (const auto& [i, so] : src) {
      const int j = n - i;
      // dx ⊗ 1 into block (i-1, j)
      if (auto it = tgt.find(i - 1); it != tgt.end() && x.dim(i - 1) > 0) {
        const RatMatrix blk = RatMatrix::kron(x.d(i), RatMatrix::identity(y.dim(j)));
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c) d(it->second + r, so + c) = blk(r, c);
      }
      // (−1)^i 1 ⊗ dy into block (i, j-1)
      if (auto it = tgt.find(i); it != tgt.end() && y.dim(j - 1) > 0) {
        RatMatrix blk = RatMatrix::kron(RatMatrix::identity(x.dim(i)), y.d(j));
        if (i % 2 != 0) blk = -blk;
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c) d(it->second + r, so + c) += blk(r, c);
      }
    }
    diffs.push_back(std::move(d));
  }
  return BddChainComplex(lo, std::move(dims), std::move(diffs));
}

ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const BddChainComplex& fx, const BddChainComplex& fy,
                     const BddChainComplex& gx, const BddChainComplex& gy) {
  const BddChainComplex src = tensor_complex(fx, gx);
  const BddChainComplex tgt = tensor_complex(fy, gy);
  ChainMap h(src, tgt);
  for (int n = h.lo(); n <= h.hi(); ++n) {
    const auto sb = tensor_blocks(fx, gx, n, nullptr);
    const auto tb = tensor_blocks(fy, gy, n, nullptr);
    RatMatrix& hn = h.at(n);
    for (const auto& [i, so] : sb) {
      auto it = tb.find(i);
      if (it == tb.end()) continue;
      const int j = n - i;
      RatMatrix fi = f.at(i), gj = g.at(j);
      if (fi.rows() == 0 && fi.cols() == 0) fi = RatMatrix(fy.dim(i), fx.dim(i));
      if (gj.rows() == 0 && gj.cols() == 0) gj = RatMatrix(gy.dim(j), gx.dim(j));
      const RatMatrix blk = RatMatrix::kron(fi, gj);
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c) hn(it->second + r, so + c) = blk(r, c);
    }
  }
  return h;
}

BddChainComplex shift(const BddChainComplex& x, int n) {
  if (x.hi() < x.lo()) return x;
  std::vector<std::size_t> dims;
  for (int k = x.lo(); k <= x.hi(); ++k) dims.push_back(x.dim(k));
  std::vector<RatMatrix> diffs;
  for (int k = x.lo() + 1; k <= x.hi(); ++k) diffs.push_back(n % 2 == 0 ? x.d(k) : -x.d(k));
  return BddChainComplex(x.lo() + n, std::move(dims), std::move(diffs));
}

ChainMap shift(const ChainMap& f, int n) {
  if (f.hi() < f.lo()) return f;
  // Shifting relabels degrees; rebuild zero-differential carriers with the component shapes.
  std::vector<std::size_t> sdims, tdims;
  for (int k = f.lo(); k <= f.hi(); ++k) {
    sdims.push_back(f.at(k).cols());
    tdims.push_back(f.at(k).rows());
  }
  std::vector<RatMatrix> szero, tzero;
  for (std::size_t i = 0; i + 1 < sdims.size(); ++i) {
    szero.emplace_back(sdims[i], sdims[i + 1]);
    tzero.emplace_back(tdims[i], tdims[i + 1]);
  }
  const BddChainComplex s(f.lo() + n, sdims, szero), t(f.lo() + n, tdims, tzero);
  ChainMap out(s, t);
  for (int k = f.lo(); k <= f.hi(); ++k) out.at(k + n) = f.at(k);
  return out;
}

BddChainComplex direct_sum(const BddChainComplex& x, const BddChainComplex& y) {
  const Range r = union_range(x, y);
  if (r.hi < r.lo) return BddChainComplex::zero();
  std::vector<std::size_t> dims;
  for (int k = r.lo; k <= r.hi; ++k) dims.push_back(x.dim(k) + y.dim(k));
  std::vector<RatMatrix> diffs;
  for (int k = r.lo + 1; k <= r.hi; ++k) diffs.push_back(RatMatrix::direct_sum(x.d(k), y.d(k)));
  return BddChainComplex(r.lo, std::move(dims), std::move(diffs));
}

}  // namespace cshv

#include <algorithm>
#include <functional>

#include "cshv/error.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

namespace {

RatMatrix component(const ChainMap& f, const BddChainComplex& x, const BddChainComplex& y, int k) {
  RatMatrix m = f.at(k);
  if (m.rows() != y.dim(k) || m.cols() != x.dim(k)) return RatMatrix(y.dim(k), x.dim(k));
  return m;
}

void add_block(RatMatrix& target, std::size_t row, std::size_t col, const RatMatrix& block, int sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) {
      if (block(i, j) == 0) continue;
      if (sign > 0)
        target(row + i, col + j) += block(i, j);
      else
        target(row + i, col + j) -= block(i, j);
    }
}

std::size_t block_dim(const PosetRep& f, const Holim& h, std::size_t c, int k) {
  const auto& ch = h.chains[c];
  const int n = static_cast<int>(ch.size()) - 1;
  return f.stalk(ch.back()).dim(k + n);
}

std::size_t degree_dim(const PosetRep& f, const Holim& h, int k) {
  if (k < h.lo || k > h.hi) return 0;
  std::size_t total = 0;
  for (std::size_t c = 0; c < h.chains.size(); ++c) total += block_dim(f, h, c, k);
  return total;
}

}  // namespace

Holim holim(const PosetRep& f, const Subset& s) {
  Holim h;
  h.members = s;
  const FinPoset& p = f.base();
  // Chains ordered by length, then lexicographically in index order.
  std::vector<std::size_t> cur;
  std::function<void()> extend = [&]() {
    h.chains.push_back(cur);
    for (auto q : s)
      if (p.lt(cur.back(), q)) {
        cur.push_back(q);
        extend();
        cur.pop_back();
      }
  };
  for (auto q : s) {
    cur = {q};
    extend();
  }
  std::stable_sort(h.chains.begin(), h.chains.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
  for (std::size_t c = 0; c < h.chains.size(); ++c) h.index[h.chains[c]] = c;

  int lo = 0, hi = -1;
  bool any = false;
  std::size_t max_n = 0;
  for (const auto& ch : h.chains) max_n = std::max(max_n, ch.size() - 1);
  for (auto q : s) {
    const auto& st = f.stalk(q);
    if (st.is_zero()) continue;
    int slo = st.hi(), shi = st.lo();
    for (int k = st.lo(); k <= st.hi(); ++k)
      if (st.dim(k) > 0) {
        slo = std::min(slo, k);
        shi = std::max(shi, k);
      }
    lo = any ? std::min(lo, slo) : slo;
    hi = any ? std::max(hi, shi) : shi;
    any = true;
  }
  if (!any) {
    h.lo = 0;
    h.hi = -1;
    h.complex = BddChainComplex::zero();
    return h;
  }
  h.lo = lo - static_cast<int>(max_n);
  h.hi = hi;
  std::vector<std::size_t> dims;
  for (int k = h.lo; k <= h.hi; ++k) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (std::size_t c = 0; c < h.chains.size(); ++c) {
      off.push_back(acc);
      acc += block_dim(f, h, c, k);
    }
    h.offsets.push_back(std::move(off));
    dims.push_back(acc);
  }
  std::vector<RatMatrix> diffs;
  for (int k = h.lo + 1; k <= h.hi; ++k) {
    RatMatrix dk(dims[k - 1 - h.lo], dims[k - h.lo]);
    const auto& off_src = h.offsets[k - h.lo];
    const auto& off_tgt = h.offsets[k - 1 - h.lo];
    for (std::size_t c = 0; c < h.chains.size(); ++c) {
      const auto& ch = h.chains[c];
      const int n = static_cast<int>(ch.size()) - 1;
      const int m = k + n;
      const BddChainComplex& st = f.stalk(ch.back());
      if (st.dim(m) == 0) continue;
      // Internal differential.
      if (st.dim(m - 1) > 0) add_block(dk, off_tgt[c], off_src[c], st.d(m), 1);
    }
    // Coface part: iterate over target chains of length ≥ 1 and their faces.
    for (std::size_t t = 0; t < h.chains.size(); ++t) {
      const auto& tc = h.chains[t];
      if (tc.size() < 2) continue;
      const int n1 = static_cast<int>(tc.size()) - 1;  // target length n + 1
      const int m = (k - 1) + n1;
      const std::size_t tdim = f.stalk(tc.back()).dim(m);
      if (tdim == 0) continue;
      const int sign_m = (m % 2 == 0) ? 1 : -1;
      for (int i = 0; i <= n1; ++i) {
        std::vector<std::size_t> face = tc;
        face.erase(face.begin() + i);
        const std::size_t fc = h.index.at(face);
        const std::size_t fdim = f.stalk(face.back()).dim(m);
        if (fdim == 0) continue;
        if (i < n1) {
          const int sign = sign_m * ((i % 2 == 0) ? 1 : -1);
          add_block(dk, off_tgt[t], off_src[fc], RatMatrix::identity(tdim), sign);
        } else {
          const int sign = sign_m * ((n1 % 2 == 0) ? 1 : -1);
          const RatMatrix tr =
              component(f.transition(face.back(), tc.back()), f.stalk(face.back()), f.stalk(tc.back()), m);
          add_block(dk, off_tgt[t], off_src[fc], tr, sign);
        }
      }
    }
    diffs.push_back(std::move(dk));
  }
  h.complex = BddChainComplex(h.lo, std::move(dims), std::move(diffs));
  return h;
}

ChainMap holim_restriction(const PosetRep& f, const Holim& big, const Holim& small) {
  ChainMap r(big.complex, small.complex);
  for (int k = r.lo(); k <= r.hi(); ++k) {
    RatMatrix m(degree_dim(f, small, k), degree_dim(f, big, k));
    if (k >= small.lo && k <= small.hi) {
      for (std::size_t c = 0; c < small.chains.size(); ++c) {
        const std::size_t dim = block_dim(f, small, c, k);
        if (dim == 0) continue;
        const std::size_t bc = big.index.at(small.chains[c]);
        add_block(m, small.offsets[k - small.lo][c], big.offsets[k - big.lo][bc], RatMatrix::identity(dim), 1);
      }
    }
    r.at(k) = std::move(m);
  }
  return r;
}

ChainMap holim_unit(const PosetRep& f, std::size_t p, const Subset& sub, const Holim& h) {
  const BddChainComplex& src = f.stalk(p);
  ChainMap u(src, h.complex);
  for (int k = u.lo(); k <= u.hi(); ++k) {
    RatMatrix m(h.complex.dim(k), src.dim(k));
    if (k >= h.lo && k <= h.hi) {
      for (std::size_t c = 0; c < h.chains.size(); ++c) {
        if (h.chains[c].size() != 1) continue;
        const std::size_t z = sub.at(h.chains[c][0]);
        if (!f.base().leq(p, z)) throw InputError("holim_unit: member not above the source point");
        const RatMatrix tr = component(f.transition(p, z), src, f.stalk(z), k);
        add_block(m, h.offsets[k - h.lo][c], 0, tr, 1);
      }
    }
    u.at(k) = std::move(m);
  }
  return u;
}

BddChainComplex evaluate(const PosetRep& f, const Subset& u) {
  if (!f.base().is_up_set(u)) throw InputError("evaluate: set is not an up-set");
  return holim(f, u).complex;
}

BddChainComplex evaluate(const PosetRep& f, const UpSet& u) { return evaluate(f, u.members()); }

}  // namespace cshv

#include <algorithm>
#include <functional>
#include <tuple>

#include "cshv/error.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

namespace {

RatMatrix component(const ChainMap& f, const BddChainComplex& x, const BddChainComplex& y, int k) {
  RatMatrix m = f.at(k);
  if (m.rows() != y.dim(k) || m.cols() != x.dim(k)) return RatMatrix(y.dim(k), x.dim(k));
  return m;
}

}  // namespace

PseudoFreeComplex::PseudoFreeComplex(FinPoset base, int lo, std::vector<std::vector<std::size_t>> generators,
                                     std::vector<RatMatrix> differentials)
    : base_(std::move(base)), lo_(lo), gens_(std::move(generators)), diffs_(std::move(differentials)) {
  const std::size_t expected = gens_.empty() ? 0 : gens_.size() - 1;
  if (diffs_.size() != expected) throw InvariantError("pseudo-free complex: wrong number of differentials");
  for (const auto& g : gens_)
    for (auto e : g)
      if (e >= base_.size()) throw InputError("pseudo-free complex: generator out of range");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    const auto& src = gens_[i + 1];
    const auto& tgt = gens_[i];
    const RatMatrix& m = diffs_[i];
    if (m.rows() != tgt.size() || m.cols() != src.size())
      throw InvariantError("pseudo-free complex: differential has the wrong shape");
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0 && !base_.leq(tgt[r], src[c]))
          throw InvariantError("pseudo-free complex: entry from " + base_.label(src[c]) + " to " +
                               base_.label(tgt[r]) + " violates the support condition");
  }
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!(diffs_[i] * diffs_[i + 1]).is_zero()) throw InvariantError("pseudo-free complex: d∘d ≠ 0");
}

const std::vector<std::size_t>& PseudoFreeComplex::generators(int k) const {
  static const std::vector<std::size_t> none;
  if (k < lo_ || k > hi()) return none;
  return gens_[static_cast<std::size_t>(k - lo_)];
}

RatMatrix PseudoFreeComplex::d(int k) const {
  if (k <= lo_ || k > hi()) return RatMatrix(generators(k - 1).size(), generators(k).size());
  return diffs_[static_cast<std::size_t>(k - lo_ - 1)];
}

std::size_t PseudoFreeComplex::total_generators() const {
  std::size_t n = 0;
  for (const auto& g : gens_) n += g.size();
  return n;
}

PosetRep realize(const PseudoFreeComplex& c) {
  const FinPoset& p = c.base();
  // below[r][k - lo] = positions of degree-k generators with elem ≤ r.
  std::vector<std::vector<std::vector<std::size_t>>> below(p.size());
  std::vector<BddChainComplex> stalks;
  for (std::size_t r = 0; r < p.size(); ++r) {
    std::vector<std::size_t> dims;
    for (int k = c.lo(); k <= c.hi(); ++k) {
      std::vector<std::size_t> sel;
      const auto& g = c.generators(k);
      for (std::size_t i = 0; i < g.size(); ++i)
        if (p.leq(g[i], r)) sel.push_back(i);
      dims.push_back(sel.size());
      below[r].push_back(std::move(sel));
    }
    std::vector<RatMatrix> diffs;
    for (int k = c.lo() + 1; k <= c.hi(); ++k)
      diffs.push_back(c.d(k).submatrix(below[r][k - 1 - c.lo()], below[r][k - c.lo()]));
    stalks.push_back(c.hi() < c.lo() ? BddChainComplex::zero() : BddChainComplex(c.lo(), std::move(dims), std::move(diffs)));
  }
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : p.covers()) {
    ChainMap m(stalks[a], stalks[b]);
    for (int k = m.lo(); k <= m.hi(); ++k) {
      const auto& sa = below[a][k - c.lo()];
      const auto& sb = below[b][k - c.lo()];
      RatMatrix inc(sb.size(), sa.size());
      for (std::size_t j = 0; j < sa.size(); ++j) {
        const auto it = std::lower_bound(sb.begin(), sb.end(), sa[j]);
        inc(static_cast<std::size_t>(it - sb.begin()), j) = 1;
      }
      m.at(k) = std::move(inc);
    }
    t[{a, b}] = std::move(m);
  }
  return PosetRep(p, std::move(stalks), t);
}

PseudoFreeComplex map_generators(const MonotoneMap& f, const PseudoFreeComplex& c) {
  if (!(f.source() == c.base())) throw InputError("map_generators: complex is not on the source poset");
  std::vector<std::vector<std::size_t>> gens;
  std::vector<RatMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    std::vector<std::size_t> g;
    for (auto e : c.generators(k)) g.push_back(f(e));
    gens.push_back(std::move(g));
    if (k > c.lo()) diffs.push_back(c.d(k));
  }
  return PseudoFreeComplex(f.target(), c.lo(), std::move(gens), std::move(diffs));
}

namespace {

struct Generator {
  std::size_t elem;
  std::vector<Rational> phi;  // in F_k(elem)
  std::vector<Rational> dcol;  // over all generators of degree k−1
};

// Augmentation realize(c) → F from the φ vectors (given at each generator's own element).
RepMorphism augmentation_from(const PosetRep& f, const PseudoFreeComplex& c, const PosetRep& real,
                              const std::vector<std::vector<Generator>>& gens) {
  const FinPoset& p = f.base();
  RepMorphism m;
  for (std::size_t r = 0; r < p.size(); ++r) {
    ChainMap a(real.stalk(r), f.stalk(r));
    for (int k = a.lo(); k <= a.hi(); ++k) {
      RatMatrix comp(f.stalk(r).dim(k), real.stalk(r).dim(k));
      if (k >= c.lo() && k <= c.hi()) {
        std::size_t col = 0;
        for (const auto& g : gens[static_cast<std::size_t>(k - c.lo())]) {
          if (!p.leq(g.elem, r)) continue;
          if (!g.phi.empty()) {
            RatMatrix v(g.phi.size(), 1);
            for (std::size_t i = 0; i < g.phi.size(); ++i) v(i, 0) = g.phi[i];
            const RatMatrix moved = component(f.transition(g.elem, r), f.stalk(g.elem), f.stalk(r), k) * v;
            for (std::size_t i = 0; i < moved.rows(); ++i) comp(i, col) = moved(i, 0);
          }
          ++col;
        }
      }
      a.at(k) = std::move(comp);
    }
    m.components.push_back(std::move(a));
  }
  return m;
}

Resolution finish(const PosetRep& f, int lo, std::vector<std::vector<Generator>> gens) {
  while (!gens.empty() && gens.back().empty()) gens.pop_back();
  std::size_t first = 0;
  while (first < gens.size() && gens[first].empty()) ++first;
  if (first == gens.size()) {
    Resolution r;
    r.complex = PseudoFreeComplex(f.base(), 0, {}, {});
    r.augmentation = augmentation_from(f, r.complex, realize(r.complex), {});
    r.length = 0;
    return r;
  }
  gens.erase(gens.begin(), gens.begin() + static_cast<long>(first));
  lo += static_cast<int>(first);
  std::vector<std::vector<std::size_t>> elems;
  std::vector<RatMatrix> diffs;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<std::size_t> e;
    for (const auto& g : gens[i]) e.push_back(g.elem);
    elems.push_back(std::move(e));
    if (i == 0) continue;
    RatMatrix d(gens[i - 1].size(), gens[i].size());
    for (std::size_t c = 0; c < gens[i].size(); ++c)
      for (std::size_t r = 0; r < gens[i][c].dcol.size(); ++r) d(r, c) = gens[i][c].dcol[r];
    diffs.push_back(std::move(d));
  }
  Resolution r;
  r.complex = PseudoFreeComplex(f.base(), lo, std::move(elems), std::move(diffs));
  const PosetRep real = realize(r.complex);
  r.augmentation = augmentation_from(f, r.complex, real, gens);
  r.length = r.complex.hi() - f.hi();
  return r;
}

}  // namespace

Resolution resolve(const PosetRep& f) {
  const FinPoset& p = f.base();
  const std::size_t n = p.size();
  if (f.lo() > f.hi()) return finish(f, 0, {});
  const int lo = f.lo();
  const int hi = f.hi();
  const auto order = p.linear_extension();
  std::vector<std::vector<Generator>> all;  // all[k - lo]
  std::vector<Generator> none;
  for (int k = lo;; ++k) {
    if (k - hi > static_cast<int>(2 * n) + 1) throw InternalError("pseudo_free_resolve: step cap exceeded");
    const std::vector<Generator>& prev = (k > lo) ? all.back() : none;
    const std::vector<Generator>& prev2 = (k > lo + 1) ? all[all.size() - 2] : none;
    std::vector<Generator> cur;
    std::vector<RatMatrix> w(n);                   // W_k(q) basis columns
    std::vector<std::vector<std::size_t>> pidx(n);  // degree k−1 generators below q
    for (std::size_t q : order) {
      for (std::size_t j = 0; j < prev.size(); ++j)
        if (p.leq(prev[j].elem, q)) pidx[q].push_back(j);
    }
    for (std::size_t q : order) {
      const BddChainComplex& st = f.stalk(q);
      const std::size_t fk = st.dim(k), fk1 = st.dim(k - 1);
      const auto& pi = pidx[q];
      std::vector<std::size_t> pi2;
      for (std::size_t j = 0; j < prev2.size(); ++j)
        if (p.leq(prev2[j].elem, q)) pi2.push_back(j);
      // M = [[d_F, −Φ], [0, d_P]]
      RatMatrix m(fk1 + pi2.size(), fk + pi.size());
      const RatMatrix df = st.d(k);
      for (std::size_t i = 0; i < fk1; ++i)
        for (std::size_t j = 0; j < fk; ++j) m(i, j) = df(i, j);
      for (std::size_t c = 0; c < pi.size(); ++c) {
        const Generator& g = prev[pi[c]];
        if (fk1 > 0 && !g.phi.empty()) {
          RatMatrix v(g.phi.size(), 1);
          for (std::size_t i = 0; i < g.phi.size(); ++i) v(i, 0) = g.phi[i];
          const RatMatrix moved = component(f.transition(g.elem, q), f.stalk(g.elem), st, k - 1) * v;
          for (std::size_t i = 0; i < fk1; ++i) m(i, fk + c) = -moved(i, 0);
        }
        for (std::size_t r = 0; r < pi2.size(); ++r) m(fk1 + r, fk + c) = g.dcol.empty() ? Rational(0) : g.dcol[pi2[r]];
      }
      w[q] = kernel_basis(m);
      if (w[q].cols() == 0) continue;
      // Radical: images of W(r) for the lower covers r.
      std::vector<RatMatrix> images;
      for (std::size_t r : p.lower_covers(q)) {
        if (w[r].cols() == 0) continue;
        const std::size_t rk = f.stalk(r).dim(k);
        RatMatrix img(fk + pi.size(), w[r].cols());
        const RatMatrix tr = component(f.transition(r, q), f.stalk(r), st, k);
        for (std::size_t c = 0; c < w[r].cols(); ++c) {
          for (std::size_t i = 0; i < fk; ++i) {
            Rational s = 0;
            for (std::size_t l = 0; l < rk; ++l) s += tr(i, l) * w[r](l, c);
            img(i, c) = s;
          }
          const auto& pr = pidx[r];
          for (std::size_t l = 0; l < pr.size(); ++l) {
            const auto it = std::lower_bound(pi.begin(), pi.end(), pr[l]);
            img(fk + static_cast<std::size_t>(it - pi.begin()), c) = w[r](rk + l, c);
          }
        }
        images.push_back(std::move(img));
      }
      RatMatrix radical(fk + pi.size(), 0);
      for (const auto& im : images) radical = RatMatrix::hconcat(radical, im);
      const RatMatrix both = RatMatrix::hconcat(radical, w[q]);
      const RowEchelon ech = row_reduce(both);
      for (auto col : ech.pivots) {
        if (col < radical.cols()) continue;
        const std::size_t wc = col - radical.cols();
        Generator g;
        g.elem = q;
        g.phi.resize(fk);
        for (std::size_t i = 0; i < fk; ++i) g.phi[i] = w[q](i, wc);
        g.dcol.assign(prev.size(), Rational(0));
        for (std::size_t l = 0; l < pi.size(); ++l) g.dcol[pi[l]] = w[q](fk + l, wc);
        cur.push_back(std::move(g));
      }
    }
    const bool empty = cur.empty();
    all.push_back(std::move(cur));
    if (k >= hi && empty) break;
  }
  return finish(f, lo, std::move(all));
}

PseudoFreeComplex pseudo_free_resolve(const PosetRep& f) { return resolve(f).complex; }

Resolution bar_resolution(const PosetRep& f) {
  const FinPoset& p = f.base();
  if (f.lo() > f.hi()) return finish(f, 0, {});
  // All strict chains.
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> cur;
  std::function<void()> extend = [&]() {
    chains.push_back(cur);
    for (std::size_t q = 0; q < p.size(); ++q)
      if (p.lt(cur.back(), q)) {
        cur.push_back(q);
        extend();
        cur.pop_back();
      }
  };
  for (std::size_t q = 0; q < p.size(); ++q) {
    cur = {q};
    extend();
  }
  std::stable_sort(chains.begin(), chains.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
  std::size_t max_n = 0;
  for (const auto& c : chains) max_n = std::max(max_n, c.size() - 1);
  const int lo = f.lo();
  const int hi = f.hi() + static_cast<int>(max_n);
  // Generator key (chain, m, e).
  using Key = std::tuple<std::size_t, int, std::size_t>;
  std::vector<std::vector<Key>> keys(static_cast<std::size_t>(hi - lo + 1));
  std::map<Key, std::size_t> pos;
  std::map<std::vector<std::size_t>, std::size_t> chain_index;
  for (std::size_t c = 0; c < chains.size(); ++c) chain_index[chains[c]] = c;
  for (int deg = lo; deg <= hi; ++deg)
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const int n = static_cast<int>(chains[c].size()) - 1;
      const int m = deg - n;
      const std::size_t dim = f.stalk(chains[c].front()).dim(m);
      for (std::size_t e = 0; e < dim; ++e) {
        pos[{c, m, e}] = keys[deg - lo].size();
        keys[deg - lo].push_back({c, m, e});
      }
    }
  std::vector<std::vector<Generator>> gens(keys.size());
  for (int deg = lo; deg <= hi; ++deg) {
    const std::size_t prev_count = deg > lo ? keys[deg - 1 - lo].size() : 0;
    for (const auto& [c, m, e] : keys[deg - lo]) {
      const auto& ch = chains[c];
      const int n = static_cast<int>(ch.size()) - 1;
      Generator g;
      g.elem = ch.back();
      if (n == 0) {
        g.phi.assign(f.stalk(ch[0]).dim(m), Rational(0));
        g.phi[e] = 1;
      }
      g.dcol.assign(prev_count, Rational(0));
      auto add = [&](std::size_t chain, int mm, std::size_t ee, const Rational& v) {
        g.dcol[pos.at({chain, mm, ee})] += v;
      };
      if (n >= 1) {
        // Face 0: apply F(p0 → p1).
        std::vector<std::size_t> face(ch.begin() + 1, ch.end());
        const std::size_t fc = chain_index.at(face);
        const RatMatrix tr = component(f.transition(ch[0], ch[1]), f.stalk(ch[0]), f.stalk(ch[1]), m);
        for (std::size_t i = 0; i < tr.rows(); ++i)
          if (tr(i, e) != 0) add(fc, m, i, tr(i, e));
        for (int j = 1; j <= n; ++j) {
          std::vector<std::size_t> fj = ch;
          fj.erase(fj.begin() + j);
          add(chain_index.at(fj), m, e, Rational(j % 2 == 0 ? 1 : -1));
        }
      }
      const RatMatrix df = f.stalk(ch[0]).d(m);
      const Rational sign = (n % 2 == 0) ? 1 : -1;
      for (std::size_t i = 0; i < df.rows(); ++i)
        if (df(i, e) != 0) add(c, m - 1, i, sign * df(i, e));
      gens[deg - lo].push_back(std::move(g));
    }
  }
  return finish(f, lo, std::move(gens));
}

PosetRep derived_pushforward(const MonotoneMap& f, const PosetRep& g, ResolutionKind kind) {
  if (!(f.source() == g.base())) throw InputError("derived_pushforward: representation is not on the source poset");
  const Resolution r = kind == ResolutionKind::bar ? bar_resolution(g) : resolve(g);
  return realize(map_generators(f, r.complex));
}

}  // namespace cshv

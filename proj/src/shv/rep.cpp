#include <algorithm>

#include "cshv/error.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

namespace {

// Component k of a chain map as a correctly shaped matrix.
RatMatrix component(const ChainMap& f, const BddChainComplex& x, const BddChainComplex& y, int k) {
  RatMatrix m = f.at(k);
  if (m.rows() != y.dim(k) || m.cols() != x.dim(k)) return RatMatrix(y.dim(k), x.dim(k));
  return m;
}

}  // namespace

PosetRep::PosetRep(FinPoset base, std::vector<BddChainComplex> stalks, const CoverMaps& transitions)
    : base_(std::move(base)), stalks_(std::move(stalks)) {
  const std::size_t n = base_.size();
  if (stalks_.size() != n) throw InputError("representation: one stalk per element is required");
  std::vector<std::vector<char>> is_cover(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : base_.covers()) is_cover[a][b] = 1;
  for (const auto& [key, map] : transitions) {
    const auto [a, b] = key;
    if (a >= n || b >= n || !is_cover[a][b]) throw InputError("representation: transition given for a non-cover pair");
    if (!is_chain_map(map, stalks_[a], stalks_[b]))
      throw InvariantError("representation: transition " + base_.label(a) + "->" + base_.label(b) +
                           " is not a chain map");
  }
  trans_.assign(n * n, ChainMap());
  for (std::size_t p = 0; p < n; ++p) trans_[p * n + p] = ChainMap::identity(stalks_[p]);
  auto cover_map = [&](std::size_t a, std::size_t b) -> ChainMap {
    auto it = transitions.find({a, b});
    if (it != transitions.end()) return it->second;
    if (stalks_[a].is_zero() || stalks_[b].is_zero()) return ChainMap(stalks_[a], stalks_[b]);
    throw InputError("representation: missing transition " + base_.label(a) + "->" + base_.label(b));
  };
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> covers;
  for (const auto& [a, b] : base_.covers()) covers[{a, b}] = cover_map(a, b);
  for (std::size_t q : base_.linear_extension()) {
    const auto lower = base_.lower_covers(q);
    for (std::size_t p = 0; p < n; ++p) {
      if (!base_.lt(p, q)) continue;
      bool have = false;
      ChainMap first;
      for (std::size_t r : lower) {
        if (!base_.leq(p, r)) continue;
        ChainMap via = compose(covers.at({r, q}), trans_[p * n + r], stalks_[p], stalks_[q]);
        if (!have) {
          first = std::move(via);
          have = true;
        } else if (!chain_maps_equal(first, via, stalks_[p], stalks_[q])) {
          throw InvariantError("representation: paths from " + base_.label(p) + " to " + base_.label(q) +
                               " disagree");
        }
      }
      trans_[p * n + q] = std::move(first);
    }
  }
}

const ChainMap& PosetRep::transition(std::size_t p, std::size_t q) const {
  if (p >= size() || q >= size() || !base_.leq(p, q)) throw InputError("transition requested for p ≰ q");
  return trans_[p * size() + q];
}

PosetRep::CoverMaps PosetRep::cover_transitions() const {
  CoverMaps out;
  for (const auto& [a, b] : base_.covers()) out[{a, b}] = transition(a, b);
  return out;
}

int PosetRep::lo() const {
  int lo = 0;
  bool any = false;
  for (const auto& s : stalks_)
    for (int k = s.lo(); k <= s.hi(); ++k)
      if (s.dim(k) > 0) {
        lo = any ? std::min(lo, k) : k;
        any = true;
        break;
      }
  return any ? lo : 1;
}

int PosetRep::hi() const {
  int hi = 0;
  bool any = false;
  for (const auto& s : stalks_)
    for (int k = s.hi(); k >= s.lo(); --k)
      if (s.dim(k) > 0) {
        hi = any ? std::max(hi, k) : k;
        any = true;
        break;
      }
  return any ? hi : 0;
}

namespace {

PosetRep indicator(const FinPoset& poset, const Subset& support, int degree) {
  std::vector<BddChainComplex> stalks(poset.size());
  for (auto p : support) stalks[p] = BddChainComplex::concentrated(degree, 1);
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : poset.covers())
    if (!stalks[a].is_zero() && !stalks[b].is_zero()) t[{a, b}] = ChainMap::identity(stalks[a]);
  return PosetRep(poset, std::move(stalks), t);
}

}  // namespace

PosetRep constant_sheaf(const FinPoset& p, int degree) { return indicator(p, p.all(), degree); }
PosetRep star_sheaf(const FinPoset& poset, std::size_t p) { return indicator(poset, open_star(poset, p).members(), 0); }
PosetRep skyscraper(const FinPoset& poset, std::size_t p) { return indicator(poset, Subset{p}, 0); }
PosetRep zero_rep(const FinPoset& poset) { return indicator(poset, {}, 0); }

std::vector<GradedDims> stalk_homology(const PosetRep& f) {
  std::vector<GradedDims> out;
  for (const auto& s : f.stalks()) out.push_back(homology_dims(s));
  return out;
}

bool is_natural(const RepMorphism& m, const PosetRep& source, const PosetRep& target) {
  if (!(source.base() == target.base()) || m.components.size() != source.size()) return false;
  for (std::size_t p = 0; p < source.size(); ++p)
    if (!is_chain_map(m.components[p], source.stalk(p), target.stalk(p))) return false;
  for (const auto& [a, b] : source.base().covers()) {
    const ChainMap lhs = compose(target.transition(a, b), m.components[a], source.stalk(a), target.stalk(b));
    const ChainMap rhs = compose(m.components[b], source.transition(a, b), source.stalk(a), target.stalk(b));
    if (!chain_maps_equal(lhs, rhs, source.stalk(a), target.stalk(b))) return false;
  }
  return true;
}

bool is_stalkwise_quasi_iso(const RepMorphism& m, const PosetRep& source, const PosetRep& target) {
  for (std::size_t p = 0; p < source.size(); ++p)
    if (!is_quasi_isomorphism(m.components.at(p), source.stalk(p), target.stalk(p))) return false;
  return true;
}

RepMorphism identity_morphism(const PosetRep& f) {
  RepMorphism m;
  for (const auto& s : f.stalks()) m.components.push_back(ChainMap::identity(s));
  return m;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f, const PosetRep& source, const PosetRep& target) {
  RepMorphism m;
  for (std::size_t p = 0; p < source.size(); ++p)
    m.components.push_back(compose(g.components.at(p), f.components.at(p), source.stalk(p), target.stalk(p)));
  return m;
}

PosetRep mapping_cone(const RepMorphism& m, const PosetRep& source, const PosetRep& target) {
  const FinPoset& base = source.base();
  std::vector<BddChainComplex> stalks;
  for (std::size_t p = 0; p < base.size(); ++p)
    stalks.push_back(mapping_cone(m.components.at(p), source.stalk(p), target.stalk(p)));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : base.covers()) {
    ChainMap c(stalks[a], stalks[b]);
    for (int k = c.lo(); k <= c.hi(); ++k) {
      const RatMatrix fx = component(source.transition(a, b), source.stalk(a), source.stalk(b), k - 1);
      const RatMatrix fy = component(target.transition(a, b), target.stalk(a), target.stalk(b), k);
      c.at(k) = RatMatrix::direct_sum(fx, fy);
    }
    t[{a, b}] = std::move(c);
  }
  return PosetRep(base, std::move(stalks), t);
}

PosetRep fiber(const RepMorphism& m, const PosetRep& source, const PosetRep& target) {
  return shift(mapping_cone(m, source, target), -1);
}

RepMorphism fiber_projection(const RepMorphism& m, const PosetRep& source, const PosetRep& target) {
  const PosetRep k = fiber(m, source, target);
  RepMorphism out;
  for (std::size_t p = 0; p < source.size(); ++p) {
    const BddChainComplex& kp = k.stalk(p);
    const BddChainComplex& fp = source.stalk(p);
    ChainMap c(kp, fp);
    for (int d = c.lo(); d <= c.hi(); ++d) {
      // fiber_d = source_d ⊕ target_{d+1}
      RatMatrix proj(fp.dim(d), kp.dim(d));
      for (std::size_t i = 0; i < fp.dim(d); ++i) proj(i, i) = 1;
      c.at(d) = std::move(proj);
    }
    out.components.push_back(std::move(c));
  }
  return out;
}

PosetRep pullback(const MonotoneMap& f, const PosetRep& g) {
  if (!(f.target() == g.base())) throw InputError("pullback: map target is not the base of the representation");
  const FinPoset& p = f.source();
  std::vector<BddChainComplex> stalks;
  for (std::size_t i = 0; i < p.size(); ++i) stalks.push_back(g.stalk(f(i)));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : p.covers()) t[{a, b}] = g.transition(f(a), f(b));
  return PosetRep(p, std::move(stalks), t);
}

PosetRep restrict(const PosetRep& f, const Subset& s) {
  const FinPoset sub = f.base().induced(s);
  std::vector<BddChainComplex> stalks;
  for (auto i : s) stalks.push_back(f.stalk(i));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : sub.covers()) t[{a, b}] = f.transition(s[a], s[b]);
  return PosetRep(sub, std::move(stalks), t);
}

PosetRep shift(const PosetRep& f, int n) {
  std::vector<BddChainComplex> stalks;
  for (const auto& s : f.stalks()) stalks.push_back(shift(s, n));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : f.base().covers()) t[{a, b}] = shift(f.transition(a, b), n);
  return PosetRep(f.base(), std::move(stalks), t);
}

PosetRep tensor(const PosetRep& f, const PosetRep& g) {
  if (!(f.base() == g.base())) throw InputError("tensor: representations live on different posets");
  std::vector<BddChainComplex> stalks;
  for (std::size_t p = 0; p < f.size(); ++p) stalks.push_back(tensor_complex(f.stalk(p), g.stalk(p)));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : f.base().covers())
    t[{a, b}] = tensor_maps(f.transition(a, b), g.transition(a, b), f.stalk(a), f.stalk(b), g.stalk(a), g.stalk(b));
  return PosetRep(f.base(), std::move(stalks), t);
}

PosetRep direct_sum(const PosetRep& f, const PosetRep& g) {
  if (!(f.base() == g.base())) throw InputError("direct_sum: representations live on different posets");
  std::vector<BddChainComplex> stalks;
  for (std::size_t p = 0; p < f.size(); ++p) stalks.push_back(direct_sum(f.stalk(p), g.stalk(p)));
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : f.base().covers()) {
    ChainMap c(stalks[a], stalks[b]);
    for (int k = c.lo(); k <= c.hi(); ++k)
      c.at(k) = RatMatrix::direct_sum(component(f.transition(a, b), f.stalk(a), f.stalk(b), k),
                                      component(g.transition(a, b), g.stalk(a), g.stalk(b), k));
    t[{a, b}] = std::move(c);
  }
  return PosetRep(f.base(), std::move(stalks), t);
}

}  // namespace cshv

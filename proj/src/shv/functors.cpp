#include <algorithm>
#include <utility>

#include "cshv/error.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

PosetRep extend_by_zero(const FinPoset& p, const UpSet& u, const PosetRep& f) {
  if (!p.is_up_set(u.members())) throw InputError("extend_by_zero: set is not open");
  if (!(f.base() == p.induced(u.members()))) throw InputError("extend_by_zero: representation is not on the open set");
  std::vector<BddChainComplex> stalks(p.size());
  const Subset& m = u.members();
  for (std::size_t i = 0; i < m.size(); ++i) stalks[m[i]] = f.stalk(i);
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : p.covers()) {
    if (!u.contains(a) || !u.contains(b)) continue;
    const auto ia = static_cast<std::size_t>(std::lower_bound(m.begin(), m.end(), a) - m.begin());
    const auto ib = static_cast<std::size_t>(std::lower_bound(m.begin(), m.end(), b) - m.begin());
    t[{a, b}] = f.transition(ia, ib);
  }
  return PosetRep(p, std::move(stalks), t);
}

namespace {

// Stalk at p is the holim of g over p⋆ ∩ sub (in sub's local indices).
PosetRep push_along_inclusion(const FinPoset& p, const Subset& sub, const PosetRep& g) {
  std::vector<Subset> local(p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t i = 0; i < sub.size(); ++i)
      if (p.leq(x, sub[i])) local[x].push_back(i);
  std::vector<Holim> hs;
  std::vector<BddChainComplex> stalks;
  for (std::size_t x = 0; x < p.size(); ++x) {
    hs.push_back(holim(g, local[x]));
    stalks.push_back(hs.back().complex);
  }
  PosetRep::CoverMaps t;
  for (const auto& [a, b] : p.covers()) t[{a, b}] = holim_restriction(g, hs[a], hs[b]);
  return PosetRep(p, std::move(stalks), t);
}

// Unit F → (push of F|_sub along the inclusion).
RepMorphism unit_to_pushforward(const PosetRep& f, const Subset& sub, const PosetRep& pushed) {
  const PosetRep g = restrict(f, sub);
  const FinPoset& p = f.base();
  RepMorphism m;
  for (std::size_t x = 0; x < p.size(); ++x) {
    Subset local;
    for (std::size_t i = 0; i < sub.size(); ++i)
      if (p.leq(x, sub[i])) local.push_back(i);
    const Holim h = holim(g, local);
    ChainMap u = holim_unit(f, x, sub, h);
    // Re-shape onto the stalk complex of `pushed` (identical basis).
    ChainMap c(f.stalk(x), pushed.stalk(x));
    for (int k = c.lo(); k <= c.hi(); ++k) {
      RatMatrix comp = u.at(k);
      if (comp.rows() != pushed.stalk(x).dim(k) || comp.cols() != f.stalk(x).dim(k))
        comp = RatMatrix(pushed.stalk(x).dim(k), f.stalk(x).dim(k));
      c.at(k) = std::move(comp);
    }
    m.components.push_back(std::move(c));
  }
  return m;
}

std::string stalk_name(const FinPoset& p, std::size_t x) { return "\"" + p.label(x) + "\""; }

}  // namespace

PosetRep closed_pushforward(const FinPoset& p, const Subset& z, const PosetRep& g) {
  if (!p.is_down_set(z)) throw InputError("closed_pushforward: set is not closed");
  if (!(g.base() == p.induced(z))) throw InputError("closed_pushforward: representation is not on the closed set");
  return push_along_inclusion(p, z, g);
}

PosetRep open_pushforward(const FinPoset& p, const UpSet& u, const PosetRep& f) {
  if (!p.is_up_set(u.members())) throw InputError("open_pushforward: set is not open");
  if (!(f.base() == p.induced(u.members()))) throw InputError("open_pushforward: representation is not on the open set");
  return push_along_inclusion(p, u.members(), f);
}

std::vector<Check> long_exact_checks(const ThreeTerm& t, const std::string& prefix) {
  std::vector<Check> out;
  const FinPoset& p = t.b.base();
  Check exact_b{prefix + ": exactness at the middle term", true, ""};
  Check exact_c{prefix + ": connecting ranks", true, ""};
  Check zero{prefix + ": H(g)H(f) = 0", true, ""};
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto& a = t.a.stalk(x);
    const auto& b = t.b.stalk(x);
    const auto& c = t.c.stalk(x);
    const ChainMap& f = t.f.components.at(x);
    const ChainMap& g = t.g.components.at(x);
    const GradedDims ha = homology_dims(a), hb = homology_dims(b), hc = homology_dims(c);
    const ChainMap gf = compose(g, f, a, c);
    int lo = std::min({a.lo(), b.lo(), c.lo()}) - 1;
    int hi = std::max({a.hi(), b.hi(), c.hi()}) + 1;
    for (int k = lo; k <= hi; ++k) {
      const long rf = static_cast<long>(induced_rank(f, a, b, k));
      const long rg = static_cast<long>(induced_rank(g, b, c, k));
      const long rf1 = static_cast<long>(induced_rank(f, a, b, k - 1));
      if (static_cast<long>(hb.at(k)) != rf + rg && exact_b.passed) {
        exact_b.passed = false;
        exact_b.detail = "stalk " + stalk_name(p, x) + ", degree " + std::to_string(k);
      }
      if (static_cast<long>(hc.at(k)) - rg != static_cast<long>(ha.at(k - 1)) - rf1 && exact_c.passed) {
        exact_c.passed = false;
        exact_c.detail = "stalk " + stalk_name(p, x) + ", degree " + std::to_string(k);
      }
      if (induced_rank(gf, a, c, k) != 0 && zero.passed) {
        zero.passed = false;
        zero.detail = "stalk " + stalk_name(p, x) + ", degree " + std::to_string(k);
      }
    }
  }
  out.push_back(exact_b);
  out.push_back(exact_c);
  out.push_back(zero);
  return out;
}

bool Recollement::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Recollement recollement_triangle(const PosetRep& f, const UpSet& u) {
  const FinPoset& p = f.base();
  if (!p.is_up_set(u.members())) throw InputError("recollement: set is not open");
  const Subset z = set_difference(p.all(), u.members());
  Recollement r;

  // j_!j*F → F → i_*i*F
  {
    ThreeTerm& t = r.open_closed;
    t.a = extend_by_zero(p, u, restrict(f, u.members()));
    t.b = f;
    t.c = closed_pushforward(p, z, restrict(f, z));
    for (std::size_t x = 0; x < p.size(); ++x) {
      ChainMap m(t.a.stalk(x), f.stalk(x));
      if (u.contains(x)) m = ChainMap::identity(f.stalk(x));
      t.f.components.push_back(std::move(m));
    }
    t.g = unit_to_pushforward(f, z, t.c);
    r.checks.push_back({"j_!j* -> F natural", is_natural(t.f, t.a, t.b), ""});
    r.checks.push_back({"F -> i_*i* natural", is_natural(t.g, t.b, t.c), ""});
    bool strict_zero = true;
    bool cofiber = true;
    std::string where;
    for (std::size_t x = 0; x < p.size(); ++x) {
      const ChainMap gf = compose(t.g.components[x], t.f.components[x], t.a.stalk(x), t.c.stalk(x));
      if (!chain_maps_equal(gf, ChainMap(t.a.stalk(x), t.c.stalk(x)), t.a.stalk(x), t.c.stalk(x))) strict_zero = false;
      // cone(f) → C, (a, b) ↦ g b.
      const BddChainComplex cone = mapping_cone(t.f.components[x], t.a.stalk(x), t.b.stalk(x));
      ChainMap q(cone, t.c.stalk(x));
      for (int k = q.lo(); k <= q.hi(); ++k) {
        RatMatrix m(t.c.stalk(x).dim(k), cone.dim(k));
        const RatMatrix gk = std::as_const(t.g.components[x]).at(k);
        if (gk.rows() == m.rows() && gk.cols() == t.b.stalk(x).dim(k)) {
          const std::size_t off = t.a.stalk(x).dim(k - 1);
          for (std::size_t i = 0; i < gk.rows(); ++i)
            for (std::size_t j = 0; j < gk.cols(); ++j) m(i, off + j) = gk(i, j);
        }
        q.at(k) = std::move(m);
      }
      if (!is_chain_map(q, cone, t.c.stalk(x)) || !is_quasi_isomorphism(q, cone, t.c.stalk(x))) {
        if (cofiber) where = p.label(x);
        cofiber = false;
      }
    }
    r.checks.push_back({"j_!j* -> F -> i_*i*: composite is zero", strict_zero, ""});
    r.checks.push_back({"j_!j* -> F -> i_*i*: cone(f) -> i_*i*F quasi-iso", cofiber, where});
    for (auto& c : long_exact_checks(t, "j_!j* -> F -> i_*i*")) r.checks.push_back(std::move(c));
  }

  // K → F → j_*j*F, K = fib(F → j_*j*F) standing for i_*i^!F.
  {
    ThreeTerm& t = r.closed_open;
    t.c = open_pushforward(p, u, restrict(f, u.members()));
    t.b = f;
    t.g = unit_to_pushforward(f, u.members(), t.c);
    t.a = fiber(t.g, t.b, t.c);
    t.f = fiber_projection(t.g, t.b, t.c);
    r.checks.push_back({"F -> j_*j* natural", is_natural(t.g, t.b, t.c), ""});
    r.checks.push_back({"i_*i^! -> F natural", is_natural(t.f, t.a, t.b), ""});
    for (auto& c : long_exact_checks(t, "i_*i^! -> F -> j_*j*")) r.checks.push_back(std::move(c));

    r.i_shriek = closed_pushforward(p, z, restrict(t.a, z));
    const RepMorphism unit = unit_to_pushforward(t.a, z, r.i_shriek);
    bool supported = true;
    for (auto x : u.members())
      if (!homology_dims(t.a.stalk(x)).is_zero()) supported = false;
    r.checks.push_back({"i_*i^!F vanishes on U", supported, ""});
    r.checks.push_back({"i_*i^!F = i_*(i*K)", is_stalkwise_quasi_iso(unit, t.a, r.i_shriek), ""});
  }
  return r;
}

PosetRep twist_by_dualizing(const PosetRep& f, int n, const PosetRep& orientation) {
  if (!(orientation.base() == f.base())) throw InputError("twist: orientation lives on a different poset");
  for (const auto& s : orientation.stalks())
    if (s.dim(0) != 1 || s.total_dim() != 1) throw InputError("twist: orientation stalks must be ℚ in degree 0");
  for (const auto& [a, b] : orientation.base().covers()) {
    const RatMatrix m = orientation.transition(a, b).at(0);
    if (m.rows() != 1 || m.cols() != 1 || m(0, 0) == 0) throw InputError("twist: orientation transition is not invertible");
  }
  return shift(tensor(f, orientation), n);
}

bool check_locally_constant(const PosetRep& f, const Stratification& s) {
  if (!(s.space() == f.base())) throw InputError("check_locally_constant: stratification is on a different poset");
  for (const auto& stratum : s.strata())
    for (auto a : stratum)
      for (auto b : stratum)
        if (f.base().lt(a, b) && !is_quasi_isomorphism(f.transition(a, b), f.stalk(a), f.stalk(b))) return false;
  return true;
}

}  // namespace cshv

#include "cshv/stratify.hpp"

#include <algorithm>

#include "cshv/error.hpp"

namespace cshv {

std::vector<Subset> Stratification::strata() const {
  std::vector<Subset> out(strata_poset().size());
  for (std::size_t x = 0; x < space().size(); ++x) out[map_(x)].push_back(x);
  return out;
}

Stratification cover_stratification(const FinPoset& x, const std::vector<UpSet>& cover) {
  const std::size_t k = cover.size();
  if (k > 12) throw InputError("cover_stratification: at most 12 cover members are supported");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> labels(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::string l = "{";
    bool first = true;
    for (std::size_t i = 0; i < k; ++i)
      if (m & (std::size_t{1} << i)) {
        if (!first) l += ",";
        l += std::to_string(i + 1);
        first = false;
      }
    labels[m] = l + "}";
  }
  std::vector<char> order(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) order[a * n + b] = ((a & b) == a) ? 1 : 0;
  FinPoset pow = FinPoset::from_order(std::move(labels), std::move(order));
  std::vector<std::size_t> assignment(x.size(), 0);
  for (std::size_t i = 0; i < k; ++i)
    for (auto p : cover[i].members()) assignment.at(p) |= std::size_t{1} << i;
  return Stratification(MonotoneMap(x, std::move(pow), std::move(assignment)));
}

ProperCheck is_proper(const Stratification& s) {
  const auto strata = s.strata();
  const FinPoset& p = s.strata_poset();
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].empty()) return {false, i};
  for (std::size_t i = 0; i < strata.size(); ++i) {
    Subset below;
    for (std::size_t j = 0; j < strata.size(); ++j)
      if (p.leq(j, i)) below = set_union(below, strata[j]);
    if (down_closure(s.space(), strata[i]) != below) return {false, i};
  }
  return {};
}

namespace {

struct Piece {
  std::string label;
  Subset members;
};

// Closure of t inside the subspace s.
Subset closure_in(const FinPoset& x, const Subset& s, const Subset& t) {
  return set_intersection(down_closure(x, t), s);
}

void push_unique(std::vector<Subset>& v, Subset t) {
  if (t.empty()) return;
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(std::move(t));
}

std::string join(const std::string& prefix, const std::string& part) {
  return prefix.empty() ? part : prefix + "." + part;
}

// The proof's recursion on the subspace s. Z also absorbs ∂S₀ so that S₀ ∩ V = V.
void refine_rec(const FinPoset& x, const Subset& s, const std::vector<Subset>& theta, const std::string& path,
                std::vector<Piece>& out) {
  if (s.empty()) return;
  if (theta.empty()) {
    const auto comps = connected_components(x, s);
    for (std::size_t i = 0; i < comps.size(); ++i) out.push_back({join(path, std::to_string(i)), comps[i]});
    return;
  }
  const Subset& s0 = theta.front();
  const Subset cl_s0 = closure_in(x, s, s0);
  const Subset u = set_difference(s, cl_s0);
  const Subset cl_u = closure_in(x, s, u);
  const Subset closed = set_union(cl_u, set_difference(cl_s0, s0));
  const Subset v = set_difference(s, closed);
  const Subset z = set_difference(closed, u);

  std::vector<Subset> theta0, theta1;
  for (std::size_t i = 1; i < theta.size(); ++i) {
    push_unique(theta0, set_intersection(theta[i], u));
    push_unique(theta1, set_intersection(theta[i], v));
  }
  std::vector<Piece> pieces_u, pieces_v;
  refine_rec(x, u, theta0, join(path, "U"), pieces_u);
  refine_rec(x, v, theta1, join(path, "V"), pieces_v);

  std::vector<Subset> theta_z;
  for (const auto& pc : pieces_u) push_unique(theta_z, set_intersection(down_closure(x, pc.members), z));
  for (const auto& pc : pieces_v) push_unique(theta_z, set_intersection(down_closure(x, pc.members), z));
  push_unique(theta_z, set_intersection(cl_s0, z));
  for (const auto& t : theta) push_unique(theta_z, set_intersection(t, z));
  std::vector<Piece> pieces_z;
  refine_rec(x, z, theta_z, join(path, "Z"), pieces_z);

  for (auto* group : {&pieces_u, &pieces_v, &pieces_z})
    for (auto& pc : *group) out.push_back(std::move(pc));
}

bool is_union_of(const Subset& t, const std::vector<Piece>& pieces) {
  Subset acc;
  for (const auto& pc : pieces) {
    const Subset common = set_intersection(pc.members, t);
    if (common.empty()) continue;
    if (common != pc.members) return false;
    acc = set_union(acc, common);
  }
  return acc == t;
}

}  // namespace

Stratification proper_refine(const FinPoset& x, const std::vector<Subset>& theta) {
  std::vector<Subset> clean;
  for (auto t : theta) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    for (auto i : t)
      if (i >= x.size()) throw InputError("proper_refine: element out of range");
    if (!x.is_locally_closed(t)) throw InputError("proper_refine: a member of the collection is not locally closed");
    push_unique(clean, std::move(t));
  }
  std::vector<Piece> pieces;
  refine_rec(x, x.all(), clean, "", pieces);

  const std::size_t n = pieces.size();
  std::vector<Subset> closures;
  for (const auto& pc : pieces) closures.push_back(down_closure(x, pc.members));
  std::vector<std::string> labels;
  std::vector<char> order(n * n, 0);
  std::vector<std::size_t> assignment(x.size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(pieces[a].label);
    for (auto p : pieces[a].members) assignment[p] = a;
    for (std::size_t b = 0; b < n; ++b) order[a * n + b] = is_subset(pieces[a].members, closures[b]) ? 1 : 0;
  }
  FinPoset strata;
  try {
    strata = FinPoset::from_order(std::move(labels), std::move(order));
  } catch (const InvariantError& e) {
    throw InternalError(std::string("proper_refine: frontier relation is not an order: ") + e.what());
  }
  Stratification result(MonotoneMap(x, std::move(strata), std::move(assignment)));
  if (!is_proper(result).proper) throw InternalError("proper_refine: result is not proper");
  for (const auto& t : clean)
    if (!is_union_of(t, pieces)) throw InternalError("proper_refine: a member is not a union of strata");
  return result;
}

Refinement refine_stratification(const Stratification& s) {
  std::vector<Subset> theta;
  for (auto& t : s.strata())
    if (!t.empty()) theta.push_back(std::move(t));
  Stratification beta = proper_refine(s.space(), theta);
  const auto pieces = beta.strata();
  std::vector<std::size_t> psi(pieces.size());
  for (std::size_t q = 0; q < pieces.size(); ++q) psi[q] = s.map()(pieces[q].front());
  try {
    MonotoneMap m(beta.strata_poset(), s.strata_poset(), std::move(psi));
    return {std::move(beta), std::move(m)};
  } catch (const InvariantError& e) {
    throw InternalError(std::string("refine_stratification: factoring map is not monotone: ") + e.what());
  }
}

bool in_good_position(const FinPoset& x, const UpSet& v, const std::vector<UpSet>& sets) {
  const Subset z = set_difference(x.all(), v.members());
  for (const auto& u : sets) {
    const Subset common = set_intersection(z, u.members());
    if (!common.empty() && common != z) return false;
  }
  return true;
}

}  // namespace cshv

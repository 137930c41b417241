#include "cshv/poset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "cshv/error.hpp"

namespace cshv {

FinPoset::FinPoset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& relations)
    : labels_(std::move(labels)) {
  build_index();
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  idx.reserve(relations.size());
  for (const auto& [a, b] : relations) idx.emplace_back(index(a), index(b));
  *this = from_index_relations(std::move(labels_), idx);
}

FinPoset FinPoset::from_index_relations(std::vector<std::string> labels,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& relations) {
  FinPoset p;
  p.labels_ = std::move(labels);
  p.build_index();
  const std::size_t n = p.labels_.size();
  p.leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p.leq_[i * n + i] = 1;
  for (const auto& [a, b] : relations) {
    if (a >= n || b >= n) throw InputError("relation refers to an element out of range");
    p.leq_[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.leq_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (p.leq_[k * n + j]) p.leq_[i * n + j] = 1;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.leq_[i * n + j] && p.leq_[j * n + i])
        throw InputError("order relation has a cycle through \"" + p.labels_[i] + "\" and \"" + p.labels_[j] + "\"");
  return p;
}

FinPoset FinPoset::from_order(std::vector<std::string> labels, std::vector<char> leq) {
  FinPoset p;
  p.labels_ = std::move(labels);
  p.build_index();
  const std::size_t n = p.labels_.size();
  if (leq.size() != n * n) throw InputError("order matrix has the wrong size");
  p.leq_ = std::move(leq);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.leq_[i * n + i]) throw InvariantError("order is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && p.leq_[i * n + j] && p.leq_[j * n + i]) throw InvariantError("order is not antisymmetric");
      if (!p.leq_[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (p.leq_[j * n + k] && !p.leq_[i * n + k]) throw InvariantError("order is not transitive");
    }
  }
  return p;
}

void FinPoset::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) throw InputError("duplicate element label \"" + labels_[i] + "\"");
  }
}

std::size_t FinPoset::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("unknown element \"" + label + "\"");
  return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> FinPoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (lt(a, c) && lt(c, b)) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::vector<std::size_t> FinPoset::lower_covers(std::size_t q) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < size(); ++p) {
    if (!lt(p, q)) continue;
    bool cover = true;
    for (std::size_t c = 0; c < size() && cover; ++c)
      if (lt(p, c) && lt(c, q)) cover = false;
    if (cover) out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> FinPoset::linear_extension() const {
  const std::size_t n = size();
  std::vector<int> height(n, 0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Number of elements strictly below is a valid topological key; refine by height.
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lt(j, i)) ++below[i];
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  for (std::size_t i : order)
    for (std::size_t j = 0; j < n; ++j)
      if (lt(j, i)) height[i] = std::max(height[i], height[j] + 1);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (height[a] != height[b]) return height[a] < height[b];
    return labels_[a] < labels_[b];
  });
  return order;
}

bool FinPoset::is_up_set(const Subset& s) const {
  std::vector<char> in(size(), 0);
  for (auto i : s) {
    if (i >= size()) return false;
    in[i] = 1;
  }
  for (auto i : s)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(i, j) && !in[j]) return false;
  return true;
}

bool FinPoset::is_down_set(const Subset& s) const {
  std::vector<char> in(size(), 0);
  for (auto i : s) {
    if (i >= size()) return false;
    in[i] = 1;
  }
  for (auto i : s)
    for (std::size_t j = 0; j < size(); ++j)
      if (leq(j, i) && !in[j]) return false;
  return true;
}

bool FinPoset::is_locally_closed(const Subset& s) const {
  std::vector<char> in(size(), 0);
  for (auto i : s) {
    if (i >= size()) return false;
    in[i] = 1;
  }
  for (auto a : s)
    for (auto b : s) {
      if (!leq(a, b)) continue;
      for (std::size_t c = 0; c < size(); ++c)
        if (leq(a, c) && leq(c, b) && !in[c]) return false;
    }
  return true;
}

FinPoset FinPoset::induced(const Subset& s) const {
  std::vector<std::string> labels;
  labels.reserve(s.size());
  for (auto i : s) labels.push_back(labels_.at(i));
  std::vector<char> order(s.size() * s.size(), 0);
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b) order[a * s.size() + b] = leq(s[a], s[b]) ? 1 : 0;
  FinPoset p;
  p.labels_ = std::move(labels);
  p.build_index();
  p.leq_ = std::move(order);
  return p;
}

std::vector<std::string> FinPoset::labels_of(const Subset& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(labels_.at(i));
  return out;
}

Subset FinPoset::subset_of(const std::vector<std::string>& labels) const {
  Subset s;
  for (const auto& l : labels) s.push_back(index(l));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Subset FinPoset::all() const {
  Subset s(size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

UpSet::UpSet(const FinPoset& poset, Subset members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!poset.is_up_set(members_)) throw InputError("set is not upward closed");
}

bool UpSet::contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

MonotoneMap::MonotoneMap(FinPoset source, FinPoset target, std::vector<std::size_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size()) throw InputError("map assignment does not cover the source");
  for (auto v : assignment_)
    if (v >= target_.size()) throw InputError("map value out of range");
  for (std::size_t a = 0; a < source_.size(); ++a)
    for (std::size_t b = 0; b < source_.size(); ++b)
      if (source_.leq(a, b) && !target_.leq(assignment_[a], assignment_[b]))
        throw InvariantError("map is not monotone at \"" + source_.label(a) + "\" ≤ \"" + source_.label(b) + "\"");
}

MonotoneMap MonotoneMap::from_labels(FinPoset source, FinPoset target,
                                     const std::map<std::string, std::string>& assignment) {
  std::vector<std::size_t> a(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    auto it = assignment.find(source.label(i));
    if (it == assignment.end()) throw InputError("map has no value for \"" + source.label(i) + "\"");
    a[i] = target.index(it->second);
  }
  if (assignment.size() != source.size()) throw InputError("map assigns values to unknown elements");
  return MonotoneMap(std::move(source), std::move(target), std::move(a));
}

MonotoneMap MonotoneMap::identity(const FinPoset& p) { return MonotoneMap(p, p, p.all()); }

MonotoneMap MonotoneMap::to_point(const FinPoset& p, const std::string& label) {
  return MonotoneMap(p, FinPoset({label}, {}), std::vector<std::size_t>(p.size(), 0));
}

Subset MonotoneMap::preimage(const Subset& target_subset) const {
  Subset out;
  for (std::size_t i = 0; i < assignment_.size(); ++i)
    if (std::binary_search(target_subset.begin(), target_subset.end(), assignment_[i])) out.push_back(i);
  return out;
}

Subset MonotoneMap::fiber(std::size_t q) const { return preimage(Subset{q}); }

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!(f.target() == g.source())) throw InputError("compose: target of the first map is not the source of the second");
  std::vector<std::size_t> a(f.source().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return MonotoneMap(f.source(), g.target(), std::move(a));
}

UpSet open_star(const FinPoset& poset, std::size_t p) {
  Subset s;
  for (std::size_t q = 0; q < poset.size(); ++q)
    if (poset.leq(p, q)) s.push_back(q);
  return UpSet(poset, std::move(s));
}

UpSet open_star(const FinPoset& poset, const std::string& label) { return open_star(poset, poset.index(label)); }

Subset down_closure(const FinPoset& poset, const Subset& s) {
  Subset out;
  for (std::size_t q = 0; q < poset.size(); ++q)
    for (auto p : s)
      if (poset.leq(q, p)) {
        out.push_back(q);
        break;
      }
  return out;
}

Subset up_closure(const FinPoset& poset, const Subset& s) {
  Subset out;
  for (std::size_t q = 0; q < poset.size(); ++q)
    for (auto p : s)
      if (poset.leq(p, q)) {
        out.push_back(q);
        break;
      }
  return out;
}

Subset boundary(const FinPoset& poset, const Subset& s) { return set_difference(down_closure(poset, s), s); }

Amalgamation amalgamate(const MonotoneMap& alpha, const std::map<std::size_t, MonotoneMap>& betas) {
  const FinPoset& x = alpha.source();
  const FinPoset& p = alpha.target();
  for (std::size_t q = 0; q < p.size(); ++q) {
    const Subset fib = alpha.fiber(q);
    auto it = betas.find(q);
    if (fib.empty()) {
      if (it != betas.end()) throw InputError("amalgamate: stratification given for the empty stratum \"" + p.label(q) + "\"");
      continue;
    }
    if (it == betas.end()) throw InputError("amalgamate: missing stratification of stratum \"" + p.label(q) + "\"");
    if (!(it->second.source() == x.induced(fib)))
      throw InputError("amalgamate: stratification of \"" + p.label(q) + "\" is not defined on its stratum");
  }
  // Elements (p, q) in order of p, then q.
  std::vector<std::pair<std::size_t, std::size_t>> elems;
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;
  for (const auto& [pi, beta] : betas) {
    for (std::size_t qi = 0; qi < beta.target().size(); ++qi) {
      where[{pi, qi}] = elems.size();
      elems.emplace_back(pi, qi);
      labels.push_back("(" + p.label(pi) + "," + beta.target().label(qi) + ")");
    }
  }
  const std::size_t n = elems.size();
  std::vector<char> order(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto [pa, qa] = elems[a];
      const auto [pb, qb] = elems[b];
      const bool le = p.lt(pa, pb) || (pa == pb && betas.at(pa).target().leq(qa, qb));
      order[a * n + b] = le ? 1 : 0;
    }
  FinPoset result = FinPoset::from_order(std::move(labels), std::move(order));
  std::vector<std::size_t> assignment(x.size());
  for (std::size_t q = 0; q < p.size(); ++q) {
    const Subset fib = alpha.fiber(q);
    for (std::size_t k = 0; k < fib.size(); ++k) assignment[fib[k]] = where.at({q, betas.at(q)(k)});
  }
  MonotoneMap map(x, result, std::move(assignment));
  return {std::move(result), std::move(map)};
}

FinPoset product(const FinPoset& p, const FinPoset& q) {
  const std::size_t n = p.size() * q.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) labels.push_back("(" + p.label(i) + "," + q.label(j) + ")");
  std::vector<char> order(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ia = a / q.size(), ja = a % q.size();
      const std::size_t ib = b / q.size(), jb = b % q.size();
      order[a * n + b] = (p.leq(ia, ib) && q.leq(ja, jb)) ? 1 : 0;
    }
  return FinPoset::from_order(std::move(labels), std::move(order));
}

namespace {

// Up-sets of the induced order on `s`, generated by deciding elements top-down.
void up_sets_of(const FinPoset& poset, const Subset& s, std::vector<Subset>& out) {
  std::vector<std::size_t> order = s;
  // Maximal elements first: sort by number of elements of s strictly above.
  std::vector<std::size_t> above(poset.size(), 0);
  for (auto a : s)
    for (auto b : s)
      if (poset.lt(a, b)) ++above[a];
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return above[a] < above[b]; });
  std::vector<char> chosen(poset.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      Subset u;
      for (auto i : s)
        if (chosen[i]) u.push_back(i);
      out.push_back(std::move(u));
      return;
    }
    const std::size_t x = order[k];
    bool can_include = true;
    for (auto y : s)
      if (poset.lt(x, y) && !chosen[y]) can_include = false;
    chosen[x] = 0;
    rec(k + 1);
    if (can_include) {
      chosen[x] = 1;
      rec(k + 1);
      chosen[x] = 0;
    }
  };
  rec(0);
}

int dimension_rec(const FinPoset& poset, const Subset& s, std::map<Subset, int>& memo) {
  if (s.empty()) return -1;
  if (auto it = memo.find(s); it != memo.end()) return it->second;
  std::vector<Subset> ups;
  up_sets_of(poset, s, ups);
  int best = 0;
  for (const auto& u : ups) {
    // Boundary of u inside the subspace s: closure within s minus u.
    Subset closure;
    for (auto q : s)
      for (auto p : u)
        if (poset.leq(q, p)) {
          closure.push_back(q);
          break;
        }
    const Subset bd = set_difference(closure, u);
    best = std::max(best, dimension_rec(poset, bd, memo) + 1);
  }
  memo[s] = best;
  return best;
}

}  // namespace

int inductive_dimension(const FinPoset& poset, const Subset& s) {
  std::map<Subset, int> memo;
  return dimension_rec(poset, s, memo);
}

int inductive_dimension(const FinPoset& poset) { return inductive_dimension(poset, poset.all()); }

int longest_chain_length(const FinPoset& poset) {
  if (poset.size() == 0) return -1;
  std::vector<int> height(poset.size(), 0);
  int best = 0;
  for (auto i : poset.linear_extension()) {
    for (std::size_t j = 0; j < poset.size(); ++j)
      if (poset.lt(j, i)) height[i] = std::max(height[i], height[j] + 1);
    best = std::max(best, height[i]);
  }
  return best;
}

std::vector<Subset> enumerate_up_sets(const FinPoset& poset) {
  std::vector<Subset> out;
  up_sets_of(poset, poset.all(), out);
  return out;
}

std::vector<Subset> connected_components(const FinPoset& poset, const Subset& s) {
  std::vector<std::size_t> parent(poset.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto a : s)
    for (auto b : s)
      if (poset.comparable(a, b)) parent[find(a)] = find(b);
  std::map<std::size_t, Subset> groups;
  for (auto a : s) groups[find(a)].push_back(a);
  std::vector<Subset> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

Subset set_union(const Subset& a, const Subset& b) {
  Subset out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Subset set_intersection(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Subset set_difference(const Subset& a, const Subset& b) {
  Subset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const Subset& a, const Subset& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace cshv

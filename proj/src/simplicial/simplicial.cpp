#include "cshv/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cshv/error.hpp"

namespace cshv {

namespace {

bool simplex_less(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Simplex> nonempty_subsets(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Simplex t;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) t.push_back(s[i]);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

AlmostSimplicialComplex::AlmostSimplicialComplex(std::vector<std::string> vertices,
                                                 const std::vector<std::vector<std::string>>& simplices)
    : vertices_(std::move(vertices)) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!idx.emplace(vertices_[i], i).second) throw InputError("duplicate vertex \"" + vertices_[i] + "\"");
  for (const auto& s : simplices) {
    Simplex t;
    for (const auto& v : s) {
      auto it = idx.find(v);
      if (it == idx.end()) throw InputError("simplex uses unknown vertex \"" + v + "\"");
      t.push_back(it->second);
    }
    simplices_.push_back(std::move(t));
  }
  canonicalize();
}

AlmostSimplicialComplex::AlmostSimplicialComplex(std::vector<std::string> vertices, std::vector<Simplex> simplices)
    : vertices_(std::move(vertices)), simplices_(std::move(simplices)) {
  std::set<std::string> seen(vertices_.begin(), vertices_.end());
  if (seen.size() != vertices_.size()) throw InputError("duplicate vertex label");
  for (const auto& s : simplices_)
    for (auto v : s)
      if (v >= vertices_.size()) throw InputError("simplex vertex out of range");
  canonicalize();
}

void AlmostSimplicialComplex::canonicalize() {
  // Sort vertices by label and remap.
  std::vector<std::size_t> perm(vertices_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return vertices_[a] < vertices_[b]; });
  std::vector<std::size_t> where(perm.size());
  std::vector<std::string> sorted;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = i;
    sorted.push_back(vertices_[perm[i]]);
  }
  vertices_ = std::move(sorted);
  for (auto& s : simplices_) {
    if (s.empty()) throw InputError("empty simplex");
    for (auto& v : s) v = where[v];
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("simplex repeats a vertex");
  }
  std::sort(simplices_.begin(), simplices_.end(), simplex_less);
  simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());
}

bool AlmostSimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s, simplex_less);
}

std::string AlmostSimplicialComplex::label(const Simplex& s) const {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += vertices_.at(s[i]);
  }
  return out;
}

std::vector<std::string> AlmostSimplicialComplex::vertex_labels(const Simplex& s) const {
  std::vector<std::string> out;
  for (auto v : s) out.push_back(vertices_.at(v));
  return out;
}

int AlmostSimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

AlmostSimplicialComplex simplicial_closure(const AlmostSimplicialComplex& k) {
  std::set<Simplex> all;
  for (const auto& s : k.simplices())
    for (auto& t : nonempty_subsets(s)) all.insert(std::move(t));
  return AlmostSimplicialComplex(k.vertices(), std::vector<Simplex>(all.begin(), all.end()));
}

bool is_locally_closed(const AlmostSimplicialComplex& k) {
  // Enough to check: every face of a member lying above some member is a member.
  for (const auto& top : k.simplices()) {
    for (const auto& mid : nonempty_subsets(top)) {
      if (k.contains(mid)) continue;
      for (const auto& low : k.simplices())
        if (std::includes(mid.begin(), mid.end(), low.begin(), low.end())) return false;
    }
  }
  return true;
}

FinPoset face_poset(const AlmostSimplicialComplex& k) {
  const auto& s = k.simplices();
  const std::size_t n = s.size();
  std::vector<std::string> labels;
  for (const auto& x : s) labels.push_back(k.label(x));
  std::vector<char> order(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      order[a * n + b] = std::includes(s[b].begin(), s[b].end(), s[a].begin(), s[a].end()) ? 1 : 0;
  return FinPoset::from_order(std::move(labels), std::move(order));
}

BddChainComplex simplicial_chain_complex(const AlmostSimplicialComplex& k) {
  const int top = k.dimension();
  if (top < 0) return BddChainComplex::zero();
  std::vector<std::vector<std::size_t>> by_dim(top + 1);
  std::map<Simplex, std::size_t> pos;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto& s = k.simplices()[i];
    const int d = static_cast<int>(s.size()) - 1;
    pos[s] = by_dim[d].size();
    by_dim[d].push_back(i);
  }
  std::vector<std::size_t> dims;
  for (const auto& v : by_dim) dims.push_back(v.size());
  std::vector<RatMatrix> diffs;
  for (int d = 1; d <= top; ++d) {
    RatMatrix m(by_dim[d - 1].size(), by_dim[d].size());
    for (std::size_t c = 0; c < by_dim[d].size(); ++c) {
      const Simplex& s = k.simplices()[by_dim[d][c]];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<long>(i));
        auto it = pos.find(face);
        if (it == pos.end()) continue;
        m(it->second, c) = (i % 2 == 0) ? 1 : -1;
      }
    }
    diffs.push_back(std::move(m));
  }
  return BddChainComplex(0, std::move(dims), std::move(diffs));
}

std::vector<std::size_t> simplicial_betti(const AlmostSimplicialComplex& k) {
  if (!is_locally_closed(k)) throw InputError("simplicial_betti: complex is not locally closed");
  const int top = k.dimension();
  const GradedDims h = homology_dims(simplicial_chain_complex(k));
  std::vector<std::size_t> out;
  for (int d = 0; d <= top; ++d) out.push_back(h.at(d));
  return out;
}

AlmostSimplicialComplex full_simplex(std::size_t n_vertices) {
  std::vector<std::string> v;
  Simplex all;
  for (std::size_t i = 0; i < n_vertices; ++i) {
    v.push_back(std::string(1, static_cast<char>('a' + i)));
    all.push_back(i);
  }
  return AlmostSimplicialComplex(v, nonempty_subsets(all));
}

AlmostSimplicialComplex simplex_boundary(std::size_t n_vertices) {
  AlmostSimplicialComplex full = full_simplex(n_vertices);
  std::vector<Simplex> s;
  for (const auto& x : full.simplices())
    if (x.size() < n_vertices) s.push_back(x);
  return AlmostSimplicialComplex(full.vertices(), std::move(s));
}

}  // namespace cshv

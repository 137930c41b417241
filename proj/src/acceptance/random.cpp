#include "cshv/random.hpp"

#include <algorithm>
#include <numeric>

namespace cshv::gen {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational small_rational(Rng& rng, bool nonzero) {
  for (;;) {
    const long v = std::uniform_int_distribution<long>(-2, 2)(rng);
    if (v != 0 || !nonzero) return Rational(v);
  }
}

FinPoset random_poset(Rng& rng, std::size_t n, double density, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng, density)) rel.emplace_back(i, j);
  return FinPoset::from_index_relations(labels, rel);
}

UpSet random_up_set(Rng& rng, const FinPoset& p) {
  Subset gens;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (coin(rng, 0.3)) gens.push_back(i);
  return UpSet(p, up_closure(p, gens));
}

Subset random_down_set(Rng& rng, const FinPoset& p) {
  Subset gens;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (coin(rng, 0.3)) gens.push_back(i);
  return down_closure(p, gens);
}

Subset random_locally_closed(Rng& rng, const FinPoset& p) {
  const Subset up = random_up_set(rng, p).members();
  const Subset down = random_down_set(rng, p);
  return set_intersection(up, down);
}

namespace {

RatMatrix random_vectors(Rng& rng, std::size_t dim, std::size_t count) {
  RatMatrix m(dim, count);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < count; ++c) m(r, c) = small_rational(rng);
  return m;
}

// K_q = span of the seed vectors at p ≤ q, as column bases.
std::vector<RatMatrix> monotone_subspaces(Rng& rng, const FinPoset& p, std::size_t dim) {
  std::vector<RatMatrix> seeds;
  for (std::size_t i = 0; i < p.size(); ++i) seeds.push_back(random_vectors(rng, dim, uniform(rng, 0, 2) == 0 ? 1 : 0));
  std::vector<RatMatrix> out;
  for (std::size_t q = 0; q < p.size(); ++q) {
    RatMatrix acc(dim, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.leq(i, q)) acc = RatMatrix::hconcat(acc, seeds[i]);
    out.push_back(acc.cols() ? column_basis(acc) : acc);
  }
  return out;
}

RatMatrix join(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c = RatMatrix::hconcat(a, b);
  return c.cols() ? column_basis(c) : c;
}

// Rows span the annihilator of span(k), so π has kernel span(k).
RatMatrix quotient_projection(const RatMatrix& k, std::size_t dim) {
  if (k.cols() == 0) return RatMatrix::identity(dim);
  const RatMatrix ann = kernel_basis(k.transpose());
  return ann.transpose();
}

ChainMap degree0_map(const BddChainComplex& s, const BddChainComplex& t, const RatMatrix& m) {
  ChainMap f(s, t);
  if (s.dim(0) > 0 && t.dim(0) > 0) f.at(0) = m;
  return f;
}

PosetRep quotient_rep(const FinPoset& p, const std::vector<RatMatrix>& kernels, std::size_t dim,
                      std::vector<RatMatrix>* projections = nullptr) {
  std::vector<RatMatrix> pi;
  std::vector<BddChainComplex> stalks;
  for (std::size_t q = 0; q < p.size(); ++q) {
    pi.push_back(quotient_projection(kernels[q], dim));
    stalks.push_back(BddChainComplex::concentrated(0, pi.back().rows()));
  }
  PosetRep::CoverMaps covers;
  for (const auto& [a, b] : p.covers()) {
    const RatMatrix m = pi[a].rows() ? pi[b] * right_pseudo_inverse(pi[a]) : RatMatrix(pi[b].rows(), 0);
    covers[{a, b}] = degree0_map(stalks[a], stalks[b], m);
  }
  if (projections) *projections = pi;
  return PosetRep(p, stalks, covers);
}

PosetRep subspace_rep(const FinPoset& p, const std::vector<RatMatrix>& spaces) {
  std::vector<BddChainComplex> stalks;
  for (const auto& w : spaces) stalks.push_back(BddChainComplex::concentrated(0, w.cols()));
  PosetRep::CoverMaps covers;
  for (const auto& [a, b] : p.covers()) {
    const RatMatrix m = spaces[b].cols() ? right_pseudo_inverse(spaces[b]) * spaces[a] : RatMatrix(0, spaces[a].cols());
    covers[{a, b}] = degree0_map(stalks[a], stalks[b], m);
  }
  return PosetRep(p, stalks, covers);
}

}  // namespace

PosetRep random_rep(Rng& rng, const FinPoset& p, std::size_t max_dim) {
  const std::size_t dim = uniform(rng, 1, std::max<std::size_t>(max_dim, 1));
  switch (uniform(rng, 0, 4)) {
    case 0:
      return quotient_rep(p, monotone_subspaces(rng, p, dim), dim);
    case 1:
      return subspace_rep(p, monotone_subspaces(rng, p, dim));
    case 2: {
      const auto k = monotone_subspaces(rng, p, dim);
      const auto extra = monotone_subspaces(rng, p, dim);
      std::vector<RatMatrix> k2;
      for (std::size_t q = 0; q < p.size(); ++q) k2.push_back(join(k[q], extra[q]));
      std::vector<RatMatrix> pi_a, pi_b;
      const PosetRep a = quotient_rep(p, k, dim, &pi_a);
      const PosetRep b = quotient_rep(p, k2, dim, &pi_b);
      RepMorphism m;
      for (std::size_t q = 0; q < p.size(); ++q) {
        const RatMatrix c = pi_a[q].rows() ? pi_b[q] * right_pseudo_inverse(pi_a[q]) : RatMatrix(pi_b[q].rows(), 0);
        m.components.push_back(degree0_map(a.stalk(q), b.stalk(q), c));
      }
      return mapping_cone(m, a, b);
    }
    case 3: {
      // Skyscrapers: the slowest to resolve, one generator per point above.
      PosetRep acc = zero_rep(p);
      if (p.size() == 0) return acc;
      const std::size_t count = uniform(rng, 1, std::max<std::size_t>(max_dim, 1));
      for (std::size_t k = 0; k < count; ++k)
        acc = direct_sum(acc, shift(skyscraper(p, uniform(rng, 0, p.size() - 1)), static_cast<int>(uniform(rng, 0, 1))));
      return acc;
    }
    default: {
      const PosetRep a = quotient_rep(p, monotone_subspaces(rng, p, dim), dim);
      const PosetRep b = subspace_rep(p, monotone_subspaces(rng, p, uniform(rng, 1, std::max<std::size_t>(max_dim, 1))));
      return direct_sum(a, shift(b, 1));
    }
  }
}

AlmostSimplicialComplex random_simplicial_complex(Rng& rng, std::size_t max_vertices, std::size_t max_size) {
  const std::size_t nv = uniform(rng, 2, max_vertices);
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < nv; ++i) vertices.emplace_back(1, static_cast<char>('a' + i));
  std::vector<std::vector<std::string>> tops;
  const std::size_t count = uniform(rng, 1, 6);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::size_t> idx(nv);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t size = uniform(rng, 1, std::min(max_size, nv));
    std::vector<std::string> s;
    for (std::size_t i = 0; i < size; ++i) s.push_back(vertices[idx[i]]);
    tops.push_back(s);
  }
  return simplicial_closure(AlmostSimplicialComplex(vertices, tops));
}

CombinatorialMap random_combinatorial_map(Rng& rng, std::size_t max_opens, std::size_t max_points) {
  const FinPoset space = random_poset(rng, uniform(rng, 1, max_points), 0.3);
  const std::size_t total = uniform(rng, 2, std::max<std::size_t>(max_opens, 2));
  const std::size_t ns = uniform(rng, 1, total - 1);
  const std::size_t nt = total - ns;
  std::vector<Subset> sources, targets;
  for (std::size_t i = 0; i < ns; ++i) sources.push_back(random_up_set(rng, space).members());
  for (std::size_t i = 0; i < nt; ++i) targets.push_back(random_up_set(rng, space).members());
  RatMatrix m(nt, ns);
  for (std::size_t s = 0; s < nt; ++s)
    for (std::size_t t = 0; t < ns; ++t)
      if (is_subset(sources[t], targets[s]) && coin(rng, 0.7)) m(s, t) = small_rational(rng);
  return CombinatorialMap(space, sources, targets, m);
}

}  // namespace cshv::gen

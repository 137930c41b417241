#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cshv/chain_complex.hpp"
#include "cshv/poset.hpp"
#include "cshv/stratify.hpp"

namespace cshv {

/// Covariant functor from a finite poset to bounded complexes. stalk(p) models F(p⋆);
/// the transition p → q (p ≤ q) is the restriction F(p⋆) → F(q⋆).
class PosetRep {
 public:
  using CoverMaps = std::map<std::pair<std::size_t, std::size_t>, ChainMap>;

  PosetRep() = default;
  /// `transitions` holds one chain map per cover p ⋖ q; a missing entry is allowed only when
  /// one of the two stalks is zero. Throws InputError on shape problems, InvariantError if a
  /// transition is not a chain map or two cover paths disagree.
  PosetRep(FinPoset base, std::vector<BddChainComplex> stalks, const CoverMaps& transitions);

  const FinPoset& base() const { return base_; }
  std::size_t size() const { return stalks_.size(); }
  const BddChainComplex& stalk(std::size_t p) const { return stalks_.at(p); }
  const std::vector<BddChainComplex>& stalks() const { return stalks_; }
  /// Composite transition for p ≤ q (identity for p = q). InputError if p ≰ q.
  const ChainMap& transition(std::size_t p, std::size_t q) const;
  CoverMaps cover_transitions() const;
  /// Lowest and highest degree carrying a non-zero stalk term; lo > hi when all stalks vanish.
  int lo() const;
  int hi() const;

 private:
  FinPoset base_;
  std::vector<BddChainComplex> stalks_;
  std::vector<ChainMap> trans_;
};

/// ℚ in `degree` at every point, identity transitions.
PosetRep constant_sheaf(const FinPoset& p, int degree = 0);
/// ℝ_{p⋆}: ℚ on the open star of p, zero elsewhere.
PosetRep star_sheaf(const FinPoset& poset, std::size_t p);
/// ℚ at p only.
PosetRep skyscraper(const FinPoset& poset, std::size_t p);
PosetRep zero_rep(const FinPoset& poset);

std::vector<GradedDims> stalk_homology(const PosetRep& f);

/// Natural transformation, one chain map per element.
struct RepMorphism {
  std::vector<ChainMap> components;
};
bool is_natural(const RepMorphism& m, const PosetRep& source, const PosetRep& target);
bool is_stalkwise_quasi_iso(const RepMorphism& m, const PosetRep& source, const PosetRep& target);
RepMorphism identity_morphism(const PosetRep& f);
RepMorphism compose(const RepMorphism& g, const RepMorphism& f, const PosetRep& source, const PosetRep& target);

/// Stalkwise mapping cone and its fiber cone[−1].
PosetRep mapping_cone(const RepMorphism& m, const PosetRep& source, const PosetRep& target);
PosetRep fiber(const RepMorphism& m, const PosetRep& source, const PosetRep& target);
/// fiber(m) → source, the projection onto the first summand.
RepMorphism fiber_projection(const RepMorphism& m, const PosetRep& source, const PosetRep& target);

// ---- homotopy limits over subsets (nerve construction) ----

/// Total complex ⊕_{p0<…<pn in S} stalk(pn) in total degree m − n with
/// D = d_int + (−1)^m δ, δc(τ) = Σ_{i≤n}(−1)^i c(∂_iτ) + (−1)^{n+1} F(τ_n→τ_{n+1}) c(∂_{n+1}τ).
struct Holim {
  Subset members;
  std::vector<std::vector<std::size_t>> chains;
  std::map<std::vector<std::size_t>, std::size_t> index;
  int lo = 0;
  int hi = -1;
  /// offsets[k - lo][c] is where chain c's block starts in degree k.
  std::vector<std::vector<std::size_t>> offsets;
  BddChainComplex complex;
};

Holim holim(const PosetRep& f, const Subset& s);
/// Projection onto the chains of `small` (an up-set of big.members).
ChainMap holim_restriction(const PosetRep& f, const Holim& big, const Holim& small);
/// x ↦ (F(p → z) x) on the length-0 chains. `h` is built on the restriction of `f` to
/// `sub` (indices of f.base()); every member must lie above p.
ChainMap holim_unit(const PosetRep& f, std::size_t p, const Subset& sub, const Holim& h);

/// Sections over an up-set. InputError if `u` is not an up-set of f.base().
BddChainComplex evaluate(const PosetRep& f, const UpSet& u);
BddChainComplex evaluate(const PosetRep& f, const Subset& u);

// ---- functors ----

PosetRep pullback(const MonotoneMap& f, const PosetRep& g);
/// Restriction to the induced subposet on `s`.
PosetRep restrict(const PosetRep& f, const Subset& s);
/// X[n] stalkwise.
PosetRep shift(const PosetRep& f, int n);
PosetRep tensor(const PosetRep& f, const PosetRep& g);
PosetRep direct_sum(const PosetRep& f, const PosetRep& g);

/// j_! for j : U ⊆ P open; `f` lives on P.induced(U).
PosetRep extend_by_zero(const FinPoset& p, const UpSet& u, const PosetRep& f);
/// i_* for i : Z ⊆ P closed; stalk at p is evaluate(g, p⋆ ∩ Z).
PosetRep closed_pushforward(const FinPoset& p, const Subset& z, const PosetRep& g);
/// j_* for j : U ⊆ P open; stalk at p is evaluate(f, p⋆ ∩ U).
PosetRep open_pushforward(const FinPoset& p, const UpSet& u, const PosetRep& f);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// a →f b →g c.
struct ThreeTerm {
  PosetRep a, b, c;
  RepMorphism f, g;
};

struct Recollement {
  /// j_!j*F → F → i_*i*F.
  ThreeTerm open_closed;
  /// K → F → j_*j*F with K = fib(F → j_*j*F), the model of i_*i^!F.
  ThreeTerm closed_open;
  /// closed_pushforward(i*K).
  PosetRep i_shriek;
  std::vector<Check> checks;
  bool ok() const;
};
Recollement recollement_triangle(const PosetRep& f, const UpSet& u);

/// Long exact sequence bookkeeping at every stalk, given a → b → c with g∘f ≃ 0.
std::vector<Check> long_exact_checks(const ThreeTerm& t, const std::string& prefix);

/// shift(tensor(F, or), n). InputError unless `orientation` has 1-dim degree-0 stalks and
/// invertible transitions.
PosetRep twist_by_dualizing(const PosetRep& f, int n, const PosetRep& orientation);

/// Every transition inside a stratum is a quasi-isomorphism.
bool check_locally_constant(const PosetRep& f, const Stratification& s);

// ---- pseudo-free complexes ----

/// Terms are sums of ℝ_{p⋆}; generators are elements. d_k has rows = generators of degree
/// k−1, cols = generators of degree k, and entry (t, s) may be non-zero only when
/// elem(t) ≤ elem(s).
class PseudoFreeComplex {
 public:
  PseudoFreeComplex() = default;
  /// generators[i] lists the elements for degree lo + i; differentials[i] is d_{lo+1+i}.
  /// Throws InvariantError on the support condition or d∘d ≠ 0.
  PseudoFreeComplex(FinPoset base, int lo, std::vector<std::vector<std::size_t>> generators,
                    std::vector<RatMatrix> differentials);

  const FinPoset& base() const { return base_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(gens_.size()) - 1; }
  const std::vector<std::size_t>& generators(int k) const;
  RatMatrix d(int k) const;
  std::size_t total_generators() const;

 private:
  FinPoset base_;
  int lo_ = 0;
  std::vector<std::vector<std::size_t>> gens_;
  std::vector<RatMatrix> diffs_;
};

struct Resolution {
  PseudoFreeComplex complex;
  /// realize(complex) → F, a stalkwise quasi-isomorphism.
  RepMorphism augmentation;
  /// Top degree of the resolution minus the top degree of F.
  int length = 0;
};

/// Degree-by-degree projective replacement. Generators are picked minimal elements first
/// (linear extension by height, then label). InternalError past 2·|P| extra stages.
Resolution resolve(const PosetRep& f);
PseudoFreeComplex pseudo_free_resolve(const PosetRep& f);
/// Normalized bar resolution: generators (p0<…<pn, e ∈ F_m(p0)) at pn in degree n + m.
Resolution bar_resolution(const PosetRep& f);

/// Stalk at r spanned by the generators g with g ≤ r; transitions are inclusions.
PosetRep realize(const PseudoFreeComplex& c);
/// Same matrices, generator p moved to f(p).
PseudoFreeComplex map_generators(const MonotoneMap& f, const PseudoFreeComplex& c);

enum class ResolutionKind { algorithmic, bar };
/// Left Kan extension f♯ via a pseudo-free resolution.
PosetRep derived_pushforward(const MonotoneMap& f, const PosetRep& g, ResolutionKind kind = ResolutionKind::algorithmic);

}  // namespace cshv

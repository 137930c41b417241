#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cshv {

/// Sorted list of element indices.
using Subset = std::vector<std::size_t>;

/// Finite poset with opaque string labels. The order is a dense boolean matrix,
/// transitively closed on construction. Opens of the associated restricted space
/// are the up-sets.
class FinPoset {
 public:
  FinPoset() = default;
  /// `relations` are pairs (lower, upper) of labels; leq is their reflexive-transitive
  /// closure. Throws InputError on duplicate/unknown labels or a cycle.
  FinPoset(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& relations);
  /// Same, by index.
  static FinPoset from_index_relations(std::vector<std::string> labels,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& relations);
  /// Builds from a full order matrix and checks reflexivity, antisymmetry and transitivity.
  static FinPoset from_order(std::vector<std::string> labels, std::vector<char> leq);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Throws InputError for an unknown label.
  std::size_t index(const std::string& label) const;
  bool contains(const std::string& label) const { return index_.count(label) > 0; }

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * labels_.size() + b] != 0; }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  /// Hasse diagram: pairs (p, q) with p ⋖ q.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  /// Elements covered by q.
  std::vector<std::size_t> lower_covers(std::size_t q) const;
  /// Linear extension: by height (length of longest chain below), ties broken by label.
  std::vector<std::size_t> linear_extension() const;

  bool is_up_set(const Subset& s) const;
  bool is_down_set(const Subset& s) const;
  /// Up-set ∩ down-set; equivalently order-convex.
  bool is_locally_closed(const Subset& s) const;

  /// Induced subposet on `s` (labels kept). `s` must be sorted.
  FinPoset induced(const Subset& s) const;
  /// Labels of a subset, and back.
  std::vector<std::string> labels_of(const Subset& s) const;
  Subset subset_of(const std::vector<std::string>& labels) const;
  Subset all() const;

  bool operator==(const FinPoset& rhs) const { return labels_ == rhs.labels_ && leq_ == rhs.leq_; }

 private:
  void build_index();

  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::map<std::string, std::size_t> index_;
};

/// Validated up-set of a poset (indices into that poset).
class UpSet {
 public:
  UpSet() = default;
  /// Throws InputError unless `members` is upward closed in `poset`.
  UpSet(const FinPoset& poset, Subset members);

  const Subset& members() const { return members_; }
  bool contains(std::size_t i) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool operator==(const UpSet& rhs) const = default;

 private:
  Subset members_;
};

/// Order-preserving map of finite posets.
class MonotoneMap {
 public:
  MonotoneMap() = default;
  /// Throws InvariantError if not monotone, InputError on a size mismatch or out-of-range value.
  MonotoneMap(FinPoset source, FinPoset target, std::vector<std::size_t> assignment);
  /// Assignment given by labels.
  static MonotoneMap from_labels(FinPoset source, FinPoset target, const std::map<std::string, std::string>& assignment);
  static MonotoneMap identity(const FinPoset& p);
  /// Constant map to the one-point poset {label}.
  static MonotoneMap to_point(const FinPoset& p, const std::string& label = "pt");

  const FinPoset& source() const { return source_; }
  const FinPoset& target() const { return target_; }
  std::size_t operator()(std::size_t p) const { return assignment_.at(p); }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  /// Preimage of a target subset, sorted.
  Subset preimage(const Subset& target_subset) const;
  Subset fiber(std::size_t q) const;

 private:
  FinPoset source_;
  FinPoset target_;
  std::vector<std::size_t> assignment_;
};

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

/// p⋆ = {q : q ≥ p}.
UpSet open_star(const FinPoset& poset, std::size_t p);
UpSet open_star(const FinPoset& poset, const std::string& label);
/// {q : ∃ p ∈ s, q ≤ p}.
Subset down_closure(const FinPoset& poset, const Subset& s);
Subset up_closure(const FinPoset& poset, const Subset& s);
/// down_closure(s) ∖ s.
Subset boundary(const FinPoset& poset, const Subset& s);

/// ∫_P Q_p dp with (p,q) ≤ (p′,q′) iff p < p′, or p = p′ and q ≤ q′, together with
/// x ↦ (α(x), β_{α(x)}(x)). `betas` maps each stratum index p with non-empty fiber to a
/// map whose source is the induced fiber poset X_p. Labels of the result are "(p,q)".
struct Amalgamation {
  FinPoset poset;
  MonotoneMap map;
};
Amalgamation amalgamate(const MonotoneMap& alpha, const std::map<std::size_t, MonotoneMap>& betas);

/// Componentwise order on pairs; labels "(p,q)".
FinPoset product(const FinPoset& p, const FinPoset& q);
/// Index of (i, j) in product(p, q).
inline std::size_t product_index(std::size_t i, std::size_t j, std::size_t q_size) { return i * q_size + j; }

/// Literal recursive inductive dimension over all up-sets, memoized on subsets.
int inductive_dimension(const FinPoset& poset);
/// Inductive dimension of the subspace `s` (any subset; the induced order is used).
int inductive_dimension(const FinPoset& poset, const Subset& s);
/// Number of strict steps in the longest chain; −1 for the empty poset.
int longest_chain_length(const FinPoset& poset);

/// All up-sets of the poset, in a deterministic order.
std::vector<Subset> enumerate_up_sets(const FinPoset& poset);

/// Connected components of the comparability graph restricted to `s`.
std::vector<Subset> connected_components(const FinPoset& poset, const Subset& s);

// Subset algebra on sorted index vectors.
Subset set_union(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);
bool is_subset(const Subset& a, const Subset& b);

}  // namespace cshv

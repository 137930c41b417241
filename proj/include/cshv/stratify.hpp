#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cshv/poset.hpp"

namespace cshv {

/// Monotone map α : X → P. Stratum X_p = α⁻¹(p).
class Stratification {
 public:
  Stratification() = default;
  explicit Stratification(MonotoneMap map) : map_(std::move(map)) {}

  const FinPoset& space() const { return map_.source(); }
  const FinPoset& strata_poset() const { return map_.target(); }
  const MonotoneMap& map() const { return map_; }
  Subset stratum(std::size_t p) const { return map_.fiber(p); }
  std::vector<Subset> strata() const;

 private:
  MonotoneMap map_;
};

/// α(x) = {i : x ∈ U_i} into Pow(I), labels "{}", "{1}", "{1,3}" (1-based). |I| ≤ 12.
Stratification cover_stratification(const FinPoset& x, const std::vector<UpSet>& cover);

struct ProperCheck {
  bool proper = true;
  /// Stratum that is empty or whose closure is not the union of the strata below it.
  std::optional<std::size_t> witness;
};
ProperCheck is_proper(const Stratification& s);

/// Proper stratification of X in which every member of `theta` is a union of strata.
/// Members must be locally closed (InputError otherwise). Labels record the recursion path.
Stratification proper_refine(const FinPoset& x, const std::vector<Subset>& theta);

struct Refinement {
  Stratification refined;
  /// ψ : refined strata → original strata with α = ψ ∘ β.
  MonotoneMap psi;
};
Refinement refine_stratification(const Stratification& s);

/// Every U_t is contained in V or U_t ∪ V = X.
bool in_good_position(const FinPoset& x, const UpSet& v, const std::vector<UpSet>& sets);

}  // namespace cshv

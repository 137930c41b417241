#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cshv/chain_complex.hpp"
#include "cshv/poset.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

/// ⊕_t Sc(U_t) → ⊕_s Sc(V_s) with M[s][t] ≠ 0 only when U_t ⊆ V_s.
class CombinatorialMap {
 public:
  CombinatorialMap() = default;
  /// Throws InputError on non-up-sets, a shape mismatch or a support violation.
  CombinatorialMap(FinPoset space, std::vector<Subset> sources, std::vector<Subset> targets, RatMatrix matrix);

  const FinPoset& space() const { return space_; }
  const std::vector<Subset>& sources() const { return sources_; }
  const std::vector<Subset>& targets() const { return targets_; }
  const RatMatrix& matrix() const { return matrix_; }

 private:
  FinPoset space_;
  std::vector<Subset> sources_;
  std::vector<Subset> targets_;
  RatMatrix matrix_;
};

/// Per degree k an indexed family of opens; d_k : degree k → k−1 is a combinatorial map.
class CombinatorialComplex {
 public:
  CombinatorialComplex() = default;
  CombinatorialComplex(FinPoset space, int lo, std::vector<std::vector<Subset>> opens, std::vector<RatMatrix> differentials);

  const FinPoset& space() const { return space_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(opens_.size()) - 1; }
  const std::vector<Subset>& opens(int k) const;
  RatMatrix d(int k) const;
  CombinatorialMap differential(int k) const;

 private:
  FinPoset space_;
  int lo_ = 0;
  std::vector<std::vector<Subset>> opens_;
  std::vector<RatMatrix> diffs_;
};

CombinatorialComplex presentation_from_resolution(const PseudoFreeComplex& c);
CombinatorialComplex global_sections_homology_presentation(const PosetRep& f);

/// Sc(U) := ℚ^U with extension-by-zero structure maps substituted into the presentation.
BddChainComplex substitute_point_cosheaf(const CombinatorialComplex& c);

struct CertificateStep {
  Subset stratum;
  /// Cover-stratum label over I = T ⊔ S, 1-based, e.g. "{2,3}".
  std::string label;
  std::vector<std::size_t> t1;
  std::vector<std::size_t> s1;
  RatMatrix mbar;
  RatMatrix nbar;
};

struct ClosedImageCertificate {
  std::vector<CertificateStep> steps;
};

/// Induction of the closed-image proof: eliminate a closed cover stratum, record the
/// pseudo-inverse of the block over it, recurse on the complement.
ClosedImageCertificate certify_closed_image(const CombinatorialMap& m);

struct CertificateCheck {
  bool ok = true;
  std::optional<std::size_t> failing_step;
  std::string reason;
};
CertificateCheck verify_certificate(const CombinatorialMap& m, const ClosedImageCertificate& c);

}  // namespace cshv

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cshv/poset.hpp"

namespace cshv {

/// Grid over Y × [−L, L]. Y is a point (m = 1) or [a, b] with m nodes; the fiber has n nodes.
/// mask[i·n + j] marks (y_i, t_j) ∈ X. Every mask run has at least two nodes.
class GridRegion {
 public:
  GridRegion() = default;
  /// Throws InputError on bad sizes or a single-node run.
  GridRegion(bool point_base, double a, double b, std::size_t m, double window, std::size_t n, std::vector<char> mask);
  static GridRegion from_predicate(bool point_base, double a, double b, std::size_t m, double window, std::size_t n,
                                   const std::function<bool(double y, double t)>& inside);

  bool point_base() const { return point_base_; }
  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  double window() const { return window_; }
  double h() const { return 2.0 * window_ / static_cast<double>(n_ - 1); }
  double t(std::size_t j) const { return -window_ + static_cast<double>(j) * h(); }
  double y(std::size_t i) const;
  bool in(std::size_t i, std::size_t j) const { return mask_[i * n_ + j] != 0; }
  const std::vector<char>& mask() const { return mask_; }
  /// Inclusive node ranges [first, last] of the mask in row i.
  const std::vector<std::pair<std::size_t, std::size_t>>& runs(std::size_t i) const { return runs_.at(i); }
  bool operator==(const GridRegion& rhs) const;

 private:
  bool point_base_ = true;
  double a_ = 0, b_ = 0;
  std::size_t m_ = 1;
  double window_ = 10;
  std::size_t n_ = 2;
  std::vector<char> mask_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> runs_;
};

inline constexpr double kBoundaryTol = 1e-12;
inline constexpr double kSvdThreshold = 1e-8;

/// Values over the grid, zero off the mask.
class GridFunction {
 public:
  GridFunction() = default;
  /// With `validate`, throws InputError if a value off the mask is non-zero or a value on the
  /// window boundary exceeds kBoundaryTol.
  GridFunction(std::shared_ptr<const GridRegion> region, std::vector<double> values, bool validate = true);
  /// Samples fn on the mask (zero elsewhere) and validates.
  static GridFunction sample(std::shared_ptr<const GridRegion> region, const std::function<double(double, double)>& fn);

  const GridRegion& region() const { return *region_; }
  const std::shared_ptr<const GridRegion>& region_ptr() const { return region_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * region_->n() + j]; }
  /// max |value| over the two window-boundary columns.
  double boundary_max() const;

 private:
  std::shared_ptr<const GridRegion> region_;
  std::vector<double> values_;
};

/// One value per base node.
using BaseGridFunction = std::vector<double>;

double max_abs_difference(const GridFunction& f, const GridFunction& g);
double max_abs(const BaseGridFunction& g);

/// ∂_t per mask run: central differences of order 6 where the stencil fits, then 4, then 2,
/// one-sided second order at the run ends.
GridFunction fiber_derivative(const GridFunction& f);
/// Trapezoid rule over each run, summed per base node.
BaseGridFunction fiber_integrate(const GridFunction& f);
/// Integral per run, row-major over (base node, run).
std::vector<std::vector<double>> run_integrals(const GridFunction& f);
/// H(f)(y, t) = ∫ from the lower run edge to t. InputError if some run integral exceeds `tol`.
GridFunction poincare_homotopy(const GridFunction& f, double tol = 1e-8);
/// g(y)·ρ_y with ρ_y the normalized bump exp(−1/(1−s²)) on the longest run of row y.
GridFunction integration_section(const BaseGridFunction& g, std::shared_ptr<const GridRegion> region);

/// F_{ν,U}: node (y, a) is kept iff every grid node between a and ν(y) lies in U.
/// InputError if a ν(y) node is outside U.
GridRegion convex_hull_of_section(const GridRegion& u, const std::vector<double>& nu);

/// Numeric corank of the discretized ∂_t on row i (Dirichlet interior nodes → cells).
std::size_t betti_crosscheck_row(const GridRegion& region, std::size_t i);
/// Point base only (InputError otherwise).
std::size_t betti_crosscheck(const GridRegion& region);

/// Open-interval poset e0 > v < e1 with labels prefixed by `prefix`.
FinPoset interval_model(const std::string& prefix);
/// Disjoint union of `runs` interval models.
FinPoset fiber_model(std::size_t runs);
/// dim H₀ at every element of the base-stratum model of φ♯ℚ for (base × fiber_model(runs)) → base.
std::vector<std::size_t> combinatorial_h0(std::size_t runs, const FinPoset& base_stratum);
/// Expected H₀ per base row from product models over the base strata (maximal blocks of
/// consecutive rows with equal run count). Single-row strata use a point model, longer
/// ones the open-interval model.
std::vector<std::size_t> combinatorial_h0_rows(const GridRegion& region);

/// Pair (g, ∂_t g) sampled analytically.
struct KernelPair {
  std::string name;
  GridFunction g;
  GridFunction dg;
};
/// Ten Gaussian-type functions on full-window rows, or polynomial bumps (1−s²)^10 on bounded runs.
std::vector<KernelPair> standard_battery(std::shared_ptr<const GridRegion> region);

struct NumericCheck {
  std::string name;
  double max_error = 0;
  double tolerance = 0;
  bool passed = true;
};
/// The four invariants: ∂_t∘H = id on the kernel, Stokes, ∫∘section = id, H∘∂_t = id.
std::vector<NumericCheck> derham_verify(std::shared_ptr<const GridRegion> region);

/// Default grid: point base, L = 10, n = 4001, full window.
GridRegion default_region();

}  // namespace cshv

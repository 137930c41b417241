#include "cshv/derham.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "cshv/error.hpp"
#include "cshv/sheaf.hpp"

namespace cshv {

GridRegion::GridRegion(bool point_base, double a, double b, std::size_t m, double window, std::size_t n,
                       std::vector<char> mask)
    : point_base_(point_base), a_(a), b_(b), m_(m), window_(window), n_(n), mask_(std::move(mask)) {
  if (m_ == 0) throw InputError("region: at least one base node is required");
  if (point_base_ && m_ != 1) throw InputError("region: a point base has exactly one node");
  if (!point_base_ && !(b_ >= a_)) throw InputError("region: base interval must satisfy a ≤ b");
  if (n_ < 2) throw InputError("region: at least two fiber nodes are required");
  if (!(window_ > 0)) throw InputError("region: window must be positive");
  if (mask_.size() != m_ * n_) throw InputError("region: mask size does not match the grid");
  runs_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t j = 0;
    while (j < n_) {
      if (!in(i, j)) {
        ++j;
        continue;
      }
      std::size_t k = j;
      while (k + 1 < n_ && in(i, k + 1)) ++k;
      if (k == j)
        throw InputError("region: row " + std::to_string(i) + " has a single-node run at node " + std::to_string(j));
      runs_[i].emplace_back(j, k);
      j = k + 1;
    }
  }
}

GridRegion GridRegion::from_predicate(bool point_base, double a, double b, std::size_t m, double window, std::size_t n,
                                      const std::function<bool(double, double)>& inside) {
  GridRegion probe(point_base, a, b, m, window, n, std::vector<char>(m * n, 0));
  std::vector<char> mask(m * n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) mask[i * n + j] = inside(probe.y(i), probe.t(j)) ? 1 : 0;
  return GridRegion(point_base, a, b, m, window, n, std::move(mask));
}

double GridRegion::y(std::size_t i) const {
  if (point_base_ || m_ == 1) return a_;
  return a_ + static_cast<double>(i) * (b_ - a_) / static_cast<double>(m_ - 1);
}

bool GridRegion::operator==(const GridRegion& rhs) const {
  return point_base_ == rhs.point_base_ && a_ == rhs.a_ && b_ == rhs.b_ && m_ == rhs.m_ && window_ == rhs.window_ &&
         n_ == rhs.n_ && mask_ == rhs.mask_;
}

GridFunction::GridFunction(std::shared_ptr<const GridRegion> region, std::vector<double> values, bool validate)
    : region_(std::move(region)), values_(std::move(values)) {
  if (!region_) throw InputError("grid function: missing region");
  const GridRegion& r = *region_;
  if (values_.size() != r.m() * r.n()) throw InputError("grid function: value count does not match the grid");
  if (!validate) return;
  for (std::size_t i = 0; i < r.m(); ++i)
    for (std::size_t j = 0; j < r.n(); ++j)
      if (!r.in(i, j) && values_[i * r.n() + j] != 0.0) throw InputError("grid function: non-zero value off the mask");
  if (boundary_max() > kBoundaryTol) throw InputError("grid function: decay proxy violated at the window boundary");
}

GridFunction GridFunction::sample(std::shared_ptr<const GridRegion> region,
                                  const std::function<double(double, double)>& fn) {
  const GridRegion& r = *region;
  std::vector<double> v(r.m() * r.n(), 0.0);
  for (std::size_t i = 0; i < r.m(); ++i)
    for (std::size_t j = 0; j < r.n(); ++j)
      if (r.in(i, j)) v[i * r.n() + j] = fn(r.y(i), r.t(j));
  return GridFunction(std::move(region), std::move(v));
}

double GridFunction::boundary_max() const {
  const GridRegion& r = *region_;
  double mx = 0;
  for (std::size_t i = 0; i < r.m(); ++i)
    mx = std::max({mx, std::abs(values_[i * r.n()]), std::abs(values_[i * r.n() + r.n() - 1])});
  return mx;
}

double max_abs_difference(const GridFunction& f, const GridFunction& g) {
  if (!(f.region() == g.region())) throw InputError("grid functions live on different regions");
  double mx = 0;
  for (std::size_t k = 0; k < f.values().size(); ++k) mx = std::max(mx, std::abs(f.values()[k] - g.values()[k]));
  return mx;
}

double max_abs(const BaseGridFunction& g) {
  double mx = 0;
  for (double v : g) mx = std::max(mx, std::abs(v));
  return mx;
}

namespace {

// Derivative of v on [j0, j1] written into out.
void derive_run(const double* v, double* out, std::size_t j0, std::size_t j1, double h) {
  static const double c6[] = {3.0 / 4, -3.0 / 20, 1.0 / 60};
  static const double c4[] = {2.0 / 3, -1.0 / 12};
  const std::size_t len = j1 - j0 + 1;
  for (std::size_t j = j0; j <= j1; ++j) {
    const std::size_t reach = std::min(j - j0, j1 - j);
    double d;
    if (reach >= 3) {
      d = c6[0] * (v[j + 1] - v[j - 1]) + c6[1] * (v[j + 2] - v[j - 2]) + c6[2] * (v[j + 3] - v[j - 3]);
    } else if (reach == 2) {
      d = c4[0] * (v[j + 1] - v[j - 1]) + c4[1] * (v[j + 2] - v[j - 2]);
    } else if (reach == 1) {
      d = 0.5 * (v[j + 1] - v[j - 1]);
    } else if (len == 2) {
      d = v[j1] - v[j0];
    } else if (j == j0) {
      d = -1.5 * v[j] + 2.0 * v[j + 1] - 0.5 * v[j + 2];
    } else {
      d = 1.5 * v[j] - 2.0 * v[j - 1] + 0.5 * v[j - 2];
    }
    out[j] = d / h;
  }
}

double trapezoid(const double* v, std::size_t j0, std::size_t j1, double h) {
  double s = 0;
  for (std::size_t j = j0; j < j1; ++j) s += 0.5 * (v[j] + v[j + 1]);
  return s * h;
}

double bump(double t, double c, double r) {
  const double s = (t - c) / r;
  if (std::abs(s) >= 1) return 0;
  return std::exp(-1.0 / (1.0 - s * s));
}

}  // namespace

GridFunction fiber_derivative(const GridFunction& f) {
  const GridRegion& r = f.region();
  std::vector<double> out(f.values().size(), 0.0);
  for (std::size_t i = 0; i < r.m(); ++i)
    for (const auto& [j0, j1] : r.runs(i)) derive_run(f.values().data() + i * r.n(), out.data() + i * r.n(), j0, j1, r.h());
  return GridFunction(f.region_ptr(), std::move(out), false);
}

std::vector<std::vector<double>> run_integrals(const GridFunction& f) {
  const GridRegion& r = f.region();
  std::vector<std::vector<double>> out(r.m());
  for (std::size_t i = 0; i < r.m(); ++i)
    for (const auto& [j0, j1] : r.runs(i)) out[i].push_back(trapezoid(f.values().data() + i * r.n(), j0, j1, r.h()));
  return out;
}

BaseGridFunction fiber_integrate(const GridFunction& f) {
  BaseGridFunction g;
  for (const auto& row : run_integrals(f)) {
    double s = 0;
    for (double v : row) s += v;
    g.push_back(s);
  }
  return g;
}

GridFunction poincare_homotopy(const GridFunction& f, double tol) {
  const GridRegion& r = f.region();
  const double h = r.h();
  const std::size_t n = r.n();
  const auto integrals = run_integrals(f);
  for (std::size_t i = 0; i < r.m(); ++i)
    for (std::size_t k = 0; k < integrals[i].size(); ++k)
      if (std::abs(integrals[i][k]) > tol)
        throw InputError("poincare_homotopy: fiber integral " + std::to_string(integrals[i][k]) + " at base node " +
                         std::to_string(i) + " exceeds the kernel tolerance");
  std::vector<double> out(f.values().size(), 0.0);
  std::vector<double> fv(n), fd(n), fd3(n), rho(n), rd(n), rd3(n), tmp(n);
  for (std::size_t i = 0; i < r.m(); ++i) {
    const double* v = f.values().data() + i * n;
    for (const auto& [j0, j1] : r.runs(i)) {
      // First and third derivatives on the run.
      auto derivatives = [&](const std::vector<double>& a, std::vector<double>& da, std::vector<double>& da3) {
        derive_run(a.data(), da.data(), j0, j1, h);
        derive_run(da.data(), tmp.data(), j0, j1, h);
        derive_run(tmp.data(), da3.data(), j0, j1, h);
      };
      std::fill(fv.begin(), fv.end(), 0.0);
      std::copy(v + j0, v + j1 + 1, fv.begin() + static_cast<long>(j0));
      derivatives(fv, fd, fd3);
      const double c = 0.5 * (r.t(j0) + r.t(j1));
      const double rad = 0.5 * (r.t(j1) - r.t(j0));
      for (std::size_t j = j0; j <= j1; ++j) rho[j] = bump(r.t(j), c, rad);
      derivatives(rho, rd, rd3);
      // Trapezoid with the first two Euler-Maclaurin end corrections.
      auto step = [&](const std::vector<double>& a, const std::vector<double>& da, const std::vector<double>& da3,
                      std::size_t j) {
        return 0.5 * h * (a[j] + a[j + 1]) - h * h / 12.0 * (da[j + 1] - da[j]) +
               h * h * h * h / 720.0 * (da3[j + 1] - da3[j]);
      };
      auto total = [&](const std::vector<double>& a, const std::vector<double>& da, const std::vector<double>& da3) {
        double s = 0;
        for (std::size_t j = j0; j < j1; ++j) s += step(a, da, da3, j);
        return s;
      };
      const double tr = total(rho, rd, rd3);
      if (tr != 0.0) {
        // Remove the residual along the bump so that H returns to zero at the upper edge.
        const double coef = total(fv, fd, fd3) / tr;
        for (std::size_t j = j0; j <= j1; ++j) {
          fv[j] -= coef * rho[j];
          fd[j] -= coef * rd[j];
          fd3[j] -= coef * rd3[j];
        }
      }
      double acc = 0;
      out[i * n + j0] = 0;
      for (std::size_t j = j0; j < j1; ++j) {
        acc += step(fv, fd, fd3, j);
        out[i * n + j + 1] = acc;
      }
    }
  }
  return GridFunction(f.region_ptr(), std::move(out), false);
}

GridFunction integration_section(const BaseGridFunction& g, std::shared_ptr<const GridRegion> region) {
  const GridRegion& r = *region;
  if (g.size() != r.m()) throw InputError("integration_section: base function has the wrong length");
  std::vector<double> out(r.m() * r.n(), 0.0);
  for (std::size_t i = 0; i < r.m(); ++i) {
    if (g[i] == 0.0) continue;
    const auto& runs = r.runs(i);
    if (runs.empty()) throw InputError("integration_section: empty fiber over the support at base node " + std::to_string(i));
    auto best = runs.front();
    for (const auto& run : runs)
      if (run.second - run.first > best.second - best.first) best = run;
    const auto [j0, j1] = best;
    const double c = 0.5 * (r.t(j0) + r.t(j1));
    const double rad = 0.5 * (r.t(j1) - r.t(j0));
    std::vector<double> rho(r.n(), 0.0);
    for (std::size_t j = j0; j <= j1; ++j) rho[j] = bump(r.t(j), c, rad);
    const double total = trapezoid(rho.data(), j0, j1, r.h());
    if (total <= 0) throw InputError("integration_section: fiber run too short for the bump profile");
    for (std::size_t j = j0; j <= j1; ++j) out[i * r.n() + j] = g[i] * rho[j] / total;
  }
  return GridFunction(std::move(region), std::move(out), false);
}

GridRegion convex_hull_of_section(const GridRegion& u, const std::vector<double>& nu) {
  if (nu.size() != u.m()) throw InputError("convex_hull_of_section: one section value per base node is required");
  std::vector<char> mask(u.m() * u.n(), 0);
  for (std::size_t i = 0; i < u.m(); ++i) {
    const double pos = (nu[i] + u.window()) / u.h();
    if (pos < -0.5 || pos > static_cast<double>(u.n()) - 0.5)
      throw InputError("convex_hull_of_section: section leaves the window at base node " + std::to_string(i));
    const auto jn = static_cast<std::size_t>(std::llround(pos));
    if (!u.in(i, jn)) throw InputError("convex_hull_of_section: section leaves U at base node " + std::to_string(i));
    // Scan outward from ν(y) while the segment stays in U.
    std::size_t lo = jn, hi = jn;
    while (lo > 0 && u.in(i, lo - 1)) --lo;
    while (hi + 1 < u.n() && u.in(i, hi + 1)) ++hi;
    for (std::size_t j = lo; j <= hi; ++j) mask[i * u.n() + j] = 1;
  }
  GridRegion f(u.point_base(), u.a(), u.b(), u.m(), u.window(), u.n(), std::move(mask));
  for (std::size_t i = 0; i < f.m(); ++i)
    if (f.runs(i).size() != 1) throw InternalError("convex_hull_of_section: row is not a single interval");
  return f;
}

namespace {

std::size_t run_corank(std::size_t len, double h) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, double>, std::size_t> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find({len, h}); it != memo.end()) return it->second;
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(len - 1);
  const Eigen::Index cols = static_cast<Eigen::Index>(len - 2);
  std::size_t corank = static_cast<std::size_t>(rows);
  if (cols > 0) {
    // Forward differences from interior nodes (Dirichlet ends) to cells. With the L² weights
    // √h on cells and 1/√h on nodes the scaling cancels.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index c = 0; c < rows; ++c) {
      if (c < cols) d(c, c) += 1.0 / h;
      if (c >= 1) d(c, c - 1) -= 1.0 / h;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(d);
    const auto& sv = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > kSvdThreshold) ++rank;
    corank = static_cast<std::size_t>(rows) - rank;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[{len, h}] = corank;
  return corank;
}

}  // namespace

std::size_t betti_crosscheck_row(const GridRegion& region, std::size_t i) {
  std::size_t total = 0;
  for (const auto& [j0, j1] : region.runs(i)) total += run_corank(j1 - j0 + 1, region.h());
  return total;
}

std::size_t betti_crosscheck(const GridRegion& region) {
  if (!region.point_base()) throw InputError("betti_crosscheck: base must be a point");
  return betti_crosscheck_row(region, 0);
}

FinPoset interval_model(const std::string& prefix) {
  return FinPoset({prefix + "v", prefix + "e0", prefix + "e1"}, {{prefix + "v", prefix + "e0"}, {prefix + "v", prefix + "e1"}});
}

FinPoset fiber_model(std::size_t runs) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t k = 0; k < runs; ++k) {
    const std::string p = "I" + std::to_string(k) + ".";
    labels.insert(labels.end(), {p + "v", p + "e0", p + "e1"});
    rel.push_back({p + "v", p + "e0"});
    rel.push_back({p + "v", p + "e1"});
  }
  return FinPoset(labels, rel);
}

std::vector<std::size_t> combinatorial_h0(std::size_t runs, const FinPoset& base_stratum) {
  const FinPoset fiber = fiber_model(runs);
  const FinPoset total = product(base_stratum, fiber);
  std::vector<std::size_t> proj(total.size());
  for (std::size_t k = 0; k < total.size(); ++k) proj[k] = k / std::max<std::size_t>(fiber.size(), 1);
  const MonotoneMap pr(total, base_stratum, proj);
  const PosetRep pushed = derived_pushforward(pr, constant_sheaf(total));
  std::vector<std::size_t> out;
  for (const auto& h : stalk_homology(pushed)) out.push_back(h.at(0));
  return out;
}

std::vector<std::size_t> combinatorial_h0_rows(const GridRegion& region) {
  std::vector<std::size_t> out(region.m(), 0);
  std::size_t i = 0;
  while (i < region.m()) {
    std::size_t k = i;
    while (k + 1 < region.m() && region.runs(k + 1).size() == region.runs(i).size()) ++k;
    const std::size_t runs = region.runs(i).size();
    const FinPoset base = (k == i) ? FinPoset({"pt"}, {}) : interval_model("B.");
    const auto h0 = combinatorial_h0(runs, base);
    std::size_t value = h0.empty() ? 0 : h0.front();
    for (auto v : h0)
      if (v != value) throw InternalError("combinatorial_h0_rows: stalks disagree over a base stratum");
    for (std::size_t r = i; r <= k; ++r) out[r] = value;
    i = k + 1;
  }
  return out;
}

namespace {

struct Template {
  std::string name;
  std::function<double(double, double)> g;
  std::function<double(double, double)> dg;
};

std::vector<Template> gaussian_templates() {
  const double sqrt_pi = std::sqrt(M_PI);
  return {
      {"t*exp(-t^2)", [](double, double t) { return -0.5 * std::exp(-t * t); },
       [](double, double t) { return t * std::exp(-t * t); }},
      {"(1-2t^2)*exp(-t^2)", [](double, double t) { return t * std::exp(-t * t); },
       [](double, double t) { return (1 - 2 * t * t) * std::exp(-t * t); }},
      {"-2t*exp(-t^2)", [](double, double t) { return std::exp(-t * t); },
       [](double, double t) { return -2 * t * std::exp(-t * t); }},
      {"exp(-(t-1)^2)-exp(-(t+1)^2)",
       [sqrt_pi](double, double t) { return 0.5 * sqrt_pi * (std::erf(t - 1) - std::erf(t + 1)); },
       [](double, double t) { return std::exp(-(t - 1) * (t - 1)) - std::exp(-(t + 1) * (t + 1)); }},
      {"(cos t - 2t sin t)*exp(-t^2)", [](double, double t) { return std::sin(t) * std::exp(-t * t); },
       [](double, double t) { return (std::cos(t) - 2 * t * std::sin(t)) * std::exp(-t * t); }},
      {"-(2t/3)*exp(-t^2/3)", [](double, double t) { return std::exp(-t * t / 3); },
       [](double, double t) { return -(2 * t / 3) * std::exp(-t * t / 3); }},
      {"-2(t-y)*exp(-(t-y)^2)", [](double y, double t) { return std::exp(-(t - y) * (t - y)); },
       [](double y, double t) { return -2 * (t - y) * std::exp(-(t - y) * (t - y)); }},
      {"(1+y^2)(2t-2t^3)*exp(-t^2)", [](double y, double t) { return (1 + y * y) * t * t * std::exp(-t * t); },
       [](double y, double t) { return (1 + y * y) * (2 * t - 2 * t * t * t) * std::exp(-t * t); }},
      {"(-3 sin 3t - t cos 3t)*exp(-t^2/2)", [](double, double t) { return std::cos(3 * t) * std::exp(-t * t / 2); },
       [](double, double t) { return (-3 * std::sin(3 * t) - t * std::cos(3 * t)) * std::exp(-t * t / 2); }},
      {"shifted pair derivative",
       [](double, double t) { return std::exp(-(t - 2) * (t - 2)) - std::exp(-(t + 2) * (t + 2)); },
       [](double, double t) {
         return -2 * (t - 2) * std::exp(-(t - 2) * (t - 2)) + 2 * (t + 2) * std::exp(-(t + 2) * (t + 2));
       }},
  };
}

// Polynomial bumps (1−s²)^10 in the run coordinate s ∈ (−1, 1); derivatives are d/ds.
struct BumpTemplate {
  std::function<double(double, double)> g;
  std::function<double(double, double)> dg;
};

std::vector<BumpTemplate> bump_templates() {
  auto b = [](double s) { return std::pow(1 - s * s, 10); };
  auto db = [](double s) { return -20 * s * std::pow(1 - s * s, 9); };
  return {
      {[=](double, double s) { return b(s); }, [=](double, double s) { return db(s); }},
      {[=](double, double s) { return s * b(s); }, [=](double, double s) { return b(s) + s * db(s); }},
      {[=](double y, double s) { return (1 + y * y) * s * s * b(s); },
       [=](double y, double s) { return (1 + y * y) * (2 * s * b(s) + s * s * db(s)); }},
      {[=](double y, double s) { return (2 + std::sin(y)) * std::cos(2 * s) * b(s); },
       [=](double y, double s) { return (2 + std::sin(y)) * (-2 * std::sin(2 * s) * b(s) + std::cos(2 * s) * db(s)); }},
  };
}

}  // namespace

std::vector<KernelPair> standard_battery(std::shared_ptr<const GridRegion> region) {
  const GridRegion& r = *region;
  const auto gauss = gaussian_templates();
  const auto bumps = bump_templates();
  std::vector<KernelPair> out;
  for (std::size_t k = 0; k < gauss.size(); ++k) {
    std::vector<double> g(r.m() * r.n(), 0.0), dg(r.m() * r.n(), 0.0);
    for (std::size_t i = 0; i < r.m(); ++i) {
      const double y = r.y(i);
      for (const auto& [j0, j1] : r.runs(i)) {
        const bool full = (j0 == 0 && j1 == r.n() - 1);
        const double c = 0.5 * (r.t(j0) + r.t(j1));
        const double rad = 0.5 * (r.t(j1) - r.t(j0));
        for (std::size_t j = j0; j <= j1; ++j) {
          const double t = r.t(j);
          if (full) {
            g[i * r.n() + j] = gauss[k].g(y, t);
            dg[i * r.n() + j] = gauss[k].dg(y, t);
          } else {
            const auto& bt = bumps[k % bumps.size()];
            const double s = std::clamp((t - c) / rad, -1.0, 1.0);
            g[i * r.n() + j] = bt.g(y, s);
            dg[i * r.n() + j] = bt.dg(y, s) / rad;
          }
        }
      }
    }
    out.push_back({gauss[k].name, GridFunction(region, std::move(g)), GridFunction(region, std::move(dg))});
  }
  return out;
}

std::vector<NumericCheck> derham_verify(std::shared_ptr<const GridRegion> region) {
  const GridRegion& r = *region;
  const auto battery = standard_battery(region);
  NumericCheck dh{"d_t H = id on ker", 0, 1e-6, true};
  NumericCheck stokes{"Stokes: integral of d_t g = 0", 0, 1e-8, true};
  NumericCheck section{"integrate . section = id", 0, 1e-8, true};
  NumericCheck hd{"H d_t = id", 0, 1e-6, true};
  for (const auto& kp : battery) {
    const GridFunction h = poincare_homotopy(kp.dg);
    dh.max_error = std::max(dh.max_error, max_abs_difference(fiber_derivative(h), kp.dg));
    const GridFunction d = fiber_derivative(kp.g);
    stokes.max_error = std::max(stokes.max_error, max_abs(fiber_integrate(d)));
    hd.max_error = std::max(hd.max_error, max_abs_difference(poincare_homotopy(d), kp.g));
  }
  const std::vector<std::function<double(double)>> base_fns = {
      [](double) { return 1.0; }, [](double y) { return y; }, [](double y) { return std::cos(3 * y) - 0.25; }};
  for (const auto& fn : base_fns) {
    BaseGridFunction g(r.m(), 0.0);
    for (std::size_t i = 0; i < r.m(); ++i)
      if (!r.runs(i).empty()) g[i] = fn(r.y(i));
    const BaseGridFunction back = fiber_integrate(integration_section(g, region));
    for (std::size_t i = 0; i < r.m(); ++i) section.max_error = std::max(section.max_error, std::abs(back[i] - g[i]));
  }
  std::vector<NumericCheck> out = {dh, stokes, section, hd};
  for (auto& c : out) c.passed = c.max_error <= c.tolerance;
  return out;
}

GridRegion default_region() {
  return GridRegion(true, 0, 0, 1, 10.0, 4001, std::vector<char>(4001, 1));
}

}  // namespace cshv

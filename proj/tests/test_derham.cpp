#include "doctest.h"

#include <cmath>
#include <memory>

#include "cshv/derham.hpp"
#include "cshv/error.hpp"

using namespace cshv;

namespace {

std::shared_ptr<const GridRegion> full_line() { return std::make_shared<const GridRegion>(default_region()); }

std::shared_ptr<const GridRegion> point_region(const std::function<bool(double)>& inside, std::size_t n = 4001) {
  return std::make_shared<const GridRegion>(
      GridRegion::from_predicate(true, 0, 0, 1, 10.0, n, [&](double, double t) { return inside(t); }));
}

double max_error(const GridFunction& f, const std::function<double(double, double)>& exact) {
  const GridRegion& r = f.region();
  double e = 0;
  for (std::size_t i = 0; i < r.m(); ++i)
    for (std::size_t j = 0; j < r.n(); ++j)
      if (r.in(i, j)) e = std::max(e, std::abs(f.values()[i * r.n() + j] - exact(r.y(i), r.t(j))));
  return e;
}

}  // namespace

TEST_CASE("regions") {
  CHECK_THROWS_AS(GridRegion(true, 0, 0, 2, 10, 5, std::vector<char>(10, 1)), InputError);
  CHECK_THROWS_AS(GridRegion(true, 0, 0, 1, 10, 5, std::vector<char>(4, 1)), InputError);
  CHECK_THROWS_AS(GridRegion(true, 0, 0, 1, 10, 5, {0, 1, 0, 1, 1}), InputError);
  const GridRegion r(true, 0, 0, 1, 10, 6, {1, 1, 0, 0, 1, 1});
  REQUIRE(r.runs(0).size() == 2);
  CHECK(r.runs(0)[1] == std::make_pair<std::size_t, std::size_t>(4, 5));
  CHECK(default_region().h() == doctest::Approx(5e-3));
}

TEST_CASE("decay proxy") {
  CHECK_THROWS_AS(GridFunction::sample(full_line(), [](double, double) { return 1.0; }), InputError);
  CHECK_NOTHROW(GridFunction::sample(full_line(), [](double, double t) { return std::exp(-t * t); }));
}

TEST_CASE("fiber derivative") {
  const auto region = full_line();
  const GridFunction zero(region, std::vector<double>(region->n(), 0.0));
  CHECK(max_abs_difference(fiber_derivative(zero), zero) == 0);
  const GridFunction g = GridFunction::sample(region, [](double, double t) { return std::exp(-t * t); });
  CHECK(max_error(fiber_derivative(g), [](double, double t) { return -2 * t * std::exp(-t * t); }) <= 1e-6);
}

TEST_CASE("fiber integration") {
  const auto region = full_line();
  const GridFunction g = GridFunction::sample(region, [](double, double t) { return std::exp(-t * t); });
  CHECK(std::abs(fiber_integrate(g)[0] - std::sqrt(M_PI)) <= 1e-8);
  CHECK(std::abs(fiber_integrate(fiber_derivative(g))[0]) <= 1e-8);
  const GridFunction zero(region, std::vector<double>(region->n(), 0.0));
  CHECK(fiber_integrate(zero)[0] == 0);
}

TEST_CASE("Poincare homotopy") {
  const auto region = full_line();
  const GridFunction f = GridFunction::sample(region, [](double, double t) { return t * std::exp(-t * t); });
  CHECK(max_error(poincare_homotopy(f), [](double, double t) { return -0.5 * std::exp(-t * t); }) <= 1e-6);
  const GridFunction zero(region, std::vector<double>(region->n(), 0.0));
  CHECK(max_abs_difference(poincare_homotopy(zero), zero) == 0);
  const GridFunction g = GridFunction::sample(region, [](double, double t) { return std::exp(-t * t); });
  CHECK(max_abs_difference(poincare_homotopy(fiber_derivative(g)), g) <= 1e-6);
  CHECK_THROWS_AS(poincare_homotopy(g), InputError);
}

TEST_CASE("integration section") {
  const auto region = point_region([](double t) { return t > -1 && t < 1; });
  const GridFunction s = integration_section({1.0}, region);
  CHECK(std::abs(fiber_integrate(s)[0] - 1.0) <= 1e-8);
  CHECK(max_abs(fiber_integrate(integration_section({0.0}, region))) == 0);
  const BaseGridFunction g = {2.5};
  CHECK(std::abs(fiber_integrate(integration_section(g, region))[0] - 2.5) <= 1e-8);
  const auto empty = point_region([](double) { return false; });
  CHECK_THROWS_AS(integration_section({1.0}, empty), InputError);
}

TEST_CASE("convex hull of a section") {
  const auto cut = GridRegion::from_predicate(false, -1, 1, 21, 10.0, 401,
                                              [](double y, double t) { return !(y > 0 && std::abs(t) < 1e-9); });
  const GridRegion f = convex_hull_of_section(cut, std::vector<double>(21, 1.0));
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      const bool expected = f.y(i) <= 0 || f.t(j) > 1e-9;
      CHECK(f.in(i, j) == expected);
    }
  const GridRegion strip = GridRegion::from_predicate(false, -1, 1, 5, 10.0, 101, [](double, double) { return true; });
  CHECK(convex_hull_of_section(strip, std::vector<double>(5, 0.0)) == strip);
  CHECK_THROWS_AS(convex_hull_of_section(cut, std::vector<double>(21, 0.0)), InputError);
}

TEST_CASE("betti crosscheck") {
  CHECK(betti_crosscheck(*point_region([](double t) { return t > -1 && t < 1; }, 601)) == 1);
  CHECK(betti_crosscheck(*point_region([](double t) { return (t > -4 && t < -1) || (t > 2 && t < 3); }, 601)) == 2);
  CHECK(betti_crosscheck(*point_region([](double) { return false; }, 601)) == 0);
}

TEST_CASE("combinatorial H0 over the splitting family") {
  const GridRegion split = GridRegion::from_predicate(false, -1, 1, 11, 10.0, 401, [](double y, double t) {
    return std::abs(t) < 1 && (y <= 0 || std::abs(t) > 0.2);
  });
  const auto h0 = combinatorial_h0_rows(split);
  for (std::size_t i = 0; i < split.m(); ++i) {
    CHECK(h0[i] == (split.y(i) <= 0 ? 1u : 2u));
    CHECK(betti_crosscheck_row(split, i) == h0[i]);
  }
}

TEST_CASE("verification battery on a bounded-run region") {
  const auto region = std::make_shared<const GridRegion>(GridRegion::from_predicate(
      false, 0, 1, 11, 10.0, 4001, [](double y, double t) { return (t > -3 && t < 2 + y) || (t > 4 && t < 6); }));
  for (const auto& c : derham_verify(region)) {
    INFO(c.name << " " << c.max_error);
    CHECK(c.passed);
  }
}

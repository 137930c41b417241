#include "doctest.h"

#include <algorithm>

#include "cshv/error.hpp"
#include "cshv/random.hpp"
#include "cshv/sheaf.hpp"
#include "cshv/simplicial.hpp"

using namespace cshv;

namespace {

FinPoset chain2() { return FinPoset({"0", "1"}, {{"0", "1"}}); }

std::vector<GradedDims> dims(std::initializer_list<GradedDims> l) { return l; }

GradedDims q0() { return GradedDims(0, {1}); }

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("representations check functoriality") {
  const FinPoset sq({"b", "l", "r", "t"}, {{"b", "l"}, {"b", "r"}, {"l", "t"}, {"r", "t"}});
  std::vector<BddChainComplex> stalks(4, BddChainComplex::concentrated(0, 1));
  PosetRep::CoverMaps maps;
  auto one = [&](std::size_t a, std::size_t b, long v) {
    ChainMap m(stalks[a], stalks[b]);
    m.at(0) = RatMatrix(1, 1, {Rational(v)});
    maps[{a, b}] = m;
  };
  one(0, 1, 1);
  one(0, 2, 1);
  one(1, 3, 1);
  one(2, 3, -1);
  CHECK_THROWS_AS(PosetRep(sq, stalks, maps), InvariantError);
  one(2, 3, 1);
  CHECK_NOTHROW(PosetRep(sq, stalks, maps));
}

TEST_CASE("evaluate") {
  const FinPoset p = chain2();
  const PosetRep f = star_sheaf(p, 1);
  CHECK(homology_dims(evaluate(f, open_star(p, 0))) == homology_dims(f.stalk(0)));
  const FinPoset solid = face_poset(full_simplex(3));
  CHECK(homology_dims(evaluate(constant_sheaf(solid), solid.all())) == q0());
  const FinPoset circle = face_poset(simplex_boundary(3));
  CHECK(homology_dims(evaluate(constant_sheaf(circle), circle.all())) == GradedDims(-1, {1, 1}));
  CHECK_THROWS_AS(evaluate(f, Subset{0}), InputError);
}

TEST_CASE("pullback") {
  const FinPoset p = chain2();
  auto rng = gen::make_rng(1, 0);
  const PosetRep g = gen::random_rep(rng, p, 2);
  CHECK(stalk_homology(pullback(MonotoneMap::identity(p), g)) == stalk_homology(g));
  const FinPoset pt({"pt"}, {});
  const PosetRep c = pullback(MonotoneMap::to_point(p), constant_sheaf(pt));
  CHECK(stalk_homology(c) == stalk_homology(constant_sheaf(p)));
  const PosetRep collapsed = pullback(MonotoneMap(p, p, {0, 0}), g);
  CHECK(stalk_homology(collapsed) == std::vector<GradedDims>{homology_dims(g.stalk(0)), homology_dims(g.stalk(0))});
}

TEST_CASE("extension by zero and closed pushforward") {
  const FinPoset p = chain2();
  const UpSet top(p, {1});
  CHECK(stalk_homology(extend_by_zero(p, top, constant_sheaf(p.induced({1})))) == dims({GradedDims(), q0()}));
  CHECK(stalk_homology(extend_by_zero(p, UpSet(p, {}), zero_rep(p.induced({})))) == dims({GradedDims(), GradedDims()}));
  CHECK(stalk_homology(extend_by_zero(p, UpSet(p, p.all()), constant_sheaf(p))) == stalk_homology(constant_sheaf(p)));
  CHECK(stalk_homology(closed_pushforward(p, {0}, constant_sheaf(p.induced({0})))) == dims({q0(), GradedDims()}));
  CHECK(stalk_homology(closed_pushforward(p, p.all(), constant_sheaf(p))) == stalk_homology(constant_sheaf(p)));
  CHECK(stalk_homology(closed_pushforward(p, {}, zero_rep(p.induced({})))) == dims({GradedDims(), GradedDims()}));
}

TEST_CASE("extension by zero is exact") {
  auto rng = gen::make_rng(2, 0);
  for (int i = 0; i < 20; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 6), 0.4);
    const UpSet u = gen::random_up_set(rng, p);
    const PosetRep f = gen::random_rep(rng, p.induced(u.members()), 3);
    const auto ext = stalk_homology(extend_by_zero(p, u, f));
    const auto base = stalk_homology(f);
    for (std::size_t k = 0; k < u.size(); ++k) CHECK(ext[u.members()[k]] == base[k]);
  }
}

TEST_CASE("recollement on a two-chain") {
  const FinPoset p = chain2();
  const Recollement r = recollement_triangle(constant_sheaf(p), UpSet(p, {1}));
  CHECK(r.ok());
  CHECK(stalk_homology(r.open_closed.a) == dims({GradedDims(), q0()}));
  CHECK(stalk_homology(r.open_closed.c) == dims({q0(), GradedDims()}));

  const Recollement all = recollement_triangle(constant_sheaf(p), UpSet(p, p.all()));
  CHECK(all.ok());
  CHECK(stalk_homology(all.open_closed.c) == dims({GradedDims(), GradedDims()}));
  const Recollement none = recollement_triangle(constant_sheaf(p), UpSet(p, {}));
  CHECK(none.ok());
  CHECK(stalk_homology(none.open_closed.a) == dims({GradedDims(), GradedDims()}));
}

TEST_CASE("tensor") {
  const FinPoset p = chain2();
  const PosetRep r = tensor(star_sheaf(p, 0), star_sheaf(p, 1));
  CHECK(stalk_homology(r) == stalk_homology(star_sheaf(p, 1)));
  auto rng = gen::make_rng(4, 0);
  const PosetRep g = gen::random_rep(rng, p, 3);
  CHECK(stalk_homology(tensor(g, constant_sheaf(p))) == stalk_homology(g));
  CHECK(stalk_homology(tensor(skyscraper(p, 0), star_sheaf(p, 1))) == dims({GradedDims(), GradedDims()}));
  CHECK_THROWS_AS(tensor(constant_sheaf(p), constant_sheaf(FinPoset({"x"}, {}))), InputError);
}

TEST_CASE("pseudo-free resolutions") {
  const FinPoset p = chain2();
  SUBCASE("a star is already pseudo-free") {
    const Resolution r = resolve(star_sheaf(p, 1));
    CHECK(r.length == 0);
    CHECK(r.complex.total_generators() == 1);
    CHECK(r.complex.generators(0) == std::vector<std::size_t>{1});
  }
  SUBCASE("skyscraper at the closed point") {
    const PseudoFreeComplex c = pseudo_free_resolve(skyscraper(p, 0));
    CHECK(c.generators(0) == std::vector<std::size_t>{0});
    CHECK(c.generators(1) == std::vector<std::size_t>{1});
    CHECK(c.d(1).rows() == 1);
    CHECK_FALSE(c.d(1).is_zero());
    CHECK(stalk_homology(realize(c)) == stalk_homology(skyscraper(p, 0)));
  }
  SUBCASE("constant sheaf on an edge") {
    const FinPoset e = face_poset(full_simplex(2));
    const PseudoFreeComplex c = pseudo_free_resolve(constant_sheaf(e));
    CHECK(sorted(c.generators(0)) == sorted({e.index("a"), e.index("b")}));
    CHECK(c.generators(1) == std::vector<std::size_t>{e.index("a,b")});
    const RatMatrix d = c.d(1);
    REQUIRE(d.rows() == 2);
    CHECK(d(0, 0) == -d(1, 0));
    CHECK(d(0, 0) != 0);
    CHECK(stalk_homology(realize(c)) == stalk_homology(constant_sheaf(e)));
  }
  SUBCASE("support condition is enforced") {
    CHECK_THROWS_AS(PseudoFreeComplex(p, 0, {{1}, {0}}, {RatMatrix(1, 1, {Rational(1)})}), InvariantError);
  }
}

TEST_CASE("realize") {
  const FinPoset p = chain2();
  const PosetRep r = realize(PseudoFreeComplex(p, 0, {{0}}, {}));
  CHECK(stalk_homology(r) == stalk_homology(star_sheaf(p, 0)));
  const PosetRep z = realize(PseudoFreeComplex(p, 0, {}, {}));
  CHECK(stalk_homology(z) == dims({GradedDims(), GradedDims()}));
}

TEST_CASE("random resolutions are quasi-isomorphic and agree with the bar resolution") {
  auto rng = gen::make_rng(6, 0);
  for (int i = 0; i < 25; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 6), 0.5);
    const PosetRep f = gen::random_rep(rng, p, 3);
    const Resolution a = resolve(f);
    const Resolution b = bar_resolution(f);
    CHECK(is_natural(a.augmentation, realize(a.complex), f));
    CHECK(is_stalkwise_quasi_iso(a.augmentation, realize(a.complex), f));
    CHECK(is_stalkwise_quasi_iso(b.augmentation, realize(b.complex), f));
    CHECK(a.length <= 2 * static_cast<int>(p.size()));
    const MonotoneMap to_pt = MonotoneMap::to_point(p);
    CHECK(stalk_homology(derived_pushforward(to_pt, f, ResolutionKind::algorithmic)) ==
          stalk_homology(derived_pushforward(to_pt, f, ResolutionKind::bar)));
  }
}

TEST_CASE("derived pushforward") {
  auto rng = gen::make_rng(9, 0);
  const FinPoset p = gen::random_poset(rng, 5, 0.5);
  const PosetRep f = gen::random_rep(rng, p, 3);
  CHECK(stalk_homology(derived_pushforward(MonotoneMap::identity(p), f)) == stalk_homology(f));
  const FinPoset circle = face_poset(simplex_boundary(3));
  CHECK(stalk_homology(derived_pushforward(MonotoneMap::to_point(circle), constant_sheaf(circle))) ==
        dims({GradedDims(0, {1, 1})}));
  const FinPoset solid = face_poset(full_simplex(3));
  CHECK(stalk_homology(derived_pushforward(MonotoneMap::to_point(solid), constant_sheaf(solid))) == dims({q0()}));
}

TEST_CASE("twist by a dualizing local system") {
  // Two-chart circle: points x, y below arcs e, f; the sign system flips along y → f.
  const FinPoset c({"e", "f", "x", "y"}, {{"x", "e"}, {"x", "f"}, {"y", "e"}, {"y", "f"}});
  std::vector<BddChainComplex> stalks(4, BddChainComplex::concentrated(0, 1));
  PosetRep::CoverMaps maps;
  for (const auto& [a, b] : c.covers()) {
    ChainMap m(stalks[a], stalks[b]);
    const bool flip = c.label(a) == "y" && c.label(b) == "f";
    m.at(0) = RatMatrix(1, 1, {Rational(flip ? -1 : 1)});
    maps[{a, b}] = m;
  }
  const PosetRep sign(c, stalks, maps);
  const PosetRep trivial = constant_sheaf(c);
  CHECK(stalk_homology(twist_by_dualizing(trivial, 0, trivial)) == stalk_homology(trivial));
  CHECK(stalk_homology(twist_by_dualizing(trivial, 1, trivial)) == stalk_homology(shift(trivial, 1)));
  const PosetRep squared = twist_by_dualizing(sign, 0, sign);
  for (const auto& [a, b] : c.covers()) CHECK(squared.transition(a, b).at(0) == RatMatrix::identity(1));
  const MonotoneMap pt = MonotoneMap::to_point(c);
  CHECK(stalk_homology(derived_pushforward(pt, trivial)) == dims({GradedDims(0, {1, 1})}));
  CHECK(stalk_homology(derived_pushforward(pt, sign)) == dims({GradedDims()}));
  CHECK_THROWS_AS(twist_by_dualizing(trivial, 0, skyscraper(c, 0)), InputError);
}

TEST_CASE("local constancy") {
  const FinPoset p = chain2();
  const Stratification singletons(MonotoneMap::identity(p));
  const Stratification one(MonotoneMap::to_point(p));
  CHECK(check_locally_constant(constant_sheaf(p), one));
  CHECK(check_locally_constant(skyscraper(p, 0), singletons));
  CHECK_FALSE(check_locally_constant(skyscraper(p, 0), one));
}

#include "doctest.h"

#include "cshv/error.hpp"
#include "cshv/poset.hpp"
#include "cshv/random.hpp"
#include "cshv/simplicial.hpp"

using namespace cshv;

namespace {

FinPoset chain2() { return FinPoset({"0", "1"}, {{"0", "1"}}); }

}  // namespace

TEST_CASE("construction validates the order") {
  CHECK_THROWS_AS(FinPoset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), InputError);
  CHECK_THROWS_AS(FinPoset({"a", "a"}, {}), InputError);
  CHECK_THROWS_AS(FinPoset({"a"}, {{"a", "z"}}), InputError);
  CHECK_THROWS_AS(FinPoset::from_order({"a", "b"}, {1, 1, 1, 1}), InvariantError);
  const FinPoset p({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.leq(p.index("a"), p.index("c")));
  CHECK(p.covers().size() == 2);
}

TEST_CASE("open stars") {
  const FinPoset p = chain2();
  CHECK(open_star(p, "1").members() == Subset{1});
  CHECK(open_star(p, "0").members() == Subset{0, 1});
  CHECK_THROWS_AS(open_star(p, "7"), InputError);
  const FinPoset tri = face_poset(simplex_boundary(3));
  CHECK(tri.labels_of(open_star(tri, "a").members()) == std::vector<std::string>{"a", "a,b", "a,c"});
}

TEST_CASE("down closure and boundary") {
  const FinPoset p = chain2();
  CHECK(down_closure(p, {1}) == Subset{0, 1});
  CHECK(down_closure(p, {}).empty());
  CHECK(boundary(p, {1}) == Subset{0});
  const FinPoset solid = face_poset(full_simplex(3));
  CHECK(down_closure(solid, {solid.index("a,b,c")}).size() == 7);
}

TEST_CASE("star and closure are dual") {
  auto rng = gen::make_rng(11, 0);
  for (int i = 0; i < 20; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 7));
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) {
        const bool in_star = open_star(p, a).contains(b);
        const Subset dc = down_closure(p, {b});
        CHECK(in_star == std::binary_search(dc.begin(), dc.end(), a));
      }
    for (const auto& u : enumerate_up_sets(p)) {
      const Subset bd = boundary(p, u);
      CHECK(p.is_down_set(bd));
      CHECK(set_intersection(bd, u).empty());
    }
  }
}

TEST_CASE("amalgamation") {
  const FinPoset p = chain2();
  const FinPoset x({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}});
  const MonotoneMap alpha(x, p, {0, 1, 1});
  const FinPoset qa({"a"}, {});
  const FinPoset qbc({"b", "c"}, {});
  std::map<std::size_t, MonotoneMap> betas;
  betas.emplace(0, MonotoneMap(x.induced({0}), qa, {0}));
  betas.emplace(1, MonotoneMap(x.induced({1, 2}), qbc, {0, 1}));
  const Amalgamation am = amalgamate(alpha, betas);
  const FinPoset& r = am.poset;
  CHECK(r.size() == 3);
  CHECK(r.lt(r.index("(0,a)"), r.index("(1,b)")));
  CHECK(r.lt(r.index("(0,a)"), r.index("(1,c)")));
  CHECK_FALSE(r.comparable(r.index("(1,b)"), r.index("(1,c)")));
  CHECK(am.map(2) == r.index("(1,c)"));

  std::map<std::size_t, MonotoneMap> missing;
  missing.emplace(0, MonotoneMap(x.induced({0}), qa, {0}));
  CHECK_THROWS_AS(amalgamate(alpha, missing), InputError);
}

TEST_CASE("inductive dimension") {
  CHECK(inductive_dimension(FinPoset({}, {})) == -1);
  CHECK(inductive_dimension(chain2()) == 1);
  CHECK(inductive_dimension(face_poset(full_simplex(3))) == 2);
  auto rng = gen::make_rng(5, 0);
  for (int i = 0; i < 40; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 0, 6), 0.4);
    const int d = inductive_dimension(p);
    CHECK(d == longest_chain_length(p));
    const Subset lc = gen::random_locally_closed(rng, p);
    CHECK(inductive_dimension(p, lc) <= d);
  }
}

TEST_CASE("products") {
  const FinPoset sq = product(chain2(), chain2());
  CHECK(sq.size() == 4);
  CHECK(sq.leq(sq.index("(0,0)"), sq.index("(1,1)")));
  CHECK_FALSE(sq.comparable(sq.index("(0,1)"), sq.index("(1,0)")));
  CHECK(product(chain2(), FinPoset({"*"}, {})).covers().size() == 1);
  const FinPoset c3({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  const FinPoset c4({"0", "1", "2", "3"}, {{"0", "1"}, {"1", "2"}, {"2", "3"}});
  CHECK(longest_chain_length(product(c3, c4)) == 5);
}

TEST_CASE("monotone maps") {
  const FinPoset p = chain2();
  CHECK_THROWS_AS(MonotoneMap(p, p, {1, 0}), InvariantError);
  CHECK_THROWS_AS(MonotoneMap(p, p, {0}), InputError);
  const MonotoneMap collapse(p, p, {0, 0});
  CHECK(collapse.fiber(0) == Subset{0, 1});
  CHECK(compose(collapse, MonotoneMap::identity(p)).assignment() == collapse.assignment());
  CHECK(UpSet(p, {1}).contains(1));
  CHECK_THROWS_AS(UpSet(p, {0}), InputError);
}

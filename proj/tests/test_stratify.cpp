#include "doctest.h"

#include "cshv/error.hpp"
#include "cshv/random.hpp"
#include "cshv/simplicial.hpp"
#include "cshv/stratify.hpp"

using namespace cshv;

namespace {

// 3-point model of ℝ: z = {0}, u- = (−∞, 0), u+ = (0, ∞).
FinPoset line3() { return FinPoset({"z", "u-", "u+"}, {{"z", "u-"}, {"z", "u+"}}); }

bool is_union_of_strata(const Stratification& s, const Subset& set) {
  for (const auto& st : s.strata()) {
    const Subset common = set_intersection(st, set);
    if (!common.empty() && common != st) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cover stratification") {
  const FinPoset x = line3();
  const Stratification s = cover_stratification(x, {UpSet(x, {x.index("u+")})});
  CHECK(s.strata_poset().label(s.map()(x.index("z"))) == "{}");
  CHECK(s.strata_poset().label(s.map()(x.index("u-"))) == "{}");
  CHECK(s.strata_poset().label(s.map()(x.index("u+"))) == "{1}");
  const Stratification e = cover_stratification(x, {});
  CHECK(e.strata_poset().size() == 1);

  const FinPoset c({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  const Stratification t = cover_stratification(c, {UpSet(c, {1, 2}), UpSet(c, {2})});
  CHECK(t.strata_poset().label(t.map()(0)) == "{}");
  CHECK(t.strata_poset().label(t.map()(1)) == "{1}");
  CHECK(t.strata_poset().label(t.map()(2)) == "{1,2}");
}

TEST_CASE("properness") {
  const FinPoset x = line3();
  const FinPoset p({"0", "1"}, {{"0", "1"}});
  const Stratification sign(MonotoneMap::from_labels(x, p, {{"z", "0"}, {"u-", "0"}, {"u+", "1"}}));
  const ProperCheck pc = is_proper(sign);
  CHECK_FALSE(pc.proper);
  REQUIRE(pc.witness.has_value());
  CHECK(*pc.witness == p.index("1"));

  const FinPoset tri = face_poset(simplex_boundary(3));
  CHECK(is_proper(Stratification(MonotoneMap::identity(tri))).proper);

  const FinPoset q({"0", "1", "2"}, {{"0", "1"}});
  const FinPoset one({"*"}, {});
  const Stratification empty_stratum(MonotoneMap(one, q, {0}));
  CHECK_FALSE(is_proper(empty_stratum).proper);
}

TEST_CASE("proper refinement") {
  const FinPoset x = line3();
  SUBCASE("no sets gives the connected pieces") {
    const Stratification s = proper_refine(x, {});
    CHECK(is_proper(s).proper);
  }
  SUBCASE("Θ = {X} matches Θ = ∅") {
    CHECK(proper_refine(x, {x.all()}).strata_poset().size() == proper_refine(x, {}).strata_poset().size());
  }
  SUBCASE("Θ = {{u+}} splits into singletons with z below") {
    const Stratification s = proper_refine(x, {{x.index("u+")}});
    CHECK(is_proper(s).proper);
    REQUIRE(s.strata_poset().size() == 3);
    const auto& sp = s.strata_poset();
    const std::size_t z = s.map()(x.index("z"));
    CHECK(sp.lt(z, s.map()(x.index("u-"))));
    CHECK(sp.lt(z, s.map()(x.index("u+"))));
  }
  SUBCASE("non locally closed input is rejected") {
    const FinPoset c({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
    CHECK_THROWS_AS(proper_refine(c, {{0, 2}}), InputError);
  }
  SUBCASE("closed point of a two-chain") {
    const FinPoset c({"a", "b"}, {{"a", "b"}});
    const Stratification s = proper_refine(c, {{1}});
    CHECK(is_proper(s).proper);
    CHECK(is_union_of_strata(s, {1}));
  }
}

TEST_CASE("random proper refinements") {
  auto rng = gen::make_rng(17, 0);
  for (int i = 0; i < 60; ++i) {
    const FinPoset x = gen::random_poset(rng, gen::uniform(rng, 1, 10), 0.3);
    std::vector<Subset> theta;
    for (std::size_t k = gen::uniform(rng, 0, 4); k > 0; --k) {
      Subset s = gen::random_locally_closed(rng, x);
      if (!s.empty()) theta.push_back(s);
    }
    const Stratification s = proper_refine(x, theta);
    CHECK(is_proper(s).proper);
    for (const auto& t : theta) CHECK(is_union_of_strata(s, t));
  }
}

TEST_CASE("refine_stratification factors through the input") {
  const FinPoset x = line3();
  const FinPoset p({"0", "1"}, {{"0", "1"}});
  const Stratification sign(MonotoneMap::from_labels(x, p, {{"z", "0"}, {"u-", "0"}, {"u+", "1"}}));
  const Refinement r = refine_stratification(sign);
  CHECK(is_proper(r.refined).proper);
  CHECK(r.refined.strata_poset().size() == 3);
  for (std::size_t e = 0; e < x.size(); ++e) CHECK(r.psi(r.refined.map()(e)) == sign.map()(e));

  const Stratification proper(MonotoneMap::identity(x));
  CHECK(refine_stratification(proper).refined.strata_poset().size() == 3);

  const Stratification constant(MonotoneMap::to_point(x));
  const Refinement rc = refine_stratification(constant);
  CHECK(is_proper(rc.refined).proper);
}

TEST_CASE("good position") {
  const FinPoset x({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
  CHECK(in_good_position(x, UpSet(x, x.all()), {UpSet(x, {1, 2})}));
  const FinPoset c({"0", "1"}, {{"0", "1"}});
  CHECK(in_good_position(c, UpSet(c, {1}), {UpSet(c, {1})}));
  CHECK_FALSE(in_good_position(x, UpSet(x, {2}), {UpSet(x, {1, 2})}));
}

#include "doctest.h"

#include <string>

#include "cshv/error.hpp"
#include "cshv/io.hpp"
#include "cshv/random.hpp"

using namespace cshv;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("matrices") {
  const RatMatrix m(2, 2, {Rational(1, 2), Rational(-3), Rational(0), Rational(7, 3)});
  const Json j = io::to_json(m);
  CHECK(j.dump() == R"([["1/2","-3"],["0","7/3"]])");
  CHECK(io::matrix_from_json(j) == m);
  CHECK(io::matrix_from_json(Json::parse("[[1, \"2/4\"]]")) == RatMatrix(1, 2, {Rational(1), Rational(1, 2)}));
  CHECK(io::matrix_from_json(Json::array(), "", 0, 3).cols() == 3);
  CHECK(error_of([] { io::matrix_from_json(Json::parse(R"([["1"],["x"]])"), "/m"); }).find("/m/1/0") == 0);
}

TEST_CASE("posets serialize canonically") {
  const FinPoset p({"c", "a", "b"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  const Json j = io::to_json(p);
  CHECK(j.dump() == R"({"elements":["a","b","c"],"covers":[["a","b"],["b","c"]]})");
  const FinPoset back = io::poset_from_json(j);
  CHECK(io::to_json(back) == j);
  CHECK(error_of([] { io::poset_from_json(Json::parse(R"({"elements":["a"],"covers":[["a","q"]]})"), "f.json:"); })
            .find("f.json:") == 0);
  CHECK(error_of([] { io::poset_from_json(Json::parse(R"({"covers":[]})")); }).find("elements") != std::string::npos);
}

TEST_CASE("representations round trip") {
  auto rng = gen::make_rng(31, 0);
  for (int i = 0; i < 10; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 5), 0.5);
    const PosetRep f = gen::random_rep(rng, p, 3);
    const Json j = io::to_json(f);
    const PosetRep g = io::rep_from_json(j);
    CHECK(io::to_json(g) == j);
    CHECK(stalk_homology(g) == stalk_homology(f));
  }
  const Json c = Json::parse(R"({"base":{"elements":["a","b"],"covers":[["a","b"]]},"constant":0})");
  CHECK(stalk_homology(io::rep_from_json(c)).size() == 2);
  const Json bad = Json::parse(
      R"({"base":{"elements":["a","b"],"covers":[["a","b"]]},"stalks":{"a":{"lo":0,"dims":[1]},"b":{"lo":0,"dims":[1]}},"transitions":{"a->b":{"0":[["1","2"]]}}})");
  CHECK(error_of([&] { io::rep_from_json(bad, "r.json:"); }).find("r.json:/transitions/a->b/0") == 0);
}

TEST_CASE("pseudo-free complexes and certificates round trip") {
  const FinPoset p({"0", "1"}, {{"0", "1"}});
  const PseudoFreeComplex c = pseudo_free_resolve(skyscraper(p, 0));
  const Json j = io::to_json(c);
  CHECK(io::to_json(io::pseudo_free_from_json(j)) == j);

  auto rng = gen::make_rng(32, 0);
  const CombinatorialMap m = gen::random_combinatorial_map(rng, 6, 8);
  const Json mj = io::to_json(m);
  const CombinatorialMap m2 = io::combinatorial_map_from_json(mj);
  CHECK(io::to_json(m2) == mj);
  const ClosedImageCertificate cert = certify_closed_image(m2);
  const Json cj = io::to_json(cert, m2);
  CHECK(verify_certificate(m2, io::certificate_from_json(cj, m2)).ok);
}

TEST_CASE("stratifications and maps") {
  const FinPoset x({"z", "u-", "u+"}, {{"z", "u-"}, {"z", "u+"}});
  const Stratification s = proper_refine(x, {{x.index("u+")}});
  const Json j = io::to_json(s);
  CHECK(io::to_json(io::stratification_from_json(j)) == j);
  const MonotoneMap f = MonotoneMap::to_point(x);
  CHECK(io::to_json(io::map_from_json(io::to_json(f))) == io::to_json(f));
  const Json sets = Json::parse(R"({"sets":[["z","u-"],["u+"]]})");
  CHECK(io::subsets_from_json(sets, x).size() == 2);
}

TEST_CASE("regions use run-length masks") {
  const GridRegion r(false, -1, 1, 2, 10.0, 6, {0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1});
  const Json j = io::to_json(r);
  CHECK(j["mask"].dump() == "[[1,2,1,2],[0,6]]");
  CHECK(io::region_from_json(j) == r);
  const Json bad = Json::parse(R"({"base":"point","window":10,"steps":[1,6],"mask":[[1,2]]})");
  CHECK(error_of([&] { io::region_from_json(bad); }).find("/mask/0") == 0);
}

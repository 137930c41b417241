#include "doctest.h"

#include "cshv/cosheaf.hpp"
#include "cshv/error.hpp"
#include "cshv/random.hpp"
#include "cshv/simplicial.hpp"

using namespace cshv;

namespace {

FinPoset chain2() { return FinPoset({"0", "1"}, {{"0", "1"}}); }

GradedDims summed_stalk_homology(const PosetRep& f) {
  GradedDims acc;
  for (const auto& h : stalk_homology(f)) acc = acc + h;
  return acc;
}

CombinatorialMap edge_map() {
  const FinPoset e = face_poset(full_simplex(2));
  const CombinatorialComplex pres = presentation_from_resolution(pseudo_free_resolve(constant_sheaf(e)));
  return pres.differential(1);
}

}  // namespace

TEST_CASE("support condition") {
  const FinPoset p = chain2();
  CHECK_THROWS_AS(CombinatorialMap(p, {{0, 1}}, {{1}}, RatMatrix(1, 1, {Rational(1)})), InputError);
  CHECK_NOTHROW(CombinatorialMap(p, {{1}}, {{0, 1}}, RatMatrix(1, 1, {Rational(1)})));
  CHECK_THROWS_AS(CombinatorialMap(p, {{0}}, {{0, 1}}, RatMatrix(1, 1)), InputError);
}

TEST_CASE("presentations from resolutions") {
  const FinPoset p = chain2();
  SUBCASE("single generator") {
    const CombinatorialComplex c = presentation_from_resolution(pseudo_free_resolve(star_sheaf(p, 0)));
    CHECK(c.lo() == c.hi());
    CHECK(c.opens(c.lo()).size() == 1);
    CHECK(c.opens(c.lo())[0] == Subset{0, 1});
  }
  SUBCASE("skyscraper") {
    const CombinatorialMap d = presentation_from_resolution(pseudo_free_resolve(skyscraper(p, 0))).differential(1);
    CHECK(d.sources() == std::vector<Subset>{{1}});
    CHECK(d.targets() == std::vector<Subset>{{0, 1}});
    CHECK(abs(d.matrix()(0, 0)) == 1);
  }
  SUBCASE("constant sheaf on an edge") {
    const CombinatorialMap d = edge_map();
    CHECK(d.sources().size() == 1);
    CHECK(d.targets().size() == 2);
    CHECK(d.matrix()(0, 0) == -d.matrix()(1, 0));
    CHECK(abs(d.matrix()(0, 0)) == 1);
  }
}

TEST_CASE("certificates") {
  const FinPoset x({"p", "q"}, {{"p", "q"}});
  SUBCASE("invertible scalar") {
    const CombinatorialMap m(x, {x.all()}, {x.all()}, RatMatrix(1, 1, {Rational(2)}));
    const ClosedImageCertificate c = certify_closed_image(m);
    REQUIRE(c.steps.size() == 1);
    CHECK(c.steps[0].nbar == RatMatrix(1, 1, {Rational(1, 2)}));
    CHECK(verify_certificate(m, c).ok);
  }
  SUBCASE("zero map") {
    const CombinatorialMap m(x, {x.all(), {1}}, {x.all()}, RatMatrix(1, 2));
    const ClosedImageCertificate c = certify_closed_image(m);
    CHECK(verify_certificate(m, c).ok);
    for (const auto& st : c.steps) {
      CHECK(st.mbar.is_zero());
      CHECK(st.nbar.is_zero());
    }
  }
  SUBCASE("edge presentation") {
    const CombinatorialMap m = edge_map();
    const ClosedImageCertificate c = certify_closed_image(m);
    CHECK(c.steps.size() == 3);
    CHECK(verify_certificate(m, c).ok);
    for (const auto& st : c.steps) CHECK(st.mbar * st.nbar * st.mbar == st.mbar);

    ClosedImageCertificate corrupted = c;
    std::size_t target = 0;
    for (std::size_t i = 0; i < corrupted.steps.size(); ++i)
      if (!corrupted.steps[i].mbar.is_zero()) target = i;
    auto& n = corrupted.steps[target].nbar;
    n(0, 0) = n(0, 0) + 5;
    const CertificateCheck bad = verify_certificate(m, corrupted);
    CHECK_FALSE(bad.ok);
    CHECK(bad.failing_step == target);

    ClosedImageCertificate swapped = c;
    std::swap(swapped.steps[0], swapped.steps[2]);
    CHECK_FALSE(verify_certificate(m, swapped).ok);
  }
}

TEST_CASE("random maps certify within the stratum bound") {
  auto rng = gen::make_rng(21, 0);
  for (int i = 0; i < 40; ++i) {
    const CombinatorialMap m = gen::random_combinatorial_map(rng, 6, 12);
    const ClosedImageCertificate c = certify_closed_image(m);
    CHECK(verify_certificate(m, c).ok);
    CHECK(c.steps.size() <= m.space().size());
  }
}

TEST_CASE("global sections presentation") {
  const FinPoset p = chain2();
  const CombinatorialComplex star = global_sections_homology_presentation(star_sheaf(p, 1));
  CHECK(star.opens(star.lo()) == std::vector<Subset>{{1}});

  const FinPoset circle = face_poset(simplex_boundary(3));
  const PosetRep f = constant_sheaf(circle);
  const CombinatorialComplex c = global_sections_homology_presentation(f);
  std::size_t slots = 0;
  for (int k = c.lo(); k <= c.hi(); ++k) slots += c.opens(k).size();
  CHECK(slots == 6);
  CHECK(homology_dims(substitute_point_cosheaf(c)) == summed_stalk_homology(f));
}

TEST_CASE("point cosheaf substitution matches the stalks") {
  auto rng = gen::make_rng(23, 0);
  for (int i = 0; i < 20; ++i) {
    const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 6), 0.5);
    const PosetRep f = gen::random_rep(rng, p, 3);
    CHECK(homology_dims(substitute_point_cosheaf(global_sections_homology_presentation(f))) == summed_stalk_homology(f));
  }
}

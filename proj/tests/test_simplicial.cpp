#include "doctest.h"

#include "cshv/error.hpp"
#include "cshv/poset.hpp"
#include "cshv/random.hpp"
#include "cshv/simplicial.hpp"

using namespace cshv;

using Simplices = std::vector<std::vector<std::string>>;

TEST_CASE("closure") {
  const AlmostSimplicialComplex edge({"a", "b"}, Simplices{{"a", "b"}});
  CHECK(simplicial_closure(edge).size() == 3);
  const AlmostSimplicialComplex tri({"a", "b", "c"}, Simplices{{"a", "b", "c"}});
  CHECK(simplicial_closure(tri).size() == 7);
  CHECK(simplicial_closure(simplicial_closure(tri)) == simplicial_closure(tri));
}

TEST_CASE("local closedness") {
  CHECK(is_locally_closed(AlmostSimplicialComplex({"a", "b"}, Simplices{{"a"}, {"a", "b"}})));
  CHECK_FALSE(is_locally_closed(AlmostSimplicialComplex({"a", "b", "c"}, Simplices{{"a"}, {"a", "b", "c"}})));
  auto rng = gen::make_rng(3, 0);
  for (int i = 0; i < 20; ++i) CHECK(is_locally_closed(gen::random_simplicial_complex(rng)));
}

TEST_CASE("face posets") {
  const FinPoset s1 = face_poset(simplex_boundary(3));
  CHECK(s1.size() == 6);
  CHECK(s1.lower_covers(s1.index("a,b")).size() == 2);
  CHECK(face_poset(AlmostSimplicialComplex({"a"}, Simplices{{"a"}})).size() == 1);
  const FinPoset c = face_poset(AlmostSimplicialComplex({"a", "b"}, Simplices{{"a"}, {"a", "b"}}));
  CHECK(longest_chain_length(c) == 1);
}

TEST_CASE("betti oracle") {
  CHECK(simplicial_betti(simplex_boundary(3)) == std::vector<std::size_t>{1, 1});
  CHECK(simplicial_betti(full_simplex(3)) == std::vector<std::size_t>{1, 0, 0});
  CHECK(simplicial_betti(simplex_boundary(4)) == std::vector<std::size_t>{1, 0, 1});
  // Open edge: Borel–Moore homology of an open interval.
  CHECK(simplicial_betti(AlmostSimplicialComplex({"a", "b"}, Simplices{{"a", "b"}})) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(simplicial_betti(AlmostSimplicialComplex({"a", "b", "c"}, Simplices{{"a"}, {"a", "b", "c"}})),
                  InputError);
}

TEST_CASE("face poset dimension matches simplex dimension") {
  auto rng = gen::make_rng(8, 0);
  for (int i = 0; i < 15; ++i) {
    const auto k = gen::random_simplicial_complex(rng, 4, 3);
    CHECK(inductive_dimension(face_poset(k)) == k.dimension());
  }
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(AlmostSimplicialComplex({"a"}, Simplices{{}}), InputError);
  CHECK_THROWS_AS(AlmostSimplicialComplex({"a"}, Simplices{{"q"}}), InputError);
  CHECK_THROWS_AS(AlmostSimplicialComplex({"a", "a"}, Simplices{}), InputError);
}

#include "doctest.h"

#include "cshv/chain_complex.hpp"
#include "cshv/error.hpp"
#include "cshv/matrix.hpp"

using namespace cshv;

namespace {

RatMatrix mat(std::vector<std::vector<long>> rows, std::size_t cols_if_empty = 0) {
  std::vector<std::vector<Rational>> r;
  for (auto& row : rows) {
    std::vector<Rational> rr;
    for (long v : row) rr.emplace_back(v);
    r.push_back(rr);
  }
  return RatMatrix::from_rows(r, cols_if_empty);
}

}  // namespace

TEST_CASE("rationals print and parse canonically") {
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("rank factorization") {
  SUBCASE("zero matrix has rank 0") {
    const auto f = rank_factorize(RatMatrix(2, 2));
    CHECK(f.rank() == 0);
    CHECK(f.left.rows() == 2);
    CHECK(f.left.cols() == 0);
    CHECK(f.right.cols() == 2);
  }
  SUBCASE("identity") {
    const auto f = rank_factorize(RatMatrix::identity(3));
    CHECK(f.rank() == 3);
    CHECK(f.left * f.right == RatMatrix::identity(3));
  }
  SUBCASE("[[1,2],[2,4]]") {
    const RatMatrix m = mat({{1, 2}, {2, 4}});
    const auto f = rank_factorize(m);
    CHECK(f.rank() == 1);
    CHECK(f.left * f.right == m);
    CHECK(f.left == mat({{1}, {2}}));
    CHECK(f.right == mat({{1, 2}}));
  }
}

TEST_CASE("right pseudo-inverse") {
  CHECK(right_pseudo_inverse(mat({{2}})) == RatMatrix(1, 1, {Rational(1, 2)}));
  CHECK(right_pseudo_inverse(RatMatrix(2, 3)).is_zero());
  const RatMatrix p = mat({{1, 0}, {0, 0}});
  const RatMatrix n = right_pseudo_inverse(p);
  CHECK(p * n * p == p);
  CHECK(n == p);
  const RatMatrix wide = mat({{1, 2, 3}, {2, 4, 6}, {0, 1, -1}});
  const RatMatrix nw = right_pseudo_inverse(wide);
  CHECK(nw.rows() == 3);
  CHECK(wide * nw * wide == wide);
}

TEST_CASE("kernel and column bases") {
  const RatMatrix m = mat({{1, 1, 0}, {0, 1, 1}});
  const RatMatrix k = kernel_basis(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).is_zero());
  CHECK(column_basis(m).cols() == 2);
  CHECK(rank(m) == 2);
  CHECK(inverse(mat({{2, 1}, {1, 1}})) == mat({{1, -1}, {-1, 2}}));
  CHECK_THROWS_AS(inverse(mat({{1, 2}, {2, 4}})), InvariantError);
}

TEST_CASE("homology dims") {
  CHECK(homology_dims(BddChainComplex::zero()).is_zero());
  const BddChainComplex acyclic(0, {1, 1}, {RatMatrix::identity(1)});
  CHECK(homology_dims(acyclic).is_zero());
  // Triangle boundary: edges ab, ac, bc over vertices a, b, c.
  const RatMatrix d1 = mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
  const BddChainComplex circle(0, {3, 3}, {d1});
  CHECK(homology_dims(circle) == GradedDims(0, {1, 1}));
  CHECK(euler_characteristic(circle) == euler_characteristic(homology_dims(circle)));
  CHECK_THROWS_AS(BddChainComplex(0, {1, 1, 1}, {RatMatrix::identity(1), RatMatrix::identity(1)}), InvariantError);
}

TEST_CASE("homology is invariant under change of basis") {
  const RatMatrix d1 = mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
  const RatMatrix g0 = mat({{1, 2, 0}, {0, 1, 0}, {3, 0, 1}});
  const RatMatrix g1 = mat({{2, 0, 1}, {0, 1, 0}, {1, 0, 1}});
  const BddChainComplex twisted(0, {3, 3}, {g0 * d1 * inverse(g1)});
  CHECK(homology_dims(twisted) == GradedDims(0, {1, 1}));
}

TEST_CASE("tensor complex") {
  const BddChainComplex x(0, {3, 3}, {mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}})});
  const BddChainComplex unit = BddChainComplex::concentrated(0, 1);
  CHECK(homology_dims(tensor_complex(x, unit)) == homology_dims(x));
  const BddChainComplex t = tensor_complex(unit, BddChainComplex::concentrated(1, 1));
  CHECK(dims_of(t) == GradedDims(1, {1}));
  const BddChainComplex zero_map(0, {1, 1}, {RatMatrix(1, 1)});
  CHECK(homology_dims(tensor_complex(zero_map, zero_map)) == GradedDims(0, {1, 2, 1}));
}

TEST_CASE("mapping cone of an identity is acyclic") {
  const BddChainComplex x(0, {2, 1}, {mat({{1}, {0}})});
  const ChainMap id = ChainMap::identity(x);
  CHECK(is_chain_map(id, x, x));
  CHECK(is_quasi_isomorphism(id, x, x));
  CHECK(homology_dims(mapping_cone(id, x, x)).is_zero());
  CHECK(homology_dims(shift(x, 2)) == GradedDims(2, {1}));
}

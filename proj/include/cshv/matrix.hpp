#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cshv {

using Rational = boost::multiprecision::mpq_rational;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);
/// Parses "p", "-p", "p/q". Throws InputError on anything else or q = 0.
Rational parse_rational(const std::string& text);

/// Dense row-major matrix over ℚ.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  RatMatrix transpose() const;
  RatMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  RatMatrix column(std::size_t c) const;
  /// Columns [first, first+count).
  RatMatrix columns(std::size_t first, std::size_t count) const;

  RatMatrix operator*(const RatMatrix& rhs) const;
  RatMatrix operator+(const RatMatrix& rhs) const;
  RatMatrix operator-(const RatMatrix& rhs) const;
  RatMatrix operator-() const;
  RatMatrix scaled(const Rational& s) const;
  bool operator==(const RatMatrix& rhs) const;

  /// [A | B]
  static RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b);
  /// [A ; B]
  static RatMatrix vconcat(const RatMatrix& a, const RatMatrix& b);
  /// Block-diagonal diag(A, B).
  static RatMatrix direct_sum(const RatMatrix& a, const RatMatrix& b);
  /// Kronecker product A ⊗ B, row index (i, k) ↦ i·B.rows + k.
  static RatMatrix kron(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

/// Reduced row echelon form plus pivot columns.
struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// M = C·R, C full column rank r, R full row rank r.
struct RankFactorization {
  RatMatrix left;   // C: rows(M) × r
  RatMatrix right;  // R: r × cols(M)
  std::size_t rank() const { return right.rows(); }
};

RankFactorization rank_factorize(const RatMatrix& m);

/// N with M·N·M = M, built as Rᵗ(RRᵗ)⁻¹(CᵗC)⁻¹Cᵗ from the rank factorization.
RatMatrix right_pseudo_inverse(const RatMatrix& m);

/// Inverse of a square invertible matrix. Throws InvariantError when singular.
RatMatrix inverse(const RatMatrix& m);

/// Columns form a basis of ker M.
RatMatrix kernel_basis(const RatMatrix& m);

/// Columns form a basis of the column space of M (a subset of M's columns).
RatMatrix column_basis(const RatMatrix& m);

}  // namespace cshv

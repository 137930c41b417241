#include "cshv/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "cshv/error.hpp"

namespace cshv {

namespace bmp = boost::multiprecision;

std::string to_string(const Rational& q) {
  if (bmp::denominator(q) == 1) return bmp::numerator(q).str();
  return bmp::numerator(q).str() + "/" + bmp::denominator(q).str();
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw InputError("not a rational number: \"" + text + "\"");
  bmp::mpz_int n(num[0] == '+' ? num.substr(1) : num);
  bmp::mpz_int d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw InputError("zero denominator: \"" + text + "\"");
  return Rational(n, d);
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError("matrix entry count does not match its shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  RatMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c) s(r, c) = (*this)(row_idx[r], col_idx[c]);
  return s;
}

RatMatrix RatMatrix::column(std::size_t c) const { return columns(c, 1); }

RatMatrix RatMatrix::columns(std::size_t first, std::size_t count) const {
  RatMatrix s(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) s(r, c) = (*this)(r, first + c);
  return s;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvariantError("matrix product shape mismatch");
  RatMatrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Rational& b = rhs(k, j);
        if (b != 0) p(i, j) += a * b;
      }
    }
  return p;
}

RatMatrix RatMatrix::operator+(const RatMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvariantError("matrix sum shape mismatch");
  RatMatrix s = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += rhs.data_[i];
  return s;
}

RatMatrix RatMatrix::operator-(const RatMatrix& rhs) const { return *this + (-rhs); }

RatMatrix RatMatrix::operator-() const { return scaled(-1); }

RatMatrix RatMatrix::scaled(const Rational& s) const {
  RatMatrix m = *this;
  for (auto& q : m.data_) q *= s;
  return m;
}

bool RatMatrix::operator==(const RatMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

RatMatrix RatMatrix::hconcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_) throw InvariantError("hconcat row mismatch");
  RatMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
  }
  return m;
}

RatMatrix RatMatrix::vconcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.cols_) throw InvariantError("vconcat column mismatch");
  RatMatrix m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) m(a.rows_ + r, c) = b(r, c);
  return m;
}

RatMatrix RatMatrix::direct_sum(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) m(a.rows_ + r, a.cols_ + c) = b(r, c);
  return m;
}

RatMatrix RatMatrix::kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Rational& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) m(i * b.rows_ + k, j * b.cols_ + l) = x * b(k, l);
    }
  return m;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << to_string(m(r, c));
    os << ']';
  }
  return os << ']';
}

namespace {

// Height proxy |num|·den; smaller pivots keep intermediate entries short.
bmp::mpz_int height(const Rational& q) { return bmp::abs(bmp::numerator(q)) * bmp::denominator(q); }

}  // namespace

RowEchelon row_reduce(const RatMatrix& m) {
  RatMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    for (std::size_t r = row; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      if (best == a.rows() || height(a(r, col)) < height(a(best, col))) best = r;
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(best, c), a(row, c));
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a(r, c) -= factor * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m).pivots.size();
}

RankFactorization rank_factorize(const RatMatrix& m) {
  const RowEchelon ech = row_reduce(m);
  const std::size_t r = ech.pivots.size();
  std::vector<std::size_t> all_rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
  std::vector<std::size_t> lead_rows(r);
  for (std::size_t i = 0; i < r; ++i) lead_rows[i] = i;
  std::vector<std::size_t> all_cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) all_cols[j] = j;
  return {m.submatrix(all_rows, ech.pivots), ech.reduced.submatrix(lead_rows, all_cols)};
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InvariantError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const RowEchelon ech = row_reduce(RatMatrix::hconcat(m, RatMatrix::identity(n)));
  if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) throw InvariantError("matrix is singular");
  return ech.reduced.columns(n, n);
}

RatMatrix right_pseudo_inverse(const RatMatrix& m) {
  const RankFactorization f = rank_factorize(m);
  if (f.rank() == 0) return RatMatrix(m.cols(), m.rows());
  const RatMatrix& c = f.left;
  const RatMatrix& r = f.right;
  const RatMatrix rt = r.transpose();
  const RatMatrix ct = c.transpose();
  return rt * inverse(r * rt) * inverse(ct * c) * ct;
}

RatMatrix kernel_basis(const RatMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return RatMatrix::identity(n);
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  RatMatrix basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) basis(ech.pivots[i], k) = -ech.reduced(i, f);
  }
  return basis;
}

RatMatrix column_basis(const RatMatrix& m) {
  if (m.empty()) return RatMatrix(m.rows(), 0);
  const RowEchelon ech = row_reduce(m);
  std::vector<std::size_t> all_rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) all_rows[i] = i;
  return m.submatrix(all_rows, ech.pivots);
}

}  // namespace cshv

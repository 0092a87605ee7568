#include "hpcc/gf.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_set>
#include <utility>

#include "hpcc/errors.hpp"

namespace hpcc::gf {

namespace {

int degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree(m);
  while (degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

}  // namespace

std::uint32_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

bool is_irreducible(std::uint32_t poly, unsigned deg) {
  if (deg == 0 || deg > Field::kMaxBits || degree(poly) != static_cast<int>(deg)) return false;
  // Any factorisation has a factor of degree <= deg/2.
  for (std::uint32_t d = 2; degree(d) <= static_cast<int>(deg / 2); ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

Field::Field(unsigned bits, std::uint32_t reduction_polynomial) : bits_(bits), poly_(reduction_polynomial) {
  if (bits == 0 || bits > kMaxBits) throw InvalidField("bit width must be in [1, 16], got " + std::to_string(bits));
  if (!is_irreducible(reduction_polynomial, bits)) {
    throw InvalidField("polynomial " + std::to_string(reduction_polynomial) + " is not irreducible of degree " +
                       std::to_string(bits));
  }
  if (bits <= 8) {
    const std::size_t q = order();
    auto mul = std::make_shared<std::vector<Element>>(q * q);
    auto inv = std::make_shared<std::vector<Element>>(q, 0);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        (*mul)[(a << bits) | b] = mul_reduce(static_cast<Element>(a), static_cast<Element>(b));
      }
      if (a != 0) (*inv)[a] = inv_euclid(static_cast<Element>(a));
    }
    mul_table_ = std::move(mul);
    inv_table_ = std::move(inv);
  }
}

Field Field::gf256() { return Field(8, 0x11B); }

Field Field::with_bits(unsigned bits) {
  if (bits == 0 || bits > kMaxBits) throw InvalidField("bit width must be in [1, 16], got " + std::to_string(bits));
  for (std::uint32_t p = 1u << bits; p < (2u << bits); ++p) {
    if (is_irreducible(p, bits)) return Field(bits, p);
  }
  throw InvalidField("no irreducible polynomial of degree " + std::to_string(bits));
}

Element Field::mul_reduce(Element a, Element b) const {
  return static_cast<Element>(poly_mod(clmul(a, b), poly_));
}

Element Field::inv_euclid(Element a) const {
  std::uint32_t r0 = poly_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::uint32_t q = 0, r = r0;
    const int d1 = degree(r1);
    while (degree(r) >= d1) {
      const int sh = degree(r) - d1;
      q ^= 1u << sh;
      r ^= r1 << sh;
    }
    r0 = r1;
    r1 = r;
    const std::uint32_t s = s0 ^ clmul(q, s1);
    s0 = s1;
    s1 = s;
  }
  return static_cast<Element>(poly_mod(s0, poly_));
}

Element Field::inv(Element a) const {
  if (a == 0) throw NoSolution("zero has no multiplicative inverse");
  if (inv_table_) return (*inv_table_)[a];
  return inv_euclid(a);
}

void Field::axpy(std::span<Element> dst, std::span<const Element> src, Element coef) const {
  if (coef == 0) return;
  const std::size_t n = dst.size();
  if (coef == 1) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  if (mul_table_) {
    const Element* t = mul_table_->data() + (std::size_t{coef} << bits_);
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= t[src[i]];
    return;
  }
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= mul_reduce(coef, src[i]);
}

void Field::scale(std::span<Element> v, Element coef) const {
  for (auto& x : v) x = mul(coef, x);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("matrix data does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void Matrix::append_row(std::span<const Element> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw DimensionMismatch("row length does not match column count");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row(a);
  auto rb = row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < idx.size(); ++j) out.at(r, j) = at(r, idx[j]);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

Matrix cauchy_matrix(const Field& f, std::span<const Element> xs, std::span<const Element> ys) {
  std::unordered_set<Element> seen;
  for (auto x : xs) {
    if (!f.contains(x)) throw DuplicateEvaluationPoint("point outside the field");
    if (!seen.insert(x).second) throw DuplicateEvaluationPoint("repeated x point " + std::to_string(x));
  }
  for (auto y : ys) {
    if (!f.contains(y)) throw DuplicateEvaluationPoint("point outside the field");
    if (!seen.insert(y).second) throw DuplicateEvaluationPoint("y point " + std::to_string(y) + " repeats");
  }
  Matrix m(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) m.at(i, j) = f.inv(Field::add(xs[i], ys[j]));
  }
  return m;
}

std::vector<std::size_t> reduce_row_echelon(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
    std::size_t r = prow;
    while (r < m.rows() && m.at(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(prow, r);
    f.scale(m.row(prow), f.inv(m.at(prow, c)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != prow && m.at(i, c) != 0) f.axpy(m.row(i), m.row(prow), m.at(i, c));
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return reduce_row_echelon(f, m).size(); }

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) f.axpy(out.row(i), b.row(k), a.at(i, k));
  }
  return out;
}

std::vector<Element> apply(const Field& f, const Matrix& a, std::span<const Element> x) {
  if (x.size() != a.cols()) throw DimensionMismatch("vector length differs from column count");
  std::vector<Element> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Element acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc ^= f.mul(a.at(i, j), x[j]);
    y[i] = acc;
  }
  return y;
}

std::vector<Element> solve(const Field& f, const Matrix& m, std::span<const Element> rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("rhs length differs from row count");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    aug.at(r, m.cols()) = rhs[r];
  }
  const auto pivots = reduce_row_echelon(f, aug);
  if (!pivots.empty() && pivots.back() == m.cols()) throw NoSolution("inconsistent system");
  if (pivots.size() < m.cols()) throw Underdetermined("rank " + std::to_string(pivots.size()) + " < " +
                                                      std::to_string(m.cols()) + " unknowns");
  std::vector<Element> x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) x[i] = aug.at(i, m.cols());
  return x;
}

Matrix inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const auto pivots = reduce_row_echelon(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Underdetermined("singular matrix");
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
  }
  return out;
}

}  // namespace hpcc::gf

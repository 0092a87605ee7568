#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hpcc::gf {

/// An element of GF(2^l), stored in its polynomial-basis bit representation.
using Element = std::uint16_t;

/// Carry-less product of two polynomials over GF(2), no reduction.
std::uint32_t clmul(std::uint32_t a, std::uint32_t b);

/// True iff `poly` has degree exactly `degree` and no factor of degree
/// 1..degree/2. Exhaustive trial division, fine for degree <= 16.
bool is_irreducible(std::uint32_t poly, unsigned degree);

/// GF(2^l) for 1 <= l <= 16. Immutable once built; copies share the lookup
/// tables used for l <= 8.
class Field {
 public:
  static constexpr unsigned kMaxBits = 16;

  /// Throws InvalidField unless `reduction_polynomial` is irreducible of
  /// degree `bits`.
  Field(unsigned bits, std::uint32_t reduction_polynomial);

  /// GF(2^8) over x^8+x^4+x^3+x+1.
  static Field gf256();

  /// The field of the given width over the numerically smallest irreducible
  /// polynomial of that degree.
  static Field with_bits(unsigned bits);

  unsigned bits() const { return bits_; }
  std::uint32_t polynomial() const { return poly_; }
  std::uint32_t order() const { return 1u << bits_; }
  bool contains(std::uint32_t a) const { return a < order(); }

  static Element add(Element a, Element b) { return a ^ b; }

  Element mul(Element a, Element b) const {
    if (mul_table_) return (*mul_table_)[(std::size_t{a} << bits_) | b];
    return mul_reduce(a, b);
  }

  /// Multiplicative inverse via the extended Euclidean algorithm on
  /// polynomials. Throws NoSolution for zero.
  Element inv(Element a) const;

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  /// dst[i] ^= coef * src[i]
  void axpy(std::span<Element> dst, std::span<const Element> src, Element coef) const;

  /// v[i] = coef * v[i]
  void scale(std::span<Element> v, Element coef) const;

  bool operator==(const Field& o) const { return bits_ == o.bits_ && poly_ == o.poly_; }

 private:
  Element mul_reduce(Element a, Element b) const;
  Element inv_euclid(Element a) const;

  unsigned bits_;
  std::uint32_t poly_;
  std::shared_ptr<const std::vector<Element>> mul_table_;
  std::shared_ptr<const std::vector<Element>> inv_table_;
};

/// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Element>& data() const { return data_; }

  void append_row(std::span<const Element> r);
  void swap_rows(std::size_t a, std::size_t b);

  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Entry (i, j) = 1 / (xs[i] + ys[j]). Throws DuplicateEvaluationPoint if the
/// points repeat or the two lists intersect.
Matrix cauchy_matrix(const Field& f, std::span<const Element> xs, std::span<const Element> ys);

/// Reduced row echelon form in place. Pivot search walks columns left to
/// right and takes the first row (lowest index) with a nonzero entry.
/// Returns the pivot columns; their count is the rank.
std::vector<std::size_t> reduce_row_echelon(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

/// a * x for a column vector x.
std::vector<Element> apply(const Field& f, const Matrix& a, std::span<const Element> x);

/// Unique solution of m x = rhs. Throws Underdetermined when rank < cols,
/// NoSolution when the system is inconsistent.
std::vector<Element> solve(const Field& f, const Matrix& m, std::span<const Element> rhs);

/// Inverse of a square matrix; throws Underdetermined if singular.
Matrix inverse(const Field& f, const Matrix& m);

}  // namespace hpcc::gf

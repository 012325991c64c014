#pragma once

// Exact matrices over Q(t) and Smith normal form over the local ring at t = 0.

#include "stackydeg/field.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace stackydeg {

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of rational functions.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<RatFunc> entries);
  static Mat identity(std::size_t n);
  static Mat diagonal(std::span<const RatFunc> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<RatFunc>& entries() const { return entries_; }

  RatFunc& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const RatFunc& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const RatFunc& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const RatFunc& factor);
  void scale_row(std::size_t r, const RatFunc& factor);

  bool is_diagonal() const;
  /// Every entry has non-negative valuation.
  bool is_regular() const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const RatFunc& s, const Mat& a);
  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RatFunc> entries_;
};

/// Smallest l >= 0 making t^l * a regular at the origin. Zero entries have
/// infinite valuation and never constrain l.
std::int64_t clear_denominators(const Mat& a);

/// Determinant by cofactor expansion (Gaussian elimination above 6x6).
RatFunc determinant(const Mat& a);

/// val(det a); infinite when a is singular. Throws ShapeError if non-square.
Valuation valuation_of_det(const Mat& a);

/// Inverse over Q(t) by Gauss-Jordan elimination.
Mat inverse(const Mat& a);

struct SnfResult {
  Mat left;
  std::vector<std::int64_t> diag_valuations;
  Mat right;
  std::int64_t shift = 0;  ///< l with t^l * a regular
  /// left * (t^shift * a) * right; its i-th diagonal entry is exactly
  /// t^diag_valuations[i].
  Mat diagonal;
};

/// Smith normal form of t^l * a over the local ring at t = 0.
///
/// Elimination only uses row/column swaps, scaling by units, and adding
/// local-ring multiples, so `left` and `right` are unimodular by
/// construction. The pivot at each step is an entry of minimal valuation in
/// the remaining submatrix, ties broken by the smallest (row, col).
///
/// Throws ShapeError for non-square input and SingularMatrix when the
/// determinant vanishes.
SnfResult smith_normal_form(const Mat& a);

}  // namespace stackydeg

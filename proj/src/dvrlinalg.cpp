#include "stackydeg/dvrlinalg.hpp"

#include <optional>
#include <utility>

namespace stackydeg {

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<RatFunc> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw ShapeError("matrix entry count does not match its shape");
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc(1L);
  return m;
}

Mat Mat::diagonal(std::span<const RatFunc> diag) {
  Mat m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

void Mat::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Mat::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void Mat::add_row_multiple(std::size_t dst, std::size_t src, const RatFunc& factor) {
  if (factor.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!(*this)(src, c).is_zero()) (*this)(dst, c) += factor * (*this)(src, c);
}

void Mat::add_col_multiple(std::size_t dst, std::size_t src, const RatFunc& factor) {
  if (factor.is_zero()) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if (!(*this)(r, src).is_zero()) (*this)(r, dst) += factor * (*this)(r, src);
}

void Mat::scale_row(std::size_t r, const RatFunc& factor) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= factor;
}

bool Mat::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && !(*this)(r, c).is_zero()) return false;
  return true;
}

bool Mat::is_regular() const {
  for (const auto& e : entries_)
    if (!is_regular_at_origin(e)) return false;
  return true;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
  Mat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RatFunc& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

Mat operator*(const RatFunc& s, const Mat& a) {
  Mat out = a;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

std::int64_t clear_denominators(const Mat& a) {
  std::int64_t ell = 0;
  for (const auto& e : a.entries()) {
    Valuation v = val(e);
    if (!v.is_infinite() && -v.value() > ell) ell = -v.value();
  }
  return ell;
}

namespace {

RatFunc det_cofactor(const Mat& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  RatFunc acc;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c).is_zero()) continue;
    Mat minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, mc = 0; cc < n; ++cc) {
        if (cc == c) continue;
        minor(r - 1, mc++) = a(r, cc);
      }
    RatFunc term = a(0, c) * det_cofactor(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

RatFunc det_elimination(Mat a) {
  const std::size_t n = a.rows();
  RatFunc det(1L);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = i;
    while (p < n && a(p, i).is_zero()) ++p;
    if (p == n) return {};
    if (p != i) {
      a.swap_rows(p, i);
      det = -det;
    }
    det *= a(i, i);
    const RatFunc pivot_inv = a(i, i).inverse();
    for (std::size_t r = i + 1; r < n; ++r)
      if (!a(r, i).is_zero()) a.add_row_multiple(r, i, -(a(r, i) * pivot_inv));
  }
  return det;
}

}  // namespace

RatFunc determinant(const Mat& a) {
  if (!a.is_square()) throw ShapeError("determinant of a non-square matrix");
  if (a.rows() == 0) return RatFunc(1L);
  return a.rows() <= 6 ? det_cofactor(a) : det_elimination(a);
}

Valuation valuation_of_det(const Mat& a) { return val(determinant(a)); }

Mat inverse(const Mat& a) {
  if (!a.is_square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Mat work = a;
  Mat inv = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t p = i;
    while (p < n && work(p, i).is_zero()) ++p;
    if (p == n) throw SingularMatrix("matrix is singular over the fraction field");
    work.swap_rows(p, i);
    inv.swap_rows(p, i);
    const RatFunc s = work(i, i).inverse();
    work.scale_row(i, s);
    inv.scale_row(i, s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i || work(r, i).is_zero()) continue;
      const RatFunc f = -work(r, i);
      work.add_row_multiple(r, i, f);
      inv.add_row_multiple(r, i, f);
    }
  }
  return inv;
}

SnfResult smith_normal_form(const Mat& a) {
  if (!a.is_square()) throw ShapeError("Smith normal form needs a square matrix");
  const std::size_t n = a.rows();
  SnfResult res;
  res.shift = clear_denominators(a);
  Mat work = RatFunc::t_pow(res.shift) * a;
  res.left = Mat::identity(n);
  res.right = Mat::identity(n);

  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    Valuation best = Valuation::infinity();
    for (std::size_t r = i; r < n; ++r)
      for (std::size_t c = i; c < n; ++c) {
        Valuation v = val(work(r, c));
        if (!v.is_infinite() && (!pivot || v < best)) {
          best = v;
          pivot = {r, c};
        }
      }
    if (!pivot) throw SingularMatrix("matrix is singular over the fraction field");

    work.swap_rows(i, pivot->first);
    res.left.swap_rows(i, pivot->first);
    work.swap_cols(i, pivot->second);
    res.right.swap_cols(i, pivot->second);

    // Rescale the pivot row by a unit so the pivot becomes exactly t^v.
    const RatFunc tv = RatFunc::t_pow(best.value());
    const RatFunc unit_inv = tv / work(i, i);
    if (!unit_inv.is_one()) {
      work.scale_row(i, unit_inv);
      res.left.scale_row(i, unit_inv);
    }

    // Every quotient below has valuation >= 0 because the pivot is minimal.
    for (std::size_t r = i + 1; r < n; ++r) {
      if (work(r, i).is_zero()) continue;
      const RatFunc f = -(work(r, i) / tv);
      work.add_row_multiple(r, i, f);
      res.left.add_row_multiple(r, i, f);
    }
    for (std::size_t c = i + 1; c < n; ++c) {
      if (work(i, c).is_zero()) continue;
      const RatFunc f = -(work(i, c) / tv);
      work.add_col_multiple(c, i, f);
      res.right.add_col_multiple(c, i, f);
    }
    res.diag_valuations.push_back(best.value());
  }
  res.diagonal = std::move(work);
  return res;
}

}  // namespace stackydeg

#pragma once

// Dense matrices over an exact field with deterministic Gauss-Jordan
// elimination (first nonzero entry in the column is the pivot).

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ellrank/field.hpp"

namespace ellrank {

template <ExactField F>
using Vector = std::vector<typename F::Element>;

template <ExactField F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix from_rows(F field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(std::move(field), 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Element> v) {
    if (v.size() != cols_) throw std::invalid_argument("append_row: dimension mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  /// Rows of this followed by rows of other.
  Matrix stacked(const Matrix& other) const {
    if (other.cols_ != cols_) throw std::invalid_argument("stack: dimension mismatch");
    Matrix m = *this;
    m.data_.insert(m.data_.end(), other.data_.begin(), other.data_.end());
    m.rows_ += other.rows_;
    return m;
  }

  Matrix transposed() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<Vector<F>> row_vectors() const {
    std::vector<Vector<F>> out;
    for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
    return out;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

/// Reduced row echelon form kept as an incremental basis: each stored vector
/// has a 1 at its pivot and zeros at the pivots of every other stored vector.
template <ExactField F>
class RowEchelon {
 public:
  using Element = typename F::Element;

  RowEchelon(F field, std::size_t cols) : field_(std::move(field)), cols_(cols) {}

  explicit RowEchelon(const Matrix<F>& m) : RowEchelon(m.field(), m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r));
  }

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vector<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its projection onto the current row space along the pivot columns.
  Vector<F> reduce(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("reduce: dimension mismatch");
    Vector<F> r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Element c = r[pivots_[i]];
      if (field_.is_zero(c)) continue;
      const auto& b = basis_[i];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.is_zero(b[j])) r[j] = field_.sub(r[j], field_.mul(c, b[j]));
    }
    return r;
  }

  bool contains(std::span<const Element> v) const {
    auto r = reduce(v);
    for (const auto& e : r)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  /// Adds v to the row space; returns false when v was already in it.
  bool insert(std::span<const Element> v) {
    auto r = reduce(v);
    std::size_t piv = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!field_.is_zero(r[j])) {
        piv = j;
        break;
      }
    if (piv == cols_) return false;
    const Element s = field_.inv(r[piv]);
    for (auto& e : r) e = field_.mul(e, s);
    // Clear the new pivot column from the existing rows.
    for (auto& b : basis_) {
      const Element c = b[piv];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < cols_; ++j) b[j] = field_.sub(b[j], field_.mul(c, r[j]));
    }
    // Keep rows sorted by pivot so the basis is the canonical RREF.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
    return true;
  }

  Matrix<F> as_matrix() const { return Matrix<F>::from_rows(field_, cols_, basis_); }

 private:
  F field_;
  std::size_t cols_;
  std::vector<Vector<F>> basis_;
  std::vector<std::size_t> pivots_;
};

template <ExactField F>
struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<Vector<F>> kernel_basis;
};

/// Rank, pivot columns and a basis of the right null space {x : M x = 0}.
template <ExactField F>
RankProfile<F> rank_profile(const Matrix<F>& m) {
  const F& f = m.field();
  RowEchelon<F> ech(m);
  RankProfile<F> out;
  out.rank = ech.rank();
  out.pivots = ech.pivots();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < out.rank; ++i) v[out.pivots[i]] = f.neg(ech.basis()[i][free]);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return RowEchelon<F>(m).rank();
}

template <ExactField F>
bool in_row_space(const Matrix<F>& m, std::span<const typename F::Element> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("in_row_space: dimension mismatch");
  return RowEchelon<F>(m).contains(v);
}

/// Canonical (RREF) basis of rowspace(A) ∩ rowspace(B).
template <ExactField F>
std::vector<Vector<F>> row_space_intersection(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("row_space_intersection: dimension mismatch");
  const F& f = a.field();
  const auto ba = RowEchelon<F>(a).basis();
  const auto bb = RowEchelon<F>(b).basis();
  if (ba.empty() || bb.empty()) return {};
  // Relations sum l_i a_i + sum m_j b_j = 0 are the kernel of the transpose of [A;B];
  // each relation yields the common vector sum l_i a_i.
  auto stacked = Matrix<F>::from_rows(f, a.cols(), ba).stacked(Matrix<F>::from_rows(f, a.cols(), bb));
  auto relations = rank_profile(stacked.transposed()).kernel_basis;
  RowEchelon<F> out(f, a.cols());
  for (const auto& rel : relations) {
    Vector<F> v(a.cols(), f.zero());
    for (std::size_t i = 0; i < ba.size(); ++i) {
      if (f.is_zero(rel[i])) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) v[j] = f.add(v[j], f.mul(rel[i], ba[i][j]));
    }
    out.insert(v);
  }
  return out.basis();
}

}  // namespace ellrank

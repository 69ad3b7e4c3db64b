#include "twistperiod/linalg.hpp"

#include <stdexcept>

namespace twistperiod::linalg {

namespace {

// Gauss-Jordan to reduced row-echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rat factor = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(RatMatrix rows) {
  if (rows.empty()) return 0;
  return static_cast<int>(rref(rows, rows.front().size()).size());
}

Rat determinant(RatMatrix m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && sgn(m[sel][col]) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rat factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

RatMatrix nullspace(const RatMatrix& rows, std::size_t cols) {
  RatMatrix m = rows;
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& rows, const RatVector& rhs, std::size_t cols) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("solve: row/rhs size mismatch");
  RatMatrix aug = rows;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RatVector x(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector Span::reduce(std::span<const Rat> v) const {
  RatVector w(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rat& f = w[pivots_[r]];
    if (sgn(f) == 0) continue;
    Rat factor = f;
    for (std::size_t c = 0; c < dim_; ++c) w[c] -= factor * rows_[r][c];
  }
  return w;
}

bool Span::contains(std::span<const Rat> v) const {
  for (const auto& x : reduce(v)) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool Span::add(std::span<const Rat> v) {
  RatVector w = reduce(v);
  std::size_t piv = dim_;
  for (std::size_t c = 0; c < dim_; ++c) {
    if (sgn(w[c]) != 0) {
      piv = c;
      break;
    }
  }
  if (piv == dim_) return false;
  Rat inv = 1 / w[piv];
  for (auto& x : w) x *= inv;
  // keep existing rows reduced against the new pivot
  for (auto& row : rows_) {
    if (sgn(row[piv]) == 0) continue;
    Rat factor = row[piv];
    for (std::size_t c = 0; c < dim_; ++c) row[c] -= factor * w[c];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

}  // namespace twistperiod::linalg

#pragma once

#include <optional>
#include <span>

#include "twistperiod/rational.hpp"

// Small exact linear algebra over Q used by the geometry layer.
namespace twistperiod::linalg {

int rank(RatMatrix rows);

Rat determinant(RatMatrix square);

/// Basis of {x : rows * x = 0}; `cols` is needed when `rows` is empty.
RatMatrix nullspace(const RatMatrix& rows, std::size_t cols);

/// Some solution of rows * x = rhs, or nullopt when inconsistent.
std::optional<RatVector> solve(const RatMatrix& rows, const RatVector& rhs, std::size_t cols);

Rat dot(std::span<const Rat> a, std::span<const Rat> b);

/// Incrementally maintained row-echelon basis of a subspace of Q^d.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}

  bool contains(std::span<const Rat> v) const;
  /// Adds v; returns false (and leaves the span unchanged) if v was already in it.
  bool add(std::span<const Rat> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  RatVector reduce(std::span<const Rat> v) const;

  std::size_t dim_;
  RatMatrix rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace twistperiod::linalg

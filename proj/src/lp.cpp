#include "twistperiod/lp.hpp"

#include <stdexcept>

namespace twistperiod::lp {

namespace {

class Tableau {
 public:
  Tableau(const RatMatrix& A, const RatVector& b, std::size_t nvars)
      : m_(b.size()), n_(nvars) {
    std::size_t artificials = 0;
    for (const auto& bi : b) artificials += sgn(bi) < 0 ? 1 : 0;
    cols_ = n_ + m_ + artificials;
    rows_.assign(m_, RatVector(cols_ + 1, Rat(0)));
    basis_.assign(m_, 0);
    std::size_t next_art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (A[i].size() != n_) throw std::invalid_argument("lp: row width mismatch");
      const bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip ? Rat(-A[i][j]) : A[i][j];
      rows_[i][n_ + i] = flip ? -1 : 1;
      rows_[i][cols_] = flip ? Rat(-b[i]) : b[i];
      if (flip) {
        rows_[i][next_art] = 1;
        basis_[i] = next_art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
    first_artificial_ = n_ + m_;
  }

  bool has_artificials() const { return cols_ > first_artificial_; }

  // Sets objective coefficients (maximize) and prices out the basis.
  void set_objective(const RatVector& cost) {
    obj_.assign(cols_ + 1, Rat(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = -cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] += cb * rows_[i][j];
    }
  }

  // Runs Bland's-rule simplex; returns false if unbounded.
  bool run() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(obj_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rat ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  const Rat& objective_value() const { return obj_[cols_]; }

  // After phase I: pivot zero-level artificials out of the basis, drop
  // redundant rows, then delete the artificial columns.
  void remove_artificials() {
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == first_artificial_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --m_;
        continue;
      }
      pivot(i, col);
      ++i;
    }
    for (auto& row : rows_) {
      Rat rhs = row[cols_];
      row.resize(first_artificial_ + 1);
      row[first_artificial_] = rhs;
    }
    cols_ = first_artificial_;
  }

  std::size_t columns() const { return cols_; }

  RatVector primal() const {
    RatVector x(n_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(rows_[i][c]) == 0) continue;
      Rat f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    if (!obj_.empty() && sgn(obj_[c]) != 0) {
      Rat f = obj_[c];
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  RatMatrix rows_;
  RatVector obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result maximize(const RatMatrix& A, const RatVector& b, const RatVector& c) {
  if (A.size() != b.size()) throw std::invalid_argument("lp: A/b size mismatch");
  const std::size_t n = c.size();
  Tableau t(A, b, n);
  Result out;
  if (t.has_artificials()) {
    RatVector phase1(t.columns(), Rat(0));
    for (std::size_t j = n + b.size(); j < t.columns(); ++j) phase1[j] = -1;
    t.set_objective(phase1);
    t.run();  // bounded above by zero
    if (sgn(t.objective_value()) < 0) {
      out.status = Status::infeasible;
      return out;
    }
    t.remove_artificials();
  }
  RatVector cost(t.columns(), Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  t.set_objective(cost);
  if (!t.run()) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.objective = t.objective_value();
  out.x = t.primal();
  return out;
}

Result maximize_free(const RatMatrix& A, const RatVector& b, const RatVector& c) {
  const std::size_t n = c.size();
  RatMatrix split(A.size(), RatVector(2 * n));
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != n) throw std::invalid_argument("lp: row width mismatch");
    for (std::size_t j = 0; j < n; ++j) {
      split[i][j] = A[i][j];
      split[i][n + j] = -A[i][j];
    }
  }
  RatVector cc(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    cc[j] = c[j];
    cc[n + j] = -c[j];
  }
  Result r = maximize(split, b, cc);
  if (r.status == Status::optimal) {
    RatVector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = r.x[j] - r.x[n + j];
    r.x = std::move(x);
  }
  return r;
}

}  // namespace twistperiod::lp

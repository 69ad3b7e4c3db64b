#include "twistperiod/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twistperiod::oracle {

namespace {

struct Ineq {
  RatVector a;  // a[0] + a[1] x_1 + ... > 0 (strict) or >= 0
  bool strict = true;
};

bool next_subset(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

bool strictly_feasible(int dim, const RatMatrix& rows, const std::vector<int>& signs) {
  std::vector<Ineq> sys;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    Ineq q;
    for (const auto& c : rows[j]) q.a.push_back(signs[j] * c);
    sys.push_back(std::move(q));
  }
  for (int k = dim; k >= 1; --k) {
    std::vector<Ineq> pos, neg, next;
    for (auto& q : sys) {
      const int s = sgn(q.a[static_cast<std::size_t>(k)]);
      (s > 0 ? pos : s < 0 ? neg : next).push_back(std::move(q));
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        Ineq c;
        const Rat wp = -n.a[static_cast<std::size_t>(k)];
        const Rat wn = p.a[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < p.a.size(); ++i) c.a.push_back(wp * p.a[i] + wn * n.a[i]);
        c.strict = p.strict || n.strict;
        next.push_back(std::move(c));
      }
    }
    sys = std::move(next);
  }
  for (const auto& q : sys) {
    const int s = sgn(q.a[0]);
    if (s < 0 || (s == 0 && q.strict)) return false;
  }
  return true;
}

std::vector<SignVector> brute_force_chambers(int dim, const RatMatrix& rows) {
  const std::size_t N = rows.size();
  std::vector<SignVector> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    std::vector<int> s(N);
    SignVector sv(N);
    for (std::size_t j = 0; j < N; ++j) {
      const bool plus = (mask >> (N - 1 - j)) & 1;
      s[j] = plus ? 1 : -1;
      sv[j] = plus ? Sign::positive : Sign::negative;
    }
    if (strictly_feasible(dim, rows, s)) out.push_back(sv);
  }
  return out;
}

Rat det(RatMatrix M) {
  const std::size_t n = M.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(M[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      d = -d;
    }
    d *= M[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rat f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return d;
}

bool general_position(int dim, const RatMatrix& rows) {
  RatMatrix all = rows;
  RatVector inf(static_cast<std::size_t>(dim + 1), Rat(0));
  inf[0] = 1;
  all.push_back(inf);
  const int n = static_cast<int>(all.size());
  const int k = std::min(n, dim + 1);
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  do {
    RatMatrix sub;
    for (int i : idx) sub.push_back(all[static_cast<std::size_t>(i)]);
    if (k == dim + 1) {
      if (sgn(det(sub)) == 0) return false;
    } else {
      // fewer covectors than coordinates: check a nonzero maximal minor
      bool found = false;
      std::vector<int> cols(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) cols[static_cast<std::size_t>(i)] = i;
      do {
        RatMatrix sq;
        for (const auto& r : sub) {
          RatVector row;
          for (int c : cols) row.push_back(r[static_cast<std::size_t>(c)]);
          sq.push_back(row);
        }
        if (sgn(det(sq)) != 0) found = true;
      } while (!found && next_subset(cols, dim + 1));
      if (!found) return false;
    }
  } while (next_subset(idx, n));
  return true;
}

RatMatrix random_rows(std::mt19937_64& rng, int dim, int count, bool generic, int bound) {
  std::uniform_int_distribution<int> coef(-bound, bound);
  for (;;) {
    RatMatrix rows;
    bool ok = true;
    for (int j = 0; j < count && ok; ++j) {
      RatVector r;
      for (int k = 0; k <= dim; ++k) r.push_back(Rat(coef(rng)));
      bool nonzero = false;
      for (int k = 1; k <= dim; ++k) nonzero = nonzero || sgn(r[static_cast<std::size_t>(k)]) != 0;
      if (!nonzero) ok = false;
      for (const auto& q : rows) {
        // repeated projective covector: proportional rows
        bool prop = true;
        std::optional<Rat> ratio;
        for (int k = 0; k <= dim && prop; ++k) {
          const Rat& a = r[static_cast<std::size_t>(k)];
          const Rat& b = q[static_cast<std::size_t>(k)];
          if (sgn(b) == 0) {
            prop = sgn(a) == 0;
          } else if (!ratio) {
            ratio = a / b;
          } else {
            prop = a == *ratio * b;
          }
        }
        if (prop) ok = false;
      }
      rows.push_back(std::move(r));
    }
    if (ok && (!generic || general_position(dim, rows))) return rows;
  }
}

int arcs_on_circle(const RatMatrix& rows, double radius_sq) {
  std::vector<double> angles;
  const double R = std::sqrt(radius_sq);
  for (const auto& r : rows) {
    const double a0 = r[0].get_d(), a1 = r[1].get_d(), a2 = r[2].get_d();
    const double norm = std::hypot(a1, a2);
    const double dist = -a0 / norm;  // signed distance of the line from the origin along its normal
    if (std::abs(dist) >= R) continue;
    const double base = std::atan2(a2, a1);
    const double half = std::acos(dist / R);
    angles.push_back(std::remainder(base + half, 2 * std::numbers::pi));
    angles.push_back(std::remainder(base - half, 2 * std::numbers::pi));
  }
  std::sort(angles.begin(), angles.end());
  int distinct = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i == 0 || angles[i] - angles[i - 1] > 1e-9) ++distinct;
  }
  if (distinct > 1 && angles.back() - angles.front() > 2 * std::numbers::pi - 1e-9) --distinct;
  return distinct;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace twistperiod::oracle

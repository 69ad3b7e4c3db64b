#include "twistperiod/chambers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "twistperiod/errors.hpp"

namespace twistperiod {

namespace {

struct Partial {
  SignVector sign;
  Point witness;
};

// Splits one partial chamber against hyperplane j (0-based; planes 0..j-1
// already decided).
std::vector<Partial> split(const Arrangement& A, std::size_t j, const Partial& c) {
  std::vector<Partial> out;
  const Rat v = eval_hyperplane(A[j], c.witness);
  std::span<const Hyperplane> planes(A.hyperplanes.data(), j + 1);
  auto try_side = [&](Sign s) {
    SignVector sign = c.sign;
    sign.push_back(s);
    if (auto p = interior_point(A.dim, planes, sign)) out.push_back({std::move(sign), std::move(*p)});
  };
  if (sgn(v) == 0) {
    try_side(Sign::negative);
    try_side(Sign::positive);
    return out;
  }
  const Sign kept = sign_from(v);
  const Sign other = kept == Sign::positive ? Sign::negative : Sign::positive;
  if (kept == Sign::negative) {
    SignVector sign = c.sign;
    sign.push_back(kept);
    out.push_back({std::move(sign), c.witness});
    try_side(other);
  } else {
    try_side(other);
    SignVector sign = c.sign;
    sign.push_back(kept);
    out.push_back({std::move(sign), c.witness});
  }
  return out;
}

template <typename T, typename Fn>
std::vector<T> map_indexed(std::size_t n, Execution exec, Fn&& fn) {
  std::vector<T> out(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

}  // namespace

std::uint64_t chamber_id(const SignVector& s) {
  if (s.size() > 63) throw std::invalid_argument("chamber id: more than 63 hyperplanes");
  std::uint64_t id = 0;
  for (Sign x : s) id = (id << 1) | (x == Sign::positive ? 1u : 0u);
  return id;
}

const Chamber* ChamberCensus::find(const SignVector& s) const {
  const auto id = chamber_id(s);
  auto it = std::lower_bound(chambers.begin(), chambers.end(), id,
                             [](const Chamber& c, std::uint64_t v) { return c.id < v; });
  if (it == chambers.end() || it->id != id || it->sign != s) return nullptr;
  return &*it;
}

ChamberCensus enumerate_chambers(const Arrangement& A, Execution exec) {
  std::vector<Partial> current{{SignVector{}, Point(static_cast<std::size_t>(A.dim), Rat(0))}};
  for (std::size_t j = 0; j < A.size(); ++j) {
    auto pieces = map_indexed<std::vector<Partial>>(current.size(), exec,
                                                    [&](std::size_t i) { return split(A, j, current[i]); });
    std::vector<Partial> next;
    for (auto& group : pieces) {
      for (auto& p : group) next.push_back(std::move(p));
    }
    current = std::move(next);
  }

  ChamberCensus census;
  census.chambers = map_indexed<Chamber>(current.size(), exec, [&](std::size_t i) {
    Chamber c;
    c.sign = current[i].sign;
    auto w = sign_vector_feasible(A, c.sign);
    if (!w) throw ConsistencyError("chamber lost feasibility: " + to_string(c.sign));
    c.witness = std::move(*w);
    c.bounded = recession_cone_trivial(A, c.sign);
    c.id = chamber_id(c.sign);
    return c;
  });
  std::sort(census.chambers.begin(), census.chambers.end(),
            [](const Chamber& a, const Chamber& b) { return a.id < b.id; });
  census.n_total = census.chambers.size();
  census.n_bounded = static_cast<std::size_t>(
      std::count_if(census.chambers.begin(), census.chambers.end(), [](const Chamber& c) { return c.bounded; }));
  census.n_unbounded = census.n_total - census.n_bounded;
  return census;
}

std::vector<Chamber> bounded_chambers(const Arrangement& A) {
  std::vector<Chamber> out;
  for (auto& c : enumerate_chambers(A).chambers) {
    if (c.bounded) out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t schlafli_bounded_count(int N, int n) {
  if (N < 1 || n < 1) throw std::invalid_argument("schlafli_bounded_count: need N >= 1 and n >= 1");
  std::uint64_t m = binomial(N - 1, n - 1);
  for (int i = 1; i <= n; ++i) m += binomial(N, n - i);
  return m;
}

bool unbounded_equals_schlafli_check(const Arrangement& A) {
  if (!is_boolean_through_origin(A, BooleanMode::coned)) {
    throw PreconditionError("general position: coned arrangement is not Boolean");
  }
  const auto census = enumerate_chambers(A);
  return census.n_unbounded == schlafli_bounded_count(static_cast<int>(A.size()), A.dim);
}

std::vector<CriticalPoint> morse_critical_points(const Arrangement& A, const std::vector<double>& eta,
                                                 const NewtonOptions& opts) {
  using Real = long double;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  if (eta.size() != A.size()) throw DimensionError("morse: weight count does not match arrangement");
  for (double w : eta) {
    if (!(w > 0)) throw std::invalid_argument("morse: weights must be positive");
  }
  const int n = A.dim;
  const std::size_t N = A.size();
  std::vector<Vec> normals;
  std::vector<Real> consts;
  for (const auto& h : A.hyperplanes) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a(i) = static_cast<Real>(h.coeffs[static_cast<std::size_t>(i) + 1].get_d());
    normals.push_back(a);
    consts.push_back(static_cast<Real>(h.constant().get_d()));
  }
  auto value = [&](const Vec& p, Vec* l) {
    Vec out(static_cast<Eigen::Index>(N));
    for (std::size_t j = 0; j < N; ++j) out(static_cast<Eigen::Index>(j)) = consts[j] + normals[j].dot(p);
    *l = out;
  };

  auto census = enumerate_chambers(A);
  std::vector<CriticalPoint> out;
  for (const auto& c : census.chambers) {
    if (!c.bounded) continue;
    Vec p(n);
    for (int i = 0; i < n; ++i) p(i) = static_cast<Real>(c.witness[static_cast<std::size_t>(i)].get_d());
    auto inside = [&](const Vec& l) {
      for (std::size_t j = 0; j < N; ++j) {
        if (to_int(c.sign[j]) * l(static_cast<Eigen::Index>(j)) <= 0) return false;
      }
      return true;
    };
    auto F = [&](const Vec& l) {
      Real s = 0;
      for (std::size_t j = 0; j < N; ++j) s += static_cast<Real>(eta[j]) * std::log(std::fabs(l(static_cast<Eigen::Index>(j))));
      return s;
    };
    auto gradient = [&](const Vec& l) {
      Vec g = Vec::Zero(n);
      for (std::size_t j = 0; j < N; ++j) g += static_cast<Real>(eta[j]) / l(static_cast<Eigen::Index>(j)) * normals[j];
      return g;
    };
    Vec l;
    value(p, &l);
    if (!inside(l)) throw ConsistencyError("morse: witness outside its chamber");
    Vec g = gradient(l);
    int it = 0;
    for (; it < opts.max_iterations && static_cast<double>(g.norm()) >= opts.tolerance; ++it) {
      Mat H = Mat::Zero(n, n);
      for (std::size_t j = 0; j < N; ++j) {
        const Real lj = l(static_cast<Eigen::Index>(j));
        H -= static_cast<Real>(eta[j]) / (lj * lj) * normals[j] * normals[j].transpose();
      }
      Vec step = -H.ldlt().solve(g);
      const Real f0 = F(l);
      const Real g0 = g.norm();
      Real t = 1;
      bool accepted = false;
      for (int h = 0; h < opts.max_halvings; ++h, t /= 2) {
        Vec q = p + t * step;
        Vec lq;
        value(q, &lq);
        if (!inside(lq)) continue;
        Vec gq = gradient(lq);
        if (F(lq) < f0 && gq.norm() >= g0) continue;
        p = q;
        l = lq;
        g = gq;
        accepted = true;
        break;
      }
      if (!accepted) break;
    }
    const double gn = static_cast<double>(g.norm());
    if (!(gn < opts.tolerance)) {
      throw NumericError("morse: Newton did not converge in chamber " + to_string(c.sign) +
                         " (|grad| = " + std::to_string(gn) + ")");
    }
    CriticalPoint cp;
    cp.point.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cp.point[static_cast<std::size_t>(i)] = static_cast<double>(p(i));
    cp.chamber_id = c.id;
    cp.gradient_norm = gn;
    cp.iterations = it;
    out.push_back(std::move(cp));
  }
  return out;
}

}  // namespace twistperiod

#include "twistperiod/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "twistperiod/errors.hpp"
#include "twistperiod/linalg.hpp"
#include "twistperiod/lp.hpp"

namespace twistperiod {

namespace {

std::string flat_name(const std::vector<int>& closure, std::size_t infinity) {
  std::string s = "{";
  for (std::size_t i = 0; i < closure.size(); ++i) {
    if (i) s += ",";
    s += static_cast<std::size_t>(closure[i]) == infinity ? std::string("inf")
                                                          : std::to_string(closure[i] + 1);
  }
  return s + "}";
}

// Calls fn(subset) for every k-subset of {0..n-1}; stops early if fn returns false.
template <typename Fn>
bool for_each_subset(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return true;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    if (!fn(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

RatVector projective_vector(const Arrangement& A, std::size_t j) {
  if (j == A.size()) {
    RatVector v(static_cast<std::size_t>(A.dim) + 1, Rat(0));
    v[0] = 1;
    return v;
  }
  return A[j].coeffs;
}

}  // namespace

Arrangement make_arrangement(int dim, const RatMatrix& rows, std::vector<std::string> labels) {
  if (dim < 0) throw std::invalid_argument("arrangement: negative dimension");
  Arrangement A;
  A.dim = dim;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != static_cast<std::size_t>(dim) + 1) {
      throw DimensionError("hyperplane " + std::to_string(j + 1) + ": expected " +
                           std::to_string(dim + 1) + " coefficients");
    }
    Hyperplane h{rows[j], j < labels.size() ? labels[j] : "l" + std::to_string(j + 1)};
    if (std::all_of(h.normal().begin(), h.normal().end(), [](const Rat& x) { return sgn(x) == 0; })) {
      throw std::invalid_argument("hyperplane " + std::to_string(j + 1) + ": zero normal vector");
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (linalg::rank({A[i].coeffs, h.coeffs}) < 2) {
        throw std::invalid_argument("hyperplanes " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " coincide");
      }
    }
    A.hyperplanes.push_back(std::move(h));
  }
  return A;
}

std::string to_string(const SignVector& s) {
  std::string out;
  out.reserve(s.size());
  for (Sign x : s) out += x == Sign::positive ? '+' : (x == Sign::negative ? '-' : '0');
  return out;
}

SignVector parse_sign_vector(std::string_view text) {
  SignVector s;
  for (char c : text) {
    if (c == '+') s.push_back(Sign::positive);
    else if (c == '-') s.push_back(Sign::negative);
    else if (c == '0') s.push_back(Sign::zero);
    else throw std::invalid_argument("bad sign character in '" + std::string(text) + "'");
  }
  return s;
}

Rat eval_affine(std::span<const Rat> coeffs, std::span<const Rat> p) {
  if (coeffs.size() != p.size() + 1) {
    throw DimensionError("point has dimension " + std::to_string(p.size()) + ", expected " +
                         std::to_string(coeffs.size() - 1));
  }
  Rat v = coeffs[0];
  for (std::size_t i = 0; i < p.size(); ++i) v += coeffs[i + 1] * p[i];
  return v;
}

Rat eval_hyperplane(const Hyperplane& h, std::span<const Rat> p) { return eval_affine(h.coeffs, p); }

SignVector sign_vector_at(const Arrangement& A, std::span<const Rat> p) {
  SignVector s;
  s.reserve(A.size());
  for (const auto& h : A.hyperplanes) s.push_back(sign_from(eval_hyperplane(h, p)));
  return s;
}

std::optional<Point> interior_point(int dim, std::span<const Hyperplane> planes, std::span<const Sign> signs) {
  if (planes.size() != signs.size()) throw std::invalid_argument("interior_point: size mismatch");
  const std::size_t n = static_cast<std::size_t>(dim);
  // variables: p_1..p_n, delta
  RatMatrix A;
  RatVector b;
  for (std::size_t j = 0; j < planes.size(); ++j) {
    const int s = to_int(signs[j]);
    if (s == 0) throw std::invalid_argument("interior_point: zero sign");
    RatVector row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = -s * planes[j].coeffs[i + 1];
    row[n] = 1;
    A.push_back(std::move(row));
    b.push_back(s * planes[j].coeffs[0]);
  }
  RatVector cap(n + 1, Rat(0));
  cap[n] = 1;
  A.push_back(cap);
  b.push_back(1);
  cap[n] = -1;
  A.push_back(cap);
  b.push_back(0);
  RatVector c(n + 1, Rat(0));
  c[n] = 1;
  auto res = lp::maximize_free(A, b, c);
  if (res.status != lp::Status::optimal || sgn(res.objective) <= 0) return std::nullopt;
  res.x.resize(n);
  return res.x;
}

std::optional<Point> sign_vector_feasible(const Arrangement& A, const SignVector& s) {
  if (s.size() != A.size()) throw std::invalid_argument("sign vector length does not match arrangement");
  if (std::any_of(s.begin(), s.end(), [](Sign x) { return x == Sign::zero; })) {
    throw std::invalid_argument("sign vector contains a zero");
  }
  return interior_point(A.dim, A.hyperplanes, s);
}

std::optional<Point> recession_direction(const Arrangement& A, const SignVector& s) {
  if (!sign_vector_feasible(A, s)) throw std::invalid_argument("recession cone of an empty sign vector");
  const std::size_t n = static_cast<std::size_t>(A.dim);
  if (n == 0) return std::nullopt;
  RatMatrix G;
  for (std::size_t j = 0; j < A.size(); ++j) {
    RatVector row(A[j].normal().begin(), A[j].normal().end());
    for (auto& x : row) x *= to_int(s[j]);
    G.push_back(std::move(row));
  }
  if (linalg::rank(G) < static_cast<int>(n)) {
    // lineality: any kernel vector works in both directions
    return linalg::nullspace(G, n).front();
  }
  // pointed cone: nontrivial iff some d has G d >= 0 and sum(G d) = 1
  RatMatrix L;
  RatVector b;
  RatVector total(n, Rat(0));
  for (const auto& row : G) {
    RatVector neg(row);
    for (auto& x : neg) x = -x;
    L.push_back(std::move(neg));
    b.push_back(0);
    for (std::size_t i = 0; i < n; ++i) total[i] += row[i];
  }
  L.push_back(total);
  b.push_back(1);
  RatVector negtotal(total);
  for (auto& x : negtotal) x = -x;
  L.push_back(std::move(negtotal));
  b.push_back(-1);
  auto res = lp::maximize_free(L, b, RatVector(n, Rat(0)));
  if (res.status != lp::Status::optimal) return std::nullopt;
  return res.x;
}

bool recession_cone_trivial(const Arrangement& A, const SignVector& s) { return !recession_direction(A, s); }

std::vector<Flat> projective_flats(const Arrangement& A) {
  if (A.dim == 0) return {};
  const std::size_t N = A.size();
  const std::size_t total = N + 1;
  const std::size_t d = static_cast<std::size_t>(A.dim) + 1;
  std::vector<RatVector> vecs;
  for (std::size_t j = 0; j < total; ++j) vecs.push_back(projective_vector(A, j));

  struct Node {
    Flat flat;
    linalg::Span span;
  };
  std::vector<Flat> out;
  std::vector<Node> level;
  std::set<std::vector<int>> seen;

  auto close = [&](const linalg::Span& span) {
    std::vector<int> cl;
    for (std::size_t j = 0; j < total; ++j) {
      if (span.contains(vecs[j])) cl.push_back(static_cast<int>(j));
    }
    return cl;
  };

  for (std::size_t j = 0; j < total; ++j) {
    linalg::Span sp(d);
    sp.add(vecs[j]);
    auto cl = close(sp);
    if (!seen.insert(cl).second) continue;
    Flat f{{static_cast<int>(j)}, 1, cl};
    out.push_back(f);
    level.push_back({f, sp});
  }
  for (int r = 2; r <= A.dim; ++r) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (std::size_t j = 0; j < total; ++j) {
        if (std::binary_search(node.flat.closure.begin(), node.flat.closure.end(), static_cast<int>(j))) continue;
        linalg::Span sp = node.span;
        sp.add(vecs[j]);
        auto cl = close(sp);
        if (!seen.insert(cl).second) continue;
        Flat f{node.flat.members, r, cl};
        f.members.push_back(static_cast<int>(j));
        out.push_back(f);
        next.push_back({f, sp});
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) {
    return std::tie(a.codim, a.closure) < std::tie(b.codim, b.closure);
  });
  return out;
}

std::vector<Flat> affine_flats(const Arrangement& A) {
  const int inf = static_cast<int>(A.size());
  std::vector<Flat> out;
  for (auto& f : projective_flats(A)) {
    if (!std::binary_search(f.closure.begin(), f.closure.end(), inf)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Flat> flats_up_to_codim2(const Arrangement& A) {
  std::vector<Flat> out;
  for (auto& f : affine_flats(A)) {
    if (f.codim <= 2) out.push_back(std::move(f));
  }
  return out;
}

Point flat_point(const Arrangement& A, const Flat& flat) {
  RatMatrix rows;
  RatVector rhs;
  for (int j : flat.members) {
    if (static_cast<std::size_t>(j) >= A.size()) throw std::invalid_argument("flat_point: flat at infinity");
    rows.emplace_back(A[static_cast<std::size_t>(j)].normal().begin(), A[static_cast<std::size_t>(j)].normal().end());
    rhs.push_back(-A[static_cast<std::size_t>(j)].constant());
  }
  auto x = linalg::solve(rows, rhs, static_cast<std::size_t>(A.dim));
  if (!x) throw std::invalid_argument("flat_point: empty flat");
  return *x;
}

bool functional_constant_on_flat(const Arrangement& A, const Flat& flat, std::span<const Rat> f) {
  linalg::Span sp(static_cast<std::size_t>(A.dim));
  for (int j : flat.members) sp.add(A[static_cast<std::size_t>(j)].normal());
  return sp.contains(f.subspan(1));
}

std::vector<Point> vertices(const Arrangement& A) {
  std::vector<Point> out;
  for (const auto& f : affine_flats(A)) {
    if (f.codim == A.dim) out.push_back(flat_point(A, f));
  }
  return out;
}

bool is_boolean_through_origin(const Arrangement& A, BooleanMode mode) {
  std::vector<RatVector> vecs;
  std::size_t dim = 0;
  if (mode == BooleanMode::coned) {
    for (std::size_t j = 0; j <= A.size(); ++j) vecs.push_back(projective_vector(A, j));
    dim = static_cast<std::size_t>(A.dim) + 1;
  } else {
    for (const auto& h : A.hyperplanes) vecs.emplace_back(h.normal().begin(), h.normal().end());
    dim = static_cast<std::size_t>(A.dim);
  }
  const int k = static_cast<int>(std::min(dim, vecs.size()));
  return for_each_subset(static_cast<int>(vecs.size()), k, [&](const std::vector<int>& idx) {
    RatMatrix m;
    for (int i : idx) m.push_back(vecs[static_cast<std::size_t>(i)]);
    return linalg::rank(m) == k;
  });
}

Point Slice::embed(std::span<const Rat> u) const {
  const std::size_t n = functional.size() - 1;
  if (u.size() + 1 != n) throw DimensionError("slice point has wrong dimension");
  const std::size_t k = static_cast<std::size_t>(dropped_coordinate);
  Point t(n);
  Rat rest = level - functional[0];
  for (std::size_t i = 0, ui = 0; i < n; ++i) {
    if (i == k) continue;
    t[i] = u[ui++];
    rest -= functional[i + 1] * t[i];
  }
  t[k] = rest / functional[k + 1];
  return t;
}

namespace {

std::size_t dropped_index(std::span<const Rat> f) {
  std::size_t k = 0;
  Rat best = -1;
  for (std::size_t i = 1; i < f.size(); ++i) {
    Rat a = abs(f[i]);
    if (a > best) {
      best = a;
      k = i - 1;
    }
  }
  if (sgn(best) == 0) throw PreconditionError("slice: constant functional");
  return k;
}

// Induced coefficients of l_j on {f = R} in the remaining coordinates, split
// into the R-independent part and the coefficient of R (constant term only).
struct InducedRow {
  RatVector base;  // [p_j, b_j1, ..., b_j(n-1)]
  Rat r_coeff;     // q_j: constant term is p_j + q_j R
};

InducedRow induced_row(const Hyperplane& h, std::span<const Rat> f, std::size_t k) {
  const std::size_t n = f.size() - 1;
  InducedRow row;
  const Rat ratio = h.coeffs[k + 1] / f[k + 1];
  row.base.push_back(h.coeffs[0] - ratio * f[0]);
  row.r_coeff = ratio;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    row.base.push_back(h.coeffs[i + 1] - ratio * f[i + 1]);
  }
  return row;
}

}  // namespace

Slice slice_arrangement(const Arrangement& A, std::span<const Rat> f, const Rat& R) {
  if (f.size() != static_cast<std::size_t>(A.dim) + 1) throw DimensionError("slice functional has wrong dimension");
  const std::size_t k = dropped_index(f);
  for (const auto& flat : affine_flats(A)) {
    if (!functional_constant_on_flat(A, flat, f)) continue;
    if (eval_affine(f, flat_point(A, flat)) == R) {
      throw PreconditionError("slice: non-transversal at flat " + flat_name(flat.closure, A.size()));
    }
  }
  Slice s;
  s.arrangement.dim = A.dim - 1;
  s.dropped_coordinate = static_cast<int>(k);
  s.functional.assign(f.begin(), f.end());
  s.level = R;
  for (std::size_t j = 0; j < A.size(); ++j) {
    InducedRow row = induced_row(A[j], f, k);
    row.base[0] += row.r_coeff * R;
    const bool parallel = std::all_of(row.base.begin() + 1, row.base.end(), [](const Rat& x) { return sgn(x) == 0; });
    if (parallel) continue;  // empty on the slice (containment was rejected above)
    s.arrangement.hyperplanes.push_back({row.base, A[j].label});
    s.source.push_back(static_cast<int>(j));
  }
  return s;
}

Rat generic_slice_level(const Arrangement& A, std::span<const Rat> f) {
  if (f.size() != static_cast<std::size_t>(A.dim) + 1) throw DimensionError("slice functional has wrong dimension");
  const std::size_t k = dropped_index(f);
  const std::size_t cols = static_cast<std::size_t>(A.dim);  // coned slice dimension
  std::vector<InducedRow> rows;
  for (const auto& h : A.hyperplanes) rows.push_back(induced_row(h, f, k));
  {
    InducedRow inf;
    inf.base.assign(cols, Rat(0));
    inf.base[0] = 1;
    inf.r_coeff = 0;
    rows.push_back(inf);
  }
  Rat bound = 0;
  auto consider_root = [&](const Rat& p, const Rat& q) {
    if (sgn(q) == 0) return;
    Rat root = abs(p / q);
    if (root > bound) bound = root;
  };
  const int nrows = static_cast<int>(rows.size());
  for (int size = 1; size <= static_cast<int>(cols); ++size) {
    for_each_subset(nrows, size, [&](const std::vector<int>& ridx) {
      // column subsets that contain column 0
      for_each_subset(static_cast<int>(cols) - 1, size - 1, [&](const std::vector<int>& cidx) {
        RatMatrix P, Q;
        for (int r : ridx) {
          const auto& row = rows[static_cast<std::size_t>(r)];
          RatVector p{row.base[0]}, q{row.r_coeff};
          for (int c : cidx) {
            p.push_back(row.base[static_cast<std::size_t>(c) + 1]);
            q.push_back(row.base[static_cast<std::size_t>(c) + 1]);
          }
          P.push_back(std::move(p));
          Q.push_back(std::move(q));
        }
        consider_root(linalg::determinant(P), linalg::determinant(Q));
        return true;
      });
      return true;
    });
  }
  for (const auto& flat : affine_flats(A)) {
    if (!functional_constant_on_flat(A, flat, f)) continue;
    Rat v = abs(eval_affine(f, flat_point(A, flat)));
    if (v > bound) bound = v;
  }
  return bound + 1;
}

}  // namespace twistperiod

#include "twistperiod/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twistperiod/errors.hpp"
#include "twistperiod/linalg.hpp"

namespace twistperiod {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Rat abs_rat(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

Rat norm1(std::span<const Rat> v) {
  Rat s = 0;
  for (const auto& x : v) s += abs_rat(x);
  return s;
}

void require_rank_one(const ExponentData& E, const Arrangement& A) {
  if (E.rank() != 1) throw PreconditionError("regularization: rank is not one");
  if (E.size() != A.size() + 1) throw DimensionError("exponent count does not match arrangement");
  if (A.dim != 1 && A.dim != 2) {
    throw PreconditionError("regularization: unsupported dimension n=" + std::to_string(A.dim));
  }
}

// True for a wall that needs loops, false for a plain wall (exponent in Z_{>=1}).
bool is_twisted(const ExponentData& E, int j) {
  const ComplexRat& a = E.alpha(static_cast<std::size_t>(j));
  if (!a.is_integer()) return true;
  if (sgn(a.re) <= 0) {
    throw PreconditionError("regularization: exponent at j=" + std::to_string(j + 1) +
                            " is a non-positive integer");
  }
  return false;
}

std::vector<double> base_args(const SignVector& s) {
  std::vector<double> out;
  for (Sign x : s) out.push_back(x == Sign::negative ? std::numbers::pi : 0.0);
  return out;
}

Vec2 to_vec(std::span<const Rat> p) {
  Vec2 v{0, 0};
  for (std::size_t i = 0; i < p.size() && i < 2; ++i) v[i] = p[i].get_d();
  return v;
}

ChainTerm make_term(int sign, std::vector<int> walls, const ExponentData& E, Cell cell, std::string label) {
  ChainTerm t;
  t.sign = sign;
  std::complex<double> c(sign, 0);
  for (int j : walls) c /= monodromy_factor(E.alpha(static_cast<std::size_t>(j)));
  t.walls = std::move(walls);
  t.coefficient = c;
  t.cell = std::move(cell);
  t.label = std::move(label);
  return t;
}

// ---------------------------------------------------------------------------
// 1-D

struct Interval {
  int left = -1, right = -1;  // bounding walls
  Rat left_pt, right_pt;
  std::optional<Rat> cut;     // truncation point on the open side
  int open_side = 0;          // -1: open to the left, +1: open to the right
};

Rat root_of(const Hyperplane& h) { return -h.constant() / h.coeffs[1]; }

Interval interval_of(const Chamber& C, const Arrangement& A) {
  const Rat w = C.witness.at(0);
  Interval iv;
  for (std::size_t j = 0; j < A.size(); ++j) {
    const Rat r = root_of(A[j]);
    if (r < w && (iv.left < 0 || r > iv.left_pt)) {
      iv.left = static_cast<int>(j);
      iv.left_pt = r;
    }
    if (r > w && (iv.right < 0 || r < iv.right_pt)) {
      iv.right = static_cast<int>(j);
      iv.right_pt = r;
    }
  }
  return iv;
}

Rat epsilon_1d(const Interval& iv, const Arrangement& A, const SignVector& s) {
  std::optional<Rat> best;
  auto consider = [&](const Rat& v) {
    if (!best || v < *best) best = v;
  };
  for (int i : {iv.left, iv.right}) {
    if (i < 0) continue;
    const Rat V = i == iv.left ? iv.left_pt : iv.right_pt;
    const Rat e = 1 / abs_rat(A[static_cast<std::size_t>(i)].coeffs[1]);
    for (std::size_t k = 0; k < A.size(); ++k) {
      if (static_cast<int>(k) == i) continue;
      const Rat lk = to_int(s[k]) * eval_hyperplane(A[k], std::vector<Rat>{V});
      consider(lk / (1 + abs_rat(A[k].coeffs[1]) * e));
    }
    if (iv.cut) consider(abs_rat(*iv.cut - V) / (1 + e));
  }
  if (!best) return Rat(1, 10);
  if (sgn(*best) <= 0) throw ConsistencyError("regularization: non-positive safety distance");
  return *best / 10;
}

TwistedChain regularize_1d(const Chamber& C, const Interval& iv, const Arrangement& A, const ExponentData& E,
                           const RegularizationOptions& opts, const Rat& eps) {
  TwistedChain chain;
  chain.dim = 1;
  chain.epsilon = eps;
  chain.chamber_sign = C.sign;
  chain.truncated = iv.open_side != 0;
  const auto args = base_args(C.sign);
  const double epsd = eps.get_d();

  Rat lo = iv.left_pt, hi = iv.right_pt;
  auto wall_setup = [&](int j, int inward, Rat& end) -> std::optional<Cell> {
    if (j < 0) return std::nullopt;
    const Rat e = inward / abs_rat(A[static_cast<std::size_t>(j)].coeffs[1]);
    if (!is_twisted(E, j)) {
      chain.plain_walls.push_back(j);
      return std::nullopt;
    }
    chain.twisted_walls.push_back(j);
    end += eps * e;
    Cell loop;
    loop.kind = CellKind::loop;
    loop.dim = 1;
    loop.a = {root_of(A[static_cast<std::size_t>(j)]).get_d(), 0};
    loop.u = {e.get_d(), 0};
    loop.radius = epsd;
    loop.wall = j;
    loop.base_args = args;
    return loop;
  };
  auto left_loop = wall_setup(iv.left, +1, lo);
  auto right_loop = wall_setup(iv.right, -1, hi);
  if (iv.open_side < 0) lo = *iv.cut;
  if (iv.open_side > 0) hi = *iv.cut;
  if (!(lo < hi)) throw PreconditionError("truncation: level does not clear the chamber's wall");

  Cell seg;
  seg.kind = CellKind::segment;
  seg.dim = 1;
  seg.a = {lo.get_d(), 0};
  seg.b = {hi.get_d(), 0};
  seg.base_args = args;
  chain.terms.push_back(make_term(1, {}, E, seg, "sigma"));

  auto add_loop = [&](std::optional<Cell> loop, int sign) {
    if (!loop) return;
    const int j = loop->wall;
    const double psi = opts.loop_start_angle;
    loop->angle0 = psi;
    chain.terms.push_back(make_term(sign, {j}, E, *loop, "loop@" + std::to_string(j + 1)));
    if (psi != 0) {
      Cell arc = *loop;
      arc.kind = CellKind::arc;
      arc.angle0 = 0;
      arc.angle1 = psi;
      chain.terms.push_back(make_term(-sign, {}, E, arc, "arc@" + std::to_string(j + 1)));
    }
  };
  add_loop(left_loop, +1);
  add_loop(right_loop, -1);

  if (iv.open_side != 0) {
    Cell ray;
    ray.kind = CellKind::ray;
    ray.dim = 1;
    ray.a = {iv.cut->get_d(), 0};
    ray.b = {static_cast<double>(iv.open_side), 0};
    ray.base_args = args;
    // the chamber is oriented by increasing t; a leftward ray runs backwards
    chain.terms.push_back(make_term(iv.open_side, {}, E, ray, "ray"));
  }
  return chain;
}

Rat cut_point_1d(const Interval& iv, const PhaseSpec& phase, const Rat& R) {
  if (phase.kind == PhaseKind::linear) {
    const Rat& c1 = phase.f.at(1);
    if (sgn(c1) * iv.open_side <= 0) {
      throw PreconditionError("truncation: chamber is unbounded where Re f does not grow");
    }
    return (R - phase.f.at(0)) / c1;
  }
  if (phase.kind == PhaseKind::quadratic) {
    const Rat root(std::sqrt(R.get_d()));
    return iv.open_side > 0 ? root : Rat(-root);
  }
  throw PreconditionError("truncation: phase kind none has no truncation");
}

// ---------------------------------------------------------------------------
// 2-D

struct Corner {
  Point V;
  int in = -1, out = -1;  // walls meeting at V, in counterclockwise order
  Point e_in, e_out;      // e_in moves off `in` along `out`, and vice versa
};

std::vector<Corner> polygon_of(const RatMatrix& rows, const SignVector& s) {
  const std::size_t M = rows.size();
  struct Raw {
    Point V;
    int i, k;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t k = i + 1; k < M; ++k) {
      RatMatrix N{{rows[i][1], rows[i][2]}, {rows[k][1], rows[k][2]}};
      if (sgn(linalg::determinant(N)) == 0) continue;
      auto V = linalg::solve(N, {-rows[i][0], -rows[k][0]}, 2);
      bool inside = true;
      int through = 0;
      for (std::size_t j = 0; j < M && inside; ++j) {
        const Rat l = eval_affine(rows[j], *V);
        if (sgn(l) == 0) {
          ++through;
        } else if (sgn(l) != to_int(s[j])) {
          inside = false;
        }
      }
      if (!inside) continue;
      if (through > 2) {
        throw PreconditionError("general position: three hyperplanes meet at a corner of chamber " +
                                to_string(s));
      }
      raw.push_back({*V, static_cast<int>(i), static_cast<int>(k)});
    }
  }
  if (raw.size() < 3) throw PreconditionError("regularization: chamber " + to_string(s) + " is not a polygon");
  Point c{Rat(0), Rat(0)};
  for (const auto& r : raw) {
    c[0] += r.V[0];
    c[1] += r.V[1];
  }
  c[0] /= static_cast<long>(raw.size());
  c[1] /= static_cast<long>(raw.size());
  auto half = [&](const Point& p) {
    const Rat x = p[0] - c[0], y = p[1] - c[1];
    return (sgn(y) > 0 || (sgn(y) == 0 && sgn(x) > 0)) ? 0 : 1;
  };
  std::sort(raw.begin(), raw.end(), [&](const Raw& a, const Raw& b) {
    const int ha = half(a.V), hb = half(b.V);
    if (ha != hb) return ha < hb;
    const Rat cross = (a.V[0] - c[0]) * (b.V[1] - c[1]) - (a.V[1] - c[1]) * (b.V[0] - c[0]);
    return sgn(cross) > 0;
  });
  const std::size_t K = raw.size();
  std::vector<int> edge(K);
  for (std::size_t i = 0; i < K; ++i) {
    const Raw& p = raw[i];
    const Raw& q = raw[(i + 1) % K];
    std::vector<int> common;
    for (int x : {p.i, p.k}) {
      if (x == q.i || x == q.k) common.push_back(x);
    }
    if (common.size() != 1) throw ConsistencyError("regularization: polygon edge without a unique wall");
    edge[i] = common[0];
  }
  std::vector<Corner> out;
  for (std::size_t i = 0; i < K; ++i) {
    Corner cn;
    cn.V = raw[i].V;
    cn.out = edge[i];
    cn.in = edge[(i + K - 1) % K];
    const auto& a_in = rows[static_cast<std::size_t>(cn.in)];
    const auto& a_out = rows[static_cast<std::size_t>(cn.out)];
    RatMatrix N{{a_in[1], a_in[2]}, {a_out[1], a_out[2]}};
    cn.e_in = *linalg::solve(N, {Rat(to_int(s[static_cast<std::size_t>(cn.in)])), Rat(0)}, 2);
    cn.e_out = *linalg::solve(N, {Rat(0), Rat(to_int(s[static_cast<std::size_t>(cn.out)]))}, 2);
    out.push_back(std::move(cn));
  }
  return out;
}

Rat epsilon_2d(const std::vector<Corner>& corners, const RatMatrix& rows, const SignVector& s) {
  std::optional<Rat> best;
  for (const auto& cn : corners) {
    const Rat spread = norm1(cn.e_in) + norm1(cn.e_out);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Rat l = eval_affine(rows[k], cn.V);
      if (sgn(l) == 0) continue;
      const Rat v = to_int(s[k]) * l / (1 + norm1(std::span<const Rat>(rows[k]).subspan(1)) * spread);
      if (!best || v < *best) best = v;
    }
  }
  if (!best) return Rat(1, 10);
  return *best / 10;
}

TwistedChain regularize_2d(const Chamber& C, const RatMatrix& rows, const SignVector& s, const Arrangement& A,
                           const ExponentData& E, const RegularizationOptions& opts, bool truncated) {
  if (opts.loop_start_angle != 0) {
    throw PreconditionError("regularization: loop start angle is only supported for n=1");
  }
  const auto corners = polygon_of(rows, s);
  Rat eps = opts.epsilon ? *opts.epsilon : epsilon_2d(corners, rows, s);
  eps *= opts.epsilon_scale;
  const double epsd = eps.get_d();
  const int N = static_cast<int>(A.size());

  TwistedChain chain;
  chain.dim = 2;
  chain.epsilon = eps;
  chain.chamber_sign = C.sign;
  chain.truncated = truncated;
  const auto args = base_args(C.sign);

  std::vector<bool> twisted(rows.size(), false);
  for (const auto& cn : corners) {
    for (int w : {cn.in, cn.out}) {
      if (w >= N || twisted[static_cast<std::size_t>(w)]) continue;
      if (is_twisted(E, w)) {
        twisted[static_cast<std::size_t>(w)] = true;
      }
    }
  }
  for (const auto& cn : corners) {
    const int w = cn.out;
    if (w >= N) continue;
    auto& list = twisted[static_cast<std::size_t>(w)] ? chain.twisted_walls : chain.plain_walls;
    if (std::find(list.begin(), list.end(), w) == list.end()) list.push_back(w);
  }
  auto eps_of = [&](int w) { return twisted[static_cast<std::size_t>(w)] ? eps : Rat(0); };
  auto offset = [](const Point& V, const Rat& a, const Point& ea, const Rat& b, const Point& eb) {
    return Point{V[0] + a * ea[0] + b * eb[0], V[1] + a * ea[1] + b * eb[1]};
  };

  Cell sigma;
  sigma.kind = CellKind::polygon;
  sigma.dim = 2;
  sigma.base_args = args;
  for (const auto& cn : corners) sigma.polygon.push_back(to_vec(offset(cn.V, eps_of(cn.in), cn.e_in, eps_of(cn.out), cn.e_out)));
  chain.terms.push_back(make_term(1, {}, E, sigma, "sigma"));

  const std::size_t K = corners.size();
  for (std::size_t i = 0; i < K; ++i) {
    const Corner& p = corners[i];
    const Corner& q = corners[(i + 1) % K];
    const int w = p.out;
    if (!twisted[static_cast<std::size_t>(w)]) continue;
    Cell edge;
    edge.kind = CellKind::edge_loop;
    edge.dim = 2;
    edge.a = to_vec(offset(p.V, eps_of(p.in), p.e_in, Rat(0), p.e_out));
    edge.b = to_vec(offset(q.V, Rat(0), q.e_in, eps_of(q.out), q.e_out));
    edge.u = to_vec(p.e_out);
    edge.v = to_vec(q.e_in);
    edge.radius = epsd;
    edge.wall = w;
    edge.base_args = args;
    chain.terms.push_back(make_term(-1, {w}, E, edge, "edge@" + std::to_string(w + 1)));
  }
  for (const auto& cn : corners) {
    if (!twisted[static_cast<std::size_t>(cn.in)] || !twisted[static_cast<std::size_t>(cn.out)]) continue;
    Cell torus;
    torus.kind = CellKind::torus;
    torus.dim = 2;
    torus.a = to_vec(cn.V);
    torus.u = to_vec(cn.e_in);
    torus.v = to_vec(cn.e_out);
    torus.radius = epsd;
    torus.wall = cn.in;
    torus.wall2 = cn.out;
    torus.base_args = args;
    chain.terms.push_back(make_term(1, {cn.in, cn.out}, E, torus,
                                    "torus@" + std::to_string(cn.in + 1) + "," + std::to_string(cn.out + 1)));
  }
  return chain;
}

// Rows of the arrangement plus the plain walls that cut an unbounded chamber.
RatMatrix truncation_rows(const Chamber& C, const Arrangement& A, const PhaseSpec& phase) {
  RatMatrix rows;
  for (const auto& h : A.hyperplanes) rows.push_back(h.coeffs);
  const auto verts = vertices(A);
  const Rat R = phase.level ? *phase.level : default_level(A, phase);
  if (phase.kind == PhaseKind::linear) {
    Rat top = R;
    for (const auto& v : verts) top = std::max(top, Rat(eval_affine(phase.f, v)));
    const Rat cut(floor_rat(top) + 45);
    rows.push_back({cut - phase.f[0], -phase.f[1], -phase.f[2]});
    Arrangement aug;
    aug.dim = 2;
    for (const auto& r : rows) aug.hyperplanes.push_back({r, ""});
    SignVector s = C.sign;
    s.push_back(Sign::positive);
    if (!recession_cone_trivial(aug, s)) {
      throw PreconditionError("truncation: chamber is unbounded where Re f does not grow");
    }
    return rows;
  }
  if (phase.kind == PhaseKind::quadratic) {
    Rat top = R;
    for (const auto& v : verts) top = std::max(top, Rat(v[0] * v[0] + v[1] * v[1]));
    Rat T(static_cast<long>(std::ceil(std::sqrt(top.get_d()))) + 7);
    for (;;) {
      bool clean = true;
      for (const auto& h : A.hyperplanes) {
        for (int sx : {-1, 1}) {
          for (int sy : {-1, 1}) {
            if (sgn(eval_hyperplane(h, Point{sx * T, sy * T})) == 0) clean = false;
          }
        }
      }
      if (clean) break;
      T += 1;
    }
    rows.push_back({T, Rat(-1), Rat(0)});
    rows.push_back({T, Rat(1), Rat(0)});
    rows.push_back({T, Rat(0), Rat(-1)});
    rows.push_back({T, Rat(0), Rat(1)});
    return rows;
  }
  throw PreconditionError("truncation: phase kind none has no truncation");
}

}  // namespace

std::string to_string(CellKind k) {
  switch (k) {
    case CellKind::segment: return "segment";
    case CellKind::loop: return "loop";
    case CellKind::arc: return "arc";
    case CellKind::ray: return "ray";
    case CellKind::polygon: return "polygon";
    case CellKind::edge_loop: return "edge_loop";
    case CellKind::torus: return "torus";
  }
  return "segment";
}

Rat default_epsilon(const Chamber& C, const Arrangement& A, const PhaseSpec& phase) {
  if (A.dim == 1) {
    Interval iv = interval_of(C, A);
    if (!C.bounded) {
      iv.open_side = iv.right < 0 ? 1 : -1;
      const Rat R = phase.level ? *phase.level : default_level(A, phase);
      iv.cut = cut_point_1d(iv, phase, R);
    }
    return epsilon_1d(iv, A, C.sign);
  }
  if (A.dim == 2) {
    RatMatrix rows;
    SignVector s = C.sign;
    if (C.bounded) {
      for (const auto& h : A.hyperplanes) rows.push_back(h.coeffs);
    } else {
      rows = truncation_rows(C, A, phase);
      s.resize(rows.size(), Sign::positive);
    }
    return epsilon_2d(polygon_of(rows, s), rows, s);
  }
  throw PreconditionError("regularization: unsupported dimension n=" + std::to_string(A.dim));
}

TwistedChain regularize_bounded(const Chamber& C, const Arrangement& A, const ExponentData& E,
                                const RegularizationOptions& opts) {
  require_rank_one(E, A);
  if (!C.bounded) throw std::invalid_argument("regularize_bounded: chamber " + to_string(C.sign) + " is unbounded");
  if (!is_boolean_through_origin(A, BooleanMode::coned)) {
    throw PreconditionError("general position: coned arrangement is not Boolean");
  }
  if (A.dim == 1) {
    const Interval iv = interval_of(C, A);
    Rat eps = opts.epsilon ? *opts.epsilon : epsilon_1d(iv, A, C.sign);
    eps *= opts.epsilon_scale;
    return regularize_1d(C, iv, A, E, opts, eps);
  }
  RatMatrix rows;
  for (const auto& h : A.hyperplanes) rows.push_back(h.coeffs);
  return regularize_2d(C, rows, C.sign, A, E, opts, false);
}

TwistedChain regularize_truncated(const Chamber& C, const PhaseSpec& phase, const Arrangement& A,
                                  const ExponentData& E, const RegularizationOptions& opts) {
  require_rank_one(E, A);
  if (C.bounded) throw std::invalid_argument("regularize_truncated: chamber " + to_string(C.sign) + " is bounded");
  if (phase.kind == PhaseKind::none) throw PreconditionError("truncation: phase kind none has no truncation");
  if (!is_boolean_through_origin(A, BooleanMode::coned)) {
    throw PreconditionError("general position: coned arrangement is not Boolean");
  }
  if (A.dim == 1) {
    Interval iv = interval_of(C, A);
    iv.open_side = iv.right < 0 ? 1 : -1;
    const Rat R = phase.level ? *phase.level : default_level(A, phase);
    iv.cut = cut_point_1d(iv, phase, R);
    Rat eps = opts.epsilon ? *opts.epsilon : epsilon_1d(iv, A, C.sign);
    eps *= opts.epsilon_scale;
    return regularize_1d(C, iv, A, E, opts, eps);
  }
  RatMatrix rows = truncation_rows(C, A, phase);
  SignVector s = C.sign;
  s.resize(rows.size(), Sign::positive);
  return regularize_2d(C, rows, s, A, E, opts, true);
}

TwistedChain regularize(const Chamber& C, const PhaseSpec& phase, const Arrangement& A, const ExponentData& E,
                        const RegularizationOptions& opts) {
  return C.bounded ? regularize_bounded(C, A, E, opts) : regularize_truncated(C, phase, A, E, opts);
}

}  // namespace twistperiod

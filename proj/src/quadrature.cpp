#include "twistperiod/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>

#include "twistperiod/errors.hpp"

namespace twistperiod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::size_t kMaxPlanes = 64;
constexpr int kMaxTransportDepth = 40;

cplx ipow(cplx z, int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}



CPoint circle_point(const Vec2& c, double eps, double theta, const Vec2& u) {
  const cplx e = std::polar(eps, theta);
  return {c[0] + e * u[0], c[1] + e * u[1]};
}

// Neumaier compensated sum of complex values.
class CompensatedSum {
 public:
  void add(cplx x) {
    add(re_, cre_, x.real());
    add(im_, cim_, x.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

struct LinearValues {
  std::array<cplx, kMaxPlanes> l;
};

LinearValues linear_values(const TwistedIntegrand& I, const CPoint& p) {
  LinearValues v;
  for (std::size_t j = 0; j < I.size(); ++j) v.l[j] = I.linear(j, p);
  return v;
}

void transport_step(const TwistedIntegrand& I, const PathFn& path, double ta, const LinearValues& la, double tb,
                    const LinearValues& lb, std::vector<double>& args, int depth) {
  bool small = true;
  for (std::size_t j = 0; j < I.size() && small; ++j) {
    if (!I.tracked(j)) continue;
    if (std::abs(std::arg(lb.l[j] / la.l[j])) >= kPi / 2) small = false;
  }
  if (small) {
    for (std::size_t j = 0; j < I.size(); ++j) {
      if (I.tracked(j)) args[j] += std::arg(lb.l[j] / la.l[j]);
    }
    return;
  }
  if (depth >= kMaxTransportDepth) throw NumericError("argument transport step underflow");
  const double tm = 0.5 * (ta + tb);
  const LinearValues lm = linear_values(I, path(tm));
  transport_step(I, path, ta, la, tm, lm, args, depth + 1);
  transport_step(I, path, tm, lm, tb, lb, args, depth + 1);
}

// Walks the path through the given parameters in order, starting from t0.
// Returns the arguments at every parameter.
std::vector<std::vector<double>> transport_through(const TwistedIntegrand& I, const PathFn& path, double t0,
                                                   std::vector<double> args, const std::vector<double>& ts) {
  std::vector<std::vector<double>> out;
  out.reserve(ts.size());
  double t = t0;
  LinearValues lt = linear_values(I, path(t));
  for (double next : ts) {
    const LinearValues ln = linear_values(I, path(next));
    transport_step(I, path, t, lt, next, ln, args, 0);
    out.push_back(args);
    t = next;
    lt = ln;
  }
  return out;
}

std::vector<double> trapezoid_angles(double start, int m) {
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) t[static_cast<std::size_t>(n)] = start + kTwoPi * n / m;
  return t;
}

cplx integrate_segment(const TwistedIntegrand& I, const Cell& c, int m) {
  const Rule& r = gauss_legendre(m);
  CompensatedSum s;
  if (c.dim == 1) {
    const double len = c.b[0] - c.a[0];
    for (std::size_t k = 0; k < r.x.size(); ++k) {
      const CPoint p{cplx(c.a[0] + r.x[k] * len), 0.0};
      s.add(r.w[k] * len * I.value(p, c.base_args));
    }
    return s.value();
  }
  throw std::invalid_argument("integrate_cell: segment cells are one-dimensional");
}

cplx integrate_loop(const TwistedIntegrand& I, const Cell& c, int m) {
  const auto& w = twisted_trapezoid(I.alpha(static_cast<std::size_t>(c.wall)), m);
  const auto angles = trapezoid_angles(c.angle0, m);
  PathFn path = [&](double th) { return circle_point(c.a, c.radius, th, c.u); };
  std::vector<double> ts{c.angle0};
  ts.insert(ts.end(), angles.begin() + 1, angles.end());
  const auto args = transport_through(I, path, 0.0, c.base_args, ts);
  CompensatedSum s;
  for (int n = 0; n < m; ++n) {
    const double th = angles[static_cast<std::size_t>(n)];
    const cplx jac = cplx(0, c.radius) * std::polar(1.0, th) * c.u[0];
    s.add(w[static_cast<std::size_t>(n)] * I.value(path(th), args[static_cast<std::size_t>(n)]) * jac);
  }
  return s.value();
}

cplx integrate_arc(const TwistedIntegrand& I, const Cell& c, int m) {
  const Rule& r = gauss_legendre(m);
  const double span = c.angle1 - c.angle0;
  PathFn path = [&](double th) { return circle_point(c.a, c.radius, th, c.u); };
  std::vector<double> ts;
  for (double x : r.x) ts.push_back(c.angle0 + x * span);
  const auto start = transport(I, path, 0.0, c.angle0, c.base_args);
  const auto args = transport_through(I, path, c.angle0, start, ts);
  CompensatedSum s;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const cplx jac = cplx(0, c.radius) * std::polar(1.0, ts[k]) * c.u[0];
    s.add(r.w[k] * span * I.value(path(ts[k]), args[k]) * jac);
  }
  return s.value();
}

cplx integrate_polygon(const TwistedIntegrand& I, const Cell& c, int m) {
  const Rule& r = gauss_legendre(m);
  Vec2 g{0, 0};
  for (const auto& v : c.polygon) {
    g[0] += v[0] / static_cast<double>(c.polygon.size());
    g[1] += v[1] / static_cast<double>(c.polygon.size());
  }
  CompensatedSum s;
  const std::size_t K = c.polygon.size();
  for (std::size_t k = 0; k < K; ++k) {
    const Vec2& p1 = c.polygon[k];
    const Vec2& p2 = c.polygon[(k + 1) % K];
    const double e1x = p1[0] - g[0], e1y = p1[1] - g[1];
    const double e2x = p2[0] - p1[0], e2y = p2[1] - p1[1];
    const double det = e1x * e2y - e1y * e2x;
    for (std::size_t a = 0; a < r.x.size(); ++a) {
      const double u = r.x[a];
      for (std::size_t b = 0; b < r.x.size(); ++b) {
        const double v = r.x[b];
        const CPoint p{cplx(g[0] + u * e1x + u * v * e2x), cplx(g[1] + u * e1y + u * v * e2y)};
        s.add(r.w[a] * r.w[b] * u * det * I.value(p, c.base_args));
      }
    }
  }
  return s.value();
}

cplx integrate_edge_loop(const TwistedIntegrand& I, const Cell& c, int m) {
  const Rule& r = gauss_legendre(m);
  const auto& w = twisted_trapezoid(I.alpha(static_cast<std::size_t>(c.wall)), m);
  const auto angles = trapezoid_angles(0.0, m);
  const Vec2 db{c.b[0] - c.a[0], c.b[1] - c.a[1]};
  const Vec2 dw{c.v[0] - c.u[0], c.v[1] - c.u[1]};
  CompensatedSum s;
  for (std::size_t k = 0; k < r.x.size(); ++k) {
    const double sp = r.x[k];
    const Vec2 base{c.a[0] + sp * db[0], c.a[1] + sp * db[1]};
    const Vec2 dir{c.u[0] + sp * dw[0], c.u[1] + sp * dw[1]};
    PathFn path = [&](double th) { return circle_point(base, c.radius, th, dir); };
    std::vector<double> ts(angles.begin() + 1, angles.end());
    auto args = transport_through(I, path, 0.0, c.base_args, ts);
    args.insert(args.begin(), c.base_args);
    for (int n = 0; n < m; ++n) {
      const double th = angles[static_cast<std::size_t>(n)];
      const cplx e = std::polar(c.radius, th);
      const cplx pt0 = cplx(0, 1) * e * dir[0], pt1 = cplx(0, 1) * e * dir[1];
      const cplx ps0 = db[0] + e * dw[0], ps1 = db[1] + e * dw[1];
      const cplx jac = pt0 * ps1 - pt1 * ps0;
      s.add(r.w[k] * w[static_cast<std::size_t>(n)] * I.value(path(th), args[static_cast<std::size_t>(n)]) * jac);
    }
  }
  return s.value();
}

cplx integrate_torus(const TwistedIntegrand& I, const Cell& c, int m) {
  const auto& w1 = twisted_trapezoid(I.alpha(static_cast<std::size_t>(c.wall)), m);
  const auto& w2 = twisted_trapezoid(I.alpha(static_cast<std::size_t>(c.wall2)), m);
  const auto angles = trapezoid_angles(0.0, m);
  const double det_uv = c.u[0] * c.v[1] - c.u[1] * c.v[0];
  auto point = [&](double th, double ph) {
    const cplx a = std::polar(c.radius, th), b = std::polar(c.radius, ph);
    return CPoint{c.a[0] + a * c.u[0] + b * c.v[0], c.a[1] + a * c.u[1] + b * c.v[1]};
  };
  PathFn first = [&](double th) { return point(th, 0.0); };
  std::vector<double> ts(angles.begin() + 1, angles.end());
  auto row_args = transport_through(I, first, 0.0, c.base_args, ts);
  row_args.insert(row_args.begin(), c.base_args);
  CompensatedSum s;
  for (int a = 0; a < m; ++a) {
    const double th = angles[static_cast<std::size_t>(a)];
    PathFn second = [&](double ph) { return point(th, ph); };
    auto args = transport_through(I, second, 0.0, row_args[static_cast<std::size_t>(a)], ts);
    args.insert(args.begin(), row_args[static_cast<std::size_t>(a)]);
    for (int b = 0; b < m; ++b) {
      const double ph = angles[static_cast<std::size_t>(b)];
      const cplx jac = -c.radius * c.radius * std::polar(1.0, th + ph) * det_uv;
      s.add(w1[static_cast<std::size_t>(a)] * w2[static_cast<std::size_t>(b)] *
            I.value(point(th, ph), args[static_cast<std::size_t>(b)]) * jac);
    }
  }
  return s.value();
}

int initial_nodes(int dim) { return dim == 1 ? 16 : 8; }
int max_nodes(int dim) { return dim == 1 ? 1 << 13 : 1024; }

}  // namespace

TwistedIntegrand::TwistedIntegrand(const Arrangement& A, const ExponentData& E, PhaseSpec phase,
                                   std::vector<FormTerm> form)
    : dim_(A.dim), phase_(std::move(phase)), form_(std::move(form)) {
  if (A.dim < 1 || A.dim > 2) throw PreconditionError("quadrature: unsupported dimension n=" + std::to_string(A.dim));
  if (E.rank() != 1) throw PreconditionError("quadrature: rank is not one");
  if (E.size() != A.size() + 1 || A.size() > kMaxPlanes) throw DimensionError("quadrature: exponent count mismatch");
  for (std::size_t j = 0; j < A.size(); ++j) {
    std::array<double, 3> row{0, 0, 0};
    for (std::size_t k = 0; k < A[j].coeffs.size(); ++k) row[k] = A[j].coeffs[k].get_d();
    rows_.push_back(row);
    const ComplexRat& a = E.alpha(j);
    alpha_.push_back(a.to_complex());
    tracked_.push_back(!a.is_integer());
    shift_.push_back(a.is_integer() ? static_cast<int>(a.re.get_d()) : 0);
  }
  if (phase_.kind == PhaseKind::linear) {
    if (phase_.f.size() != static_cast<std::size_t>(dim_ + 1)) throw DimensionError("quadrature: phase width mismatch");
    for (std::size_t k = 0; k < phase_.f.size(); ++k) f_[k] = phase_.f[k].get_d();
  }
  for (const auto& t : form_) {
    if (t.powers.size() != A.size()) throw DimensionError("quadrature: form powers must have one entry per hyperplane");
  }
}

cplx TwistedIntegrand::linear(std::size_t j, const CPoint& p) const {
  const auto& r = rows_[j];
  cplx v = r[0] + r[1] * p[0];
  if (dim_ == 2) v += r[2] * p[1];
  return v;
}

cplx TwistedIntegrand::phase_value(const CPoint& p) const {
  switch (phase_.kind) {
    case PhaseKind::none: return 0.0;
    case PhaseKind::linear: return f_[0] + f_[1] * p[0] + (dim_ == 2 ? f_[2] * p[1] : cplx(0.0));
    case PhaseKind::quadratic: return p[0] * p[0] + (dim_ == 2 ? p[1] * p[1] : cplx(0.0));
  }
  return 0.0;
}

cplx TwistedIntegrand::value(const CPoint& p, const std::vector<double>& args) const {
  std::array<cplx, kMaxPlanes> l;
  cplx expo = -phase_value(p);
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    l[j] = linear(j, p);
    if (tracked_[j]) expo += alpha_[j] * cplx(std::log(std::abs(l[j])), args[j]);
  }
  cplx poly = 0.0;
  for (const auto& t : form_) {
    cplx term = t.coeff;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const int e = t.powers[j] + shift_[j];
      if (e != 0) term *= ipow(l[j], e);
    }
    poly += term;
  }
  if (poly == 0.0) return 0.0;
  return std::exp(expo) * poly;
}

void TwistedIntegrand::require_regular_on(int j) const {
  for (const auto& t : form_) {
    if (t.powers[static_cast<std::size_t>(j)] + shift_[static_cast<std::size_t>(j)] < 0) {
      throw PreconditionError("regularization: form has a pole on plain wall j=" + std::to_string(j + 1));
    }
  }
}

const Rule& gauss_legendre(int m) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Rule r;
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = 0, w = 0;
    gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &x, &w, t);
    r.x.push_back(x);
    r.w.push_back(w);
  }
  gsl_integration_glfixed_table_free(t);
  return cache.emplace(m, std::move(r)).first->second;
}

const std::vector<cplx>& twisted_trapezoid(cplx a, int m) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int>, std::vector<cplx>> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_tuple(a.real(), a.imag(), m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const cplx d = std::exp(cplx(0, kTwoPi) * a) - 1.0;
  std::vector<cplx> W;
  for (int k = -m / 2; k < m / 2; ++k) W.push_back(d / (cplx(0, 1) * (a + static_cast<double>(k))));
  std::vector<cplx> w(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    const double u = kTwoPi * n / m;
    cplx s = 0.0;
    for (int k = -m / 2; k < m / 2; ++k) s += W[static_cast<std::size_t>(k + m / 2)] * std::polar(1.0, -k * u);
    w[static_cast<std::size_t>(n)] = s / static_cast<double>(m) * std::exp(cplx(0, -u) * a);
  }
  return cache.emplace(key, std::move(w)).first->second;
}

std::vector<double> transport(const TwistedIntegrand& I, const PathFn& path, double t0, double t1,
                              std::vector<double> args) {
  if (t0 == t1) return args;
  const LinearValues l0 = linear_values(I, path(t0));
  const LinearValues l1 = linear_values(I, path(t1));
  transport_step(I, path, t0, l0, t1, l1, args, 0);
  return args;
}

cplx loop_monodromy(const TwistedIntegrand& I, const Cell& loop, int steps) {
  if (loop.kind != CellKind::loop) throw std::invalid_argument("loop_monodromy: cell is not a loop");
  PathFn path = [&](double th) { return circle_point(loop.a, loop.radius, th, loop.u); };
  const auto start = transport(I, path, 0.0, loop.angle0, loop.base_args);
  std::vector<double> ts;
  for (int k = 1; k <= steps; ++k) ts.push_back(loop.angle0 + kTwoPi * k / steps);
  const auto args = transport_through(I, path, loop.angle0, start, ts);
  const CPoint p = path(loop.angle0);
  return I.value(p, args.back()) / I.value(p, start);
}

cplx integrate_cell(const TwistedIntegrand& I, const Cell& cell, int m) {
  if (m < 2) throw std::invalid_argument("integrate_cell: need at least two nodes");
  switch (cell.kind) {
    case CellKind::segment: return integrate_segment(I, cell, m);
    case CellKind::loop: return integrate_loop(I, cell, m);
    case CellKind::arc: return integrate_arc(I, cell, m);
    case CellKind::ray: return integrate_unbounded_tail(I, cell.a[0], cell.b[0], cell.base_args);
    case CellKind::polygon: return integrate_polygon(I, cell, m);
    case CellKind::edge_loop: return integrate_edge_loop(I, cell, m);
    case CellKind::torus: return integrate_torus(I, cell, m);
  }
  return 0.0;
}

PeriodReport integrate_chain(const TwistedIntegrand& I, const TwistedChain& chain, double rel_tol, Execution exec) {
  for (int j : chain.plain_walls) I.require_regular_on(j);
  const std::size_t K = chain.terms.size();
  const int cap = max_nodes(chain.dim);
  std::vector<int> m(K, initial_nodes(chain.dim));
  std::vector<cplx> prev(K), cur(K);
  std::vector<double> delta(K, 0.0);
  std::vector<bool> active(K, true);
  std::vector<double> tail_err(K, 0.0);
  std::size_t nodes = 0;

  auto evaluate = [&](const std::vector<std::size_t>& todo, std::vector<cplx>& out, const std::vector<int>& mm) {
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(todo.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::int64_t i = 0; i < count; ++i) {
      const std::size_t k = todo[static_cast<std::size_t>(i)];
      try {
        const Cell& c = chain.terms[k].cell;
        if (c.kind == CellKind::ray) {
          out[k] = integrate_unbounded_tail(I, c.a[0], c.b[0], c.base_args, &tail_err[k]);
        } else {
          out[k] = integrate_cell(I, c, mm[k]);
        }
      } catch (...) {
#pragma omp critical(twistperiod_chain_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  };
  auto node_count = [&](std::size_t k, int mm) -> std::size_t {
    const auto n = static_cast<std::size_t>(mm);
    switch (chain.terms[k].cell.kind) {
      case CellKind::polygon: return n * n * chain.terms[k].cell.polygon.size();
      case CellKind::edge_loop:
      case CellKind::torus: return n * n;
      default: return n;
    }
  };

  std::vector<std::size_t> all(K);
  for (std::size_t k = 0; k < K; ++k) all[k] = k;
  evaluate(all, prev, m);
  for (std::size_t k = 0; k < K; ++k) nodes += node_count(k, m[k]);

  for (;;) {
    std::vector<std::size_t> todo;
    std::vector<int> m2 = m;
    for (std::size_t k = 0; k < K; ++k) {
      if (active[k]) {
        todo.push_back(k);
        m2[k] = 2 * m[k];
      }
    }
    cur = prev;
    evaluate(todo, cur, m2);
    for (std::size_t k : todo) {
      delta[k] = std::abs(chain.terms[k].coefficient * (cur[k] - prev[k])) + std::abs(chain.terms[k].coefficient) * tail_err[k];
      nodes += node_count(k, m2[k]);
      m[k] = m2[k];
    }
    prev = cur;
    CompensatedSum total;
    for (std::size_t k = 0; k < K; ++k) total.add(chain.terms[k].coefficient * cur[k]);
    double err = 0;
    for (double d : delta) err += d;
    const double scale = std::abs(total.value());
    if (err <= rel_tol * scale || err == 0) break;
    bool progress = false;
    for (std::size_t k = 0; k < K; ++k) {
      active[k] = chain.terms[k].cell.kind != CellKind::ray && delta[k] > rel_tol * scale / (2.0 * static_cast<double>(K)) &&
                  2 * m[k] <= cap;
      progress = progress || active[k];
    }
    if (!progress) {
      std::string detail;
      for (std::size_t k = 0; k < K; ++k) {
        detail += " " + chain.terms[k].label + ":" + std::to_string(delta[k]);
      }
      throw NumericError("quadrature: no convergence at maximum nodes; cell deltas" + detail);
    }
  }

  PeriodReport rep;
  CompensatedSum total;
  for (std::size_t k = 0; k < K; ++k) {
    total.add(chain.terms[k].coefficient * cur[k]);
    rep.cells.push_back({chain.terms[k].label, to_string(chain.terms[k].cell.kind), chain.terms[k].coefficient, cur[k],
                         delta[k], m[k]});
    rep.abs_error_estimate += delta[k];
  }
  rep.value = total.value();
  rep.cells_evaluated = K;
  rep.nodes_used = nodes;
  return rep;
}

cplx integrate_unbounded_tail(const TwistedIntegrand& I, double start, double dir, std::vector<double> args,
                              double* abs_error) {
  if (I.dim() != 1) throw PreconditionError("tail: rays are supported for n=1");
  if (dir == 0) throw std::invalid_argument("tail: zero direction");
  dir = dir > 0 ? 1.0 : -1.0;
  const PhaseSpec& ph = I.phase();
  double L0 = 1;
  if (ph.kind == PhaseKind::linear) {
    const double rate = ph.f.at(1).get_d() * dir;
    if (rate <= 0) throw PreconditionError("tail: Re f does not grow along the ray");
    L0 = 1 / rate;
  } else if (ph.kind == PhaseKind::quadratic) {
    if (start * dir < 0) throw PreconditionError("tail: Re f does not grow along the ray");
    L0 = 1 / (2 * std::abs(start) + 1);
  } else {
    throw PreconditionError("tail: phase kind none gives no decay");
  }
  bool on_wall = false;
  std::vector<double> a(I.size());
  for (std::size_t j = 0; j < I.size(); ++j) {
    const CPoint p0{cplx(start), 0.0};
    const double l = I.linear(j, p0).real();
    const double slope = (I.linear(j, {cplx(start + dir), 0.0}) - I.linear(j, p0)).real();
    const double scale = std::abs(I.linear(j, {cplx(0.0), 0.0}).real()) + std::abs(slope) * std::abs(start) + 1e-300;
    if (std::abs(l) <= 1e-14 * scale) {
      on_wall = true;
      if (I.tracked(j) && I.alpha(j).real() <= 0) {
        throw PreconditionError("tail: non-integrable singularity at the start of the ray");
      }
      a[j] = slope > 0 ? 0.0 : kPi;
    } else {
      if (l * slope < 0) throw PreconditionError("tail: ray crosses hyperplane j=" + std::to_string(j + 1));
      a[j] = l > 0 ? 0.0 : kPi;
    }
  }
  if (args.empty()) args = a;

  const Rule& r32 = gauss_legendre(32);
  const Rule& r64 = gauss_legendre(64);
  auto panel = [&](double s0, double s1, double& err) {
    auto q = [&](const Rule& r) {
      CompensatedSum s;
      for (std::size_t k = 0; k < r.x.size(); ++k) {
        const double sp = s0 + r.x[k] * (s1 - s0);
        s.add(r.w[k] * (s1 - s0) * I.value({cplx(start + dir * sp), 0.0}, args));
      }
      return s.value();
    };
    const cplx fine = q(r64);
    err += std::abs(fine - q(r32));
    return fine;
  };

  CompensatedSum sum;
  double err = 0;
  double s = 0;
  if (on_wall) {
    const double q = 0.15;
    double hi = L0;
    while (hi > 1e-200) {
      sum.add(panel(q * hi, hi, err));
      hi *= q;
    }
    s = L0;
  }
  double last = INFINITY;
  int quiet = 0;
  for (int k = 0;; ++k) {
    if (k > 1000000) throw NumericError("tail: no decay detected after 10^6 panels");
    const cplx v = panel(s, s + L0, err);
    sum.add(v);
    s += L0;
    const double mag = std::abs(v);
    if (mag <= 1e-17 * std::abs(sum.value()) && mag <= last) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    if (mag == 0 && std::abs(sum.value()) == 0 && k > 64) break;
    last = mag;
  }
  if (abs_error) *abs_error = err;
  return dir * sum.value();
}

}  // namespace twistperiod

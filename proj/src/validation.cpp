#include "twistperiod/validation.hpp"

#include <cmath>
#include <numbers>

#include "twistperiod/errors.hpp"

namespace twistperiod {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool nonpositive_integer(cplx c) {
  return c.imag() == 0 && c.real() <= 0 && c.real() == std::floor(c.real());
}

template <class Term>
cplx sum_series(Term next_ratio, const char* name) {
  cplx term = 1.0, sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= next_ratio(k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) || term == 0.0) return sum;
  }
  throw NumericError(std::string(name) + ": series did not converge");
}

Arrangement euler_arrangement(const Rat& x) {
  RatMatrix rows{{Rat(0), Rat(1)}, {Rat(1), Rat(-1)}};
  if (sgn(x) != 0) rows.push_back({Rat(1), Rat(-x)});
  return make_arrangement(1, rows);
}

const Chamber& chamber_at(const ChamberCensus& census, const Arrangement& A, const Rat& t) {
  const Chamber* c = census.find(sign_vector_at(A, std::vector<Rat>{t}));
  if (!c) throw ConsistencyError("validation: no chamber at the requested point");
  return *c;
}

double norm2(cplx a, cplx b) { return std::sqrt(std::norm(a) + std::norm(b)); }

}  // namespace

cplx lanczos_gamma(cplx z) {
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx beta_function(cplx a, cplx b) { return lanczos_gamma(a) * lanczos_gamma(b) / lanczos_gamma(a + b); }

cplx gauss_2f1(cplx a, cplx b, cplx c, cplx x) {
  if (std::abs(x) >= 0.9) throw PreconditionError("gauss_2f1: |x| must be below 0.9");
  if (nonpositive_integer(c)) throw PreconditionError("gauss_2f1: c is a non-positive integer");
  return sum_series([&](int k) { return (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * x; },
                    "gauss_2f1");
}

cplx kummer_1f1(cplx a, cplx c, cplx z) {
  if (nonpositive_integer(c)) throw PreconditionError("kummer_1f1: c is a non-positive integer");
  return sum_series([&](int k) { return (a + double(k)) / ((c + double(k)) * double(k + 1)) * z; }, "kummer_1f1");
}

PeriodReport euler_period(const HgParams& p, const std::vector<int>& powers, double tol, Execution exec) {
  if (p.x >= 1) throw PreconditionError("euler: 1 - x t must not vanish on [0, 1]");
  const Arrangement A = euler_arrangement(p.x);
  std::vector<ComplexRat> alphas{p.alpha, p.gamma - p.alpha};
  std::vector<int> pw(powers.begin(), powers.begin() + 2);
  if (A.size() == 3) {
    alphas.push_back(-p.beta);
    pw.push_back(powers.at(2));
  }
  const auto E = ExponentData::scalar(alphas);
  const auto census = enumerate_chambers(A, exec);
  const Chamber& C = chamber_at(census, A, Rat(1, 2));
  const TwistedChain chain = regularize_bounded(C, A, E);
  const TwistedIntegrand I(A, E, {}, {{1.0, pw}});
  return integrate_chain(I, chain, tol, exec);
}

PeriodReport kummer_period(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x,
                           const std::vector<int>& powers, bool unbounded, double tol, Execution exec) {
  const Arrangement A = euler_arrangement(Rat(0));
  const auto E = ExponentData::scalar({alpha, gamma - alpha});
  const PhaseSpec phase{PhaseKind::linear, {Rat(0), x}, std::nullopt};
  const auto census = enumerate_chambers(A, exec);
  const Chamber& C = chamber_at(census, A, unbounded ? Rat(2) : Rat(1, 2));
  const TwistedChain chain = regularize(C, phase, A, E);
  const TwistedIntegrand I(A, E, phase, {{1.0, {powers.at(0), powers.at(1)}}});
  return integrate_chain(I, chain, tol, exec);
}

Residual verify_euler_integral(const HgParams& p, double tol) {
  Residual r;
  r.period = euler_period(p, kOmegaOne, tol);
  r.value = r.period.value;
  const cplx a = p.alpha.to_complex(), b = p.beta.to_complex(), c = p.gamma.to_complex();
  r.oracle = beta_function(a, c - a) * gauss_2f1(a, b, c, p.x.get_d());
  r.residual = std::abs(r.value - r.oracle) / std::abs(r.oracle);
  return r;
}

KummerReport verify_kummer_integral(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x, double tol) {
  KummerReport rep;
  Residual& r = rep.bounded;
  r.period = kummer_period(alpha, gamma, x, kOmegaOne, false, tol);
  r.value = r.period.value;
  const cplx a = alpha.to_complex(), c = gamma.to_complex();
  r.oracle = beta_function(a, c - a) * kummer_1f1(a, c, -x.get_d());
  r.residual = std::abs(r.value - r.oracle) / std::abs(r.oracle);
  rep.period_matrix[0][0] = r.value;
  rep.period_matrix[0][1] = kummer_period(alpha, gamma, x, kOmegaT, false, tol).value;
  rep.period_matrix[1][0] = kummer_period(alpha, gamma, x, kOmegaOne, true, tol).value;
  rep.period_matrix[1][1] = kummer_period(alpha, gamma, x, kOmegaT, true, tol).value;
  const auto& P = rep.period_matrix;
  rep.determinant = P[0][0] * P[1][1] - P[0][1] * P[1][0];
  rep.independent = std::abs(rep.determinant) > 1e-10;
  return rep;
}

double ode_residual(OdeSystem system, const HgParams& p, const Rat& x0, const Rat& h, double tol) {
  if (sgn(x0) == 0 || (system == OdeSystem::gauss && x0 == 1)) {
    throw PreconditionError("ode_residual: x0 is a singular point");
  }
  auto Z = [&](const Rat& x) -> std::array<cplx, 2> {
    if (system == OdeSystem::gauss) {
      HgParams q = p;
      q.x = x;
      return {euler_period(q, kOmegaOne, tol).value, euler_period(q, kOmegaT, tol).value};
    }
    const bool unb = system == OdeSystem::kummer_unbounded;
    return {kummer_period(p.alpha, p.gamma, x, kOmegaOne, unb, tol).value,
            kummer_period(p.alpha, p.gamma, x, kOmegaT, unb, tol).value};
  };
  const auto zm2 = Z(x0 - 2 * h), zm1 = Z(x0 - h), z0 = Z(x0), zp1 = Z(x0 + h), zp2 = Z(x0 + 2 * h);
  const double hd = h.get_d();
  std::array<cplx, 2> dz;
  for (int i = 0; i < 2; ++i) dz[i] = (-zp2[i] + 8.0 * zp1[i] - 8.0 * zm1[i] + zm2[i]) / (12 * hd);
  const cplx a = p.alpha.to_complex(), b = p.beta.to_complex(), c = p.gamma.to_complex();
  const double x = x0.get_d();
  std::array<std::array<cplx, 2>, 2> M;
  if (system == OdeSystem::gauss) {
    M = {{{(c - a - b) / (x - 1), (b - c) / (x - 1)}, {(c - a) / x, -c / x}}};
  } else {
    M = {{{-1.0, 1.0}, {(c - a) / x, -c / x}}};
  }
  const cplx m0 = M[0][0] * z0[0] + M[0][1] * z0[1];
  const cplx m1 = M[1][0] * z0[0] + M[1][1] * z0[1];
  return norm2(dz[0] - m0, dz[1] - m1) / norm2(m0, m1);
}

ConfluenceReport confluence_check(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x,
                                  const std::vector<Rat>& eps_seq, double tol) {
  ConfluenceReport rep;
  rep.eps = eps_seq;
  rep.kummer_side = kummer_period(alpha, gamma, x, kOmegaOne, false, tol).value;
  for (const Rat& e : eps_seq) {
    if (sgn(e) <= 0) throw std::invalid_argument("confluence_check: eps must be positive");
    HgParams p{alpha, ComplexRat(1 / e), gamma, Rat(-e * x)};
    const cplx g = euler_period(p, kOmegaOne, tol).value;
    rep.gauss_side.push_back(g);
    rep.gaps.push_back(std::abs(g - rep.kummer_side));
  }
  rep.strictly_decreasing = !rep.gaps.empty();
  for (std::size_t i = 1; i < rep.gaps.size(); ++i) {
    if (!(rep.gaps[i] < rep.gaps[i - 1])) rep.strictly_decreasing = false;
  }
  return rep;
}

}  // namespace twistperiod

#include "common.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <numbers>

#include "twistperiod/errors.hpp"
#include "twistperiod/quadrature.hpp"
#include "twistperiod/regularization.hpp"

using namespace twistperiod;

namespace {

// int over the regularized (0, 1) of t^{a-1} (1-t)^{b-1} dt
cplx beta_period(const Rat& a, const Rat& b, Execution exec = Execution::parallel) {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({a, b});
  const Chamber C = bounded_chambers(A).at(0);
  const TwistedIntegrand I(A, E, {}, {{1.0, {-1, -1}}});
  return integrate_chain(I, regularize_bounded(C, A, E), 1e-12, exec).value;
}

// Dirichlet integral over the standard triangle, t1^{a-1} t2^{b-1} (1-t1-t2)^{c-1}
double dirichlet(double a, double b, double c) {
  return std::tgamma(a) * std::tgamma(b) * std::tgamma(c) / std::tgamma(a + b + c);
}

}  // namespace

TEST_CASE("Gauss-Legendre rule on [0, 1]") {
  const Rule& r = gauss_legendre(8);
  double s = 0, m = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    s += r.w[i];
    m += r.w[i] * std::pow(r.x[i], 15);
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m == doctest::Approx(1.0 / 16).epsilon(1e-14));
}

TEST_CASE("twisted trapezoid weights integrate e^{iau} cos(ku) exactly") {
  const double a = 1.0 / 3;
  const auto& w = twisted_trapezoid(a, 16);
  for (int k = 0; k < 8; ++k) {
    cplx sum = 0;
    for (int n = 0; n < 16; ++n) {
      const double u = 2 * std::numbers::pi * n / 16;
      sum += w[static_cast<std::size_t>(n)] * std::exp(cplx(0, a * u)) * std::cos(k * u);
    }
    // closed form of int_0^{2 pi} e^{iau} cos(ku) du
    auto prim = [&](double kk) { return (std::exp(cplx(0, 2 * std::numbers::pi * (a + kk))) - 1.0) / cplx(0, a + kk); };
    const cplx exact = 0.5 * (prim(k) + prim(-k));
    CHECK(std::abs(sum - exact) < 1e-13);
  }
}

TEST_CASE("regularized Beta integrals") {
  struct Case {
    Rat a, b;
  };
  for (const Case& c : {Case{q(1, 2), q(1, 2)}, Case{q(-1, 2), q(1, 3)}, Case{q(-3, 2), q(-4, 3)}, Case{q(1, 2), q(1)},
                        Case{q(5, 4), q(2)}}) {
    const double a = c.a.get_d(), b = c.b.get_d();
    const double exact = boost::math::tgamma(a) * boost::math::tgamma(b) / boost::math::tgamma(a + b);
    const cplx v = beta_period(c.a, c.b);
    CHECK(std::abs(v - exact) < 1e-10 * std::abs(exact));
    CHECK(std::abs(v.imag()) < 1e-10 * std::abs(exact));
  }
  // convergent case agrees with the ordinary Beta function
  CHECK(beta_period(q(3, 2), q(5, 2)).real() == doctest::Approx(boost::math::beta(1.5, 2.5)).epsilon(1e-10));
}

TEST_CASE("chain structure") {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({q(1, 2), q(1, 3)});
  const TwistedChain ch = regularize_bounded(bounded_chambers(A).at(0), A, E);
  CHECK(ch.terms.size() == 3);
  CHECK(ch.twisted_walls.size() == 2);
  int loops = 0;
  for (const auto& t : ch.terms) {
    if (t.cell.kind != CellKind::loop) continue;
    ++loops;
    if (t.cell.wall == 0) CHECK(std::abs(t.coefficient - cplx(-0.5, 0)) < 1e-15);
  }
  CHECK(loops == 2);

  const Arrangement T = triangle();
  const ExponentData ET = alphas({q(1, 2), q(1, 3), q(1, 5)});
  const TwistedChain tri = regularize_bounded(bounded_chambers(T).at(0), T, ET);
  CHECK(tri.terms.size() == 7);
}

TEST_CASE("Dirichlet integral on the triangle") {
  const Arrangement A = triangle();
  for (auto [a, b, c] : {std::tuple{q(1, 2), q(1, 3), q(1, 4)}, std::tuple{q(-1, 2), q(2, 3), q(3, 4)}, std::tuple{q(1, 2), q(1), q(1, 3)}}) {
    const ExponentData E = alphas({a, b, c});
    const TwistedIntegrand I(A, E, {}, {{1.0, {-1, -1, -1}}});
    const PeriodReport r = integrate_chain(I, regularize_bounded(bounded_chambers(A).at(0), A, E), 1e-12);
    const double exact = dirichlet(a.get_d(), b.get_d(), c.get_d());
    CHECK(std::abs(r.value - exact) < 1e-9 * std::abs(exact));
  }
}

TEST_CASE("zero form integrates to zero") {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({q(1, 2), q(1, 3)});
  const TwistedIntegrand I(A, E, {}, {{0.0, {-1, -1}}});
  CHECK(std::abs(integrate_chain(I, regularize_bounded(bounded_chambers(A).at(0), A, E)).value) == 0.0);
}

TEST_CASE("serial reference matches the parallel kernel") {
  const cplx s = beta_period(q(-1, 2), q(1, 3), Execution::serial);
  const cplx p = beta_period(q(-1, 2), q(1, 3), Execution::parallel);
  CHECK(s == p);
}

TEST_CASE("rays with exponential decay") {
  const Arrangement A = make_arrangement(1, {{q(0), q(1)}});
  const PhaseSpec phase{PhaseKind::linear, RatVector{q(0), q(1)}, {}};
  SUBCASE("plain exponential") {
    const TwistedIntegrand I(A, alphas({q(1, 2)}), phase, {{1.0, {0}}});
    // t^{1/2} e^{-t} from 1 on: Gamma(3/2, 1)
    const cplx v = integrate_unbounded_tail(I, 1.0, 1.0);
    CHECK(std::abs(v - boost::math::tgamma(1.5, 1.0)) < 1e-12);
  }
  SUBCASE("Gamma(1/2) from the wall") {
    const TwistedIntegrand I(A, alphas({q(1, 2)}), phase, {{1.0, {-1}}});
    const cplx v = integrate_unbounded_tail(I, 0.0, 1.0);
    CHECK(std::abs(v - std::sqrt(std::numbers::pi)) < 1e-12);
  }
  SUBCASE("growing direction is rejected") {
    const TwistedIntegrand I(A, alphas({q(1, 2)}), phase, {{1.0, {0}}});
    CHECK_THROWS_AS(integrate_unbounded_tail(I, 1.0, -1.0), PreconditionError);
  }
}

TEST_CASE("loop monodromy") {
  const Arrangement A = unit_interval();
  for (const Rat& a : {q(1, 2), q(1, 3), q(1, 4), q(-2, 7)}) {
    const ExponentData E = alphas({a, q(1, 5)});
    const TwistedIntegrand I(A, E, {}, {{1.0, {0, 0}}});
    for (const auto& t : regularize_bounded(bounded_chambers(A).at(0), A, E).terms) {
      if (t.cell.kind != CellKind::loop) continue;
      const double alpha = t.cell.wall == 0 ? a.get_d() : 0.2;
      CHECK(std::abs(loop_monodromy(I, t.cell) - std::exp(cplx(0, 2 * std::numbers::pi * alpha))) < 1e-12);
    }
  }
}

TEST_CASE("epsilon and start angle leave periods unchanged") {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({q(-1, 2), q(1, 3)});
  const Chamber C = bounded_chambers(A).at(0);
  const TwistedIntegrand I(A, E, {}, {{1.0, {-1, -1}}});
  const cplx base = integrate_chain(I, regularize_bounded(C, A, E), 1e-12).value;
  RegularizationOptions o;
  o.epsilon = q(1, 100);
  CHECK(std::abs(integrate_chain(I, regularize_bounded(C, A, E, o), 1e-12).value - base) < 1e-10);
  o.loop_start_angle = 2.0;
  CHECK(std::abs(integrate_chain(I, regularize_bounded(C, A, E, o), 1e-12).value - base) < 1e-10);
}

TEST_CASE("default epsilon stays inside the chamber") {
  const Rat e = default_epsilon(bounded_chambers(unit_interval()).at(0), unit_interval());
  CHECK(e > 0);
  CHECK(e < q(1, 2));
}

TEST_CASE("pole on a plain wall") {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({q(1, 2), q(1)});
  const TwistedIntegrand I(A, E, {}, {{1.0, {-1, -2}}});
  CHECK_THROWS_AS(integrate_chain(I, regularize_bounded(bounded_chambers(A).at(0), A, E)), PreconditionError);
}

TEST_CASE("truncated chamber along the Kummer ray") {
  const Arrangement A = unit_interval();
  const ExponentData E = alphas({q(1, 2), q(3, 2)});
  const TwistedIntegrand I(A, E, {PhaseKind::linear, RatVector{q(0), q(1)}, q(10)}, {{1.0, {-1, -1}}});
  const ChamberCensus census = enumerate_chambers(A);
  const Chamber* C = census.find(sign_vector_at(A, pt({q(2)})));
  REQUIRE(C);
  const PhaseSpec p10{PhaseKind::linear, RatVector{q(0), q(1)}, q(10)};
  const PhaseSpec p40{PhaseKind::linear, RatVector{q(0), q(1)}, q(40)};
  const cplx v10 = integrate_chain(I, regularize_truncated(*C, p10, A, E), 1e-12).value;
  const cplx v40 = integrate_chain(I, regularize_truncated(*C, p40, A, E), 1e-12).value;
  CHECK(std::abs(v10 - v40) < 1e-11);
  // convergent exponents: modulus of int_1^inf t^{-1/2} (t-1)^{1/2} e^{-t} dt
  boost::math::quadrature::exp_sinh<double> integrator;
  const double direct = integrator.integrate([](double s) {
    const double t = 1 + s;
    return std::sqrt(s / t) * std::exp(-t);
  });
  CHECK(std::abs(v10) == doctest::Approx(direct).epsilon(1e-10));
}

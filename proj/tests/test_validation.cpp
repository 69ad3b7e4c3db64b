#include "common.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <cmath>
#include <numbers>

#include "twistperiod/errors.hpp"
#include "twistperiod/validation.hpp"

using namespace twistperiod;

TEST_CASE("Lanczos gamma against the standard library") {
  for (double x : {0.25, 0.5, 1.0, 2.5, 7.0, 20.5, -0.5, -2.25}) {
    CHECK(lanczos_gamma(x).real() == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  }
  CHECK(std::abs(lanczos_gamma(0.5) - std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(beta_function(0.5, 1.0).real() == doctest::Approx(boost::math::beta(0.5, 1.0)).epsilon(1e-13));
}

TEST_CASE("2F1 series") {
  CHECK(gauss_2f1(0.5, 1.0 / 3, 1.5, 0.0) == cplx(1.0));
  CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5).real() == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  const double ref = boost::math::hypergeometric_pFq({0.5, 1.0 / 3}, {1.5}, 0.25);
  CHECK(gauss_2f1(0.5, 1.0 / 3, 1.5, 0.25).real() == doctest::Approx(ref).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 0.95), PreconditionError);
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, -2.0, 0.1), PreconditionError);
}

TEST_CASE("1F1 series") {
  CHECK(kummer_1f1(0.5, 1.5, 0.0) == cplx(1.0));
  CHECK(kummer_1f1(1.0, 2.0, 1.0).real() == doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
  CHECK(kummer_1f1(0.5, 1.5, -1.0).real() ==
        doctest::Approx(boost::math::hypergeometric_1F1(0.5, 1.5, -1.0)).epsilon(1e-14));
  // c 1F1(a; c; z) - c 1F1(a-1; c; z) - z 1F1(a; c+1; z) = 0
  const cplx a = 0.3, c = 1.7, z = 0.8;
  const cplx rel = c * kummer_1f1(a, c, z) - c * kummer_1f1(a - 1.0, c, z) - z * kummer_1f1(a, c + 1.0, z);
  CHECK(std::abs(rel) < 1e-12);
}

TEST_CASE("Euler integral representation of 2F1") {
  CHECK(verify_euler_integral({q(1, 2), q(1, 3), q(3, 2), q(1, 4)}).residual < 1e-8);
  CHECK(verify_euler_integral({q(1, 2), q(0), q(3, 2), q(1, 4)}).residual < 1e-10);
  const Residual neg = verify_euler_integral({q(-1, 2), q(1, 3), q(3, 2), q(1, 4)});
  CHECK(neg.residual < 1e-8);
  // independent oracle: Boost Beta continued by the Gamma function, Boost 2F1 series
  const double oracle = std::tgamma(-0.5) * std::tgamma(2.0) / std::tgamma(1.5) *
                        boost::math::hypergeometric_pFq({-0.5, 1.0 / 3}, {1.5}, 0.25);
  CHECK(std::abs(neg.value - oracle) < 1e-9 * std::abs(oracle));
}

TEST_CASE("Kummer periods") {
  const KummerReport k = verify_kummer_integral(q(1, 2), q(3, 2), q(1));
  CHECK(k.bounded.residual < 1e-8);
  CHECK(std::abs(k.determinant) > 1e-10);
  CHECK(k.independent);
  const double oracle = boost::math::beta(0.5, 1.0) * boost::math::hypergeometric_1F1(0.5, 1.5, -1.0);
  CHECK(std::abs(k.bounded.value - oracle) < 1e-10);
  // x -> 0 limit of the bounded cycle is the Beta integral
  const PeriodReport small = kummer_period(q(1, 2), q(3, 2), q(1, 1000000), {-1, -1}, false);
  CHECK(small.value.real() / boost::math::beta(0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("differential equations") {
  const HgParams p{q(1, 2), q(1, 3), q(3, 2), q(1, 4)};
  CHECK(ode_residual(OdeSystem::gauss, p, q(1, 4), q(1, 1000)) < 1e-6);
  CHECK(ode_residual(OdeSystem::kummer, p, q(1), q(1, 1000)) < 1e-6);
  CHECK(ode_residual(OdeSystem::kummer_unbounded, p, q(1), q(1, 1000)) < 1e-6);
  CHECK_THROWS_AS(ode_residual(OdeSystem::gauss, p, q(1), q(1, 1000)), PreconditionError);
}

TEST_CASE("confluence") {
  // pointwise limit of (1 + eps t)^{-1/eps}
  const double eps = 1.0 / 256;
  CHECK(std::abs(std::pow(1 + eps, -1 / eps) - std::exp(-1.0)) / std::exp(-1.0) < 3e-3);
  const ConfluenceReport r = confluence_check(q(1, 2), q(3, 2), q(1), {q(1, 64), q(1, 256)});
  REQUIRE(r.gaps.size() == 2);
  CHECK(r.gaps[1] < r.gaps[0]);
  CHECK(r.strictly_decreasing);
}

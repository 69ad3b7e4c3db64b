#include "common.hpp"

#include <numbers>

#include "twistperiod/errors.hpp"

using namespace twistperiod;

TEST_CASE("exponent at infinity") {
  const ExponentData E = alphas({q(1, 2), q(1, 3)});
  CHECK(E.size() == 3);
  CHECK(E.alpha(2).re == q(-5, 6));
}

TEST_CASE("flatness") {
  CHECK(check_flatness(triangle(), alphas({q(1, 2), q(1, 3), q(1, 5)})));

  const ComplexRatMatrix P1{{ComplexRat(q(1, 3)), ComplexRat(0)}, {ComplexRat(0), ComplexRat(q(2, 3))}};
  const ComplexRatMatrix P2{{ComplexRat(0), ComplexRat(q(1, 5))}, {ComplexRat(0), ComplexRat(0)}};
  const Arrangement axes = make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
  const Verdict v = check_flatness(axes, ExponentData::matrices({P1, P2}));
  CHECK_FALSE(v);
  CHECK(v.subfamily == std::vector<int>{1, 2});

  const ComplexRatMatrix D2{{ComplexRat(q(1, 7)), ComplexRat(0)}, {ComplexRat(0), ComplexRat(q(3, 7))}};
  CHECK(check_flatness(axes, ExponentData::matrices({P1, D2})));
}

TEST_CASE("genericity") {
  CHECK(is_generic(unit_interval(), alphas({q(1, 2), q(1, 3)})));

  const Verdict integral = is_generic(unit_interval(), alphas({q(2), q(1, 3)}));
  CHECK_FALSE(integral);
  CHECK(integral.reason == "genericity: integer eigenvalue at j=1");

  const Arrangement parallel = make_arrangement(2, {{q(0), q(1), q(0)}, {q(-1), q(1), q(0)}});
  const Verdict par = is_generic(parallel, alphas({q(1, 2), q(1, 2)}));
  CHECK_FALSE(par);
  // alpha_inf = -1 is already integral, so the certificate is the single wall at infinity
  CHECK(par.subfamily == std::vector<int>{3});
  const Arrangement par3 = make_arrangement(2, {{q(0), q(1), q(0)}, {q(-1), q(1), q(0)}, {q(0), q(0), q(1)}});
  // {1, 2, inf} meet at a point at infinity with exponent sum -alpha_3
  CHECK(is_generic(par3, alphas({q(1, 2), q(1, 3), q(1, 5)})));
  // three concurrent lines: the sum over the triple point is checked
  const Arrangement concurrent = make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(0), q(1), q(1)}, {q(-1), q(1), q(2)}});
  const Verdict sub = is_generic(concurrent, alphas({q(1, 2), q(1, 3), q(1, 6), q(1, 5)}));
  CHECK_FALSE(sub);
  CHECK(sub.subfamily == std::vector<int>{1, 2, 3});

  // a complex shift never introduces an integer
  CHECK(is_generic(unit_interval(), ExponentData::scalar({ComplexRat(q(1, 2), q(1, 3)), ComplexRat(q(1, 2))})));
}

TEST_CASE("asymptotic genericity") {
  CHECK(is_asymptotically_generic(unit_interval(), alphas({q(1, 2), q(1, 3)}), RatVector{q(0), q(1)}));
  // on the slice t1 = R only t2 = 0 and t1 + t2 = 1 remain, meeting infinity with -(a2 + a3)
  CHECK(is_asymptotically_generic(triangle(), alphas({q(1, 2), q(1, 3), q(1, 5)}), RatVector{q(0), q(1), q(0)}));
  const Verdict v = is_asymptotically_generic(triangle(), alphas({q(1, 5), q(1, 2), q(1, 2)}), RatVector{q(0), q(1), q(0)});
  CHECK_FALSE(v);
}

TEST_CASE("integer eigenvalue decision") {
  mpz_class k;
  const ComplexRatMatrix M{{ComplexRat(q(2)), ComplexRat(q(1))}, {ComplexRat(0), ComplexRat(q(1, 2))}};
  CHECK(has_integer_eigenvalue(M, &k));
  CHECK(k == 2);
  const ComplexRatMatrix R{{ComplexRat(0), ComplexRat(q(-1))}, {ComplexRat(q(1)), ComplexRat(0)}};
  CHECK_FALSE(has_integer_eigenvalue(R));
}

TEST_CASE("monodromy factors") {
  const auto half = monodromy_factor(ComplexRat(q(1, 2)));
  CHECK(half.real() == -2.0);
  CHECK(std::abs(half.imag()) < 1e-16);
  const auto quarter = monodromy_factor(ComplexRat(q(1, 4)));
  CHECK(quarter.real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(quarter.imag() == doctest::Approx(1.0).epsilon(1e-15));
  const auto third = monodromy_factor(ComplexRat(q(1, 3)));
  CHECK(third.real() == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(third.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  // no cancellation close to an integer
  const auto tiny = monodromy_factor(ComplexRat(q(1, 1000000000)));
  CHECK(tiny.imag() == doctest::Approx(2 * std::numbers::pi * 1e-9).epsilon(1e-14));
  CHECK_THROWS_AS(monodromy_factors(alphas({q(1), q(1, 2)})), PreconditionError);
}

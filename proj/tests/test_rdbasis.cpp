#include "common.hpp"

#include "twistperiod/errors.hpp"
#include "twistperiod/rdbasis.hpp"

using namespace twistperiod;

TEST_CASE("linear phase bases") {
  SUBCASE("Kummer configuration") {
    const RdBasis b = rd_basis_linear(unit_interval(), alphas({q(1, 2), q(1, 3)}), RatVector{q(0), q(1)});
    CHECK(b.rank() == 2);
    REQUIRE(b.bounded.size() == 1);
    REQUIRE(b.truncated.size() == 1);
    CHECK(to_string(b.bounded[0].sign) == "++");
    CHECK(to_string(b.truncated[0].chamber.sign) == "+-");
    CHECK(b.degree == 1);
  }
  SUBCASE("three points on a line") {
    const Arrangement A = make_arrangement(1, {{q(0), q(1)}, {q(-1), q(1)}, {q(-2), q(1)}});
    const ExponentData E = alphas({q(1, 2), q(1, 3), q(1, 5)});
    const RdBasis b = rd_basis_linear(A, E, RatVector{q(0), q(1)});
    CHECK(b.bounded.size() == 2);
    CHECK(b.truncated.size() == 1);
    const RankReport r = rank_cross_check(A, E, {PhaseKind::linear, RatVector{q(0), q(1)}, {}});
    CHECK(r.ok);
    CHECK(r.bounded_count == 2);
    CHECK(r.fiber_count == 1);
  }
  SUBCASE("three lines with a transversal phase") {
    const RatVector f{q(0), q(1), q(2)};
    const RdBasis b = rd_basis_linear(triangle(), alphas({q(1, 2), q(1, 3), q(1, 5)}), f);
    CHECK(b.rank() == 3);
    CHECK(b.bounded.size() == 1);
  }
}

TEST_CASE("quadratic phase bases") {
  const RdBasis line = rd_basis_quadratic(unit_interval(), alphas({q(1, 2), q(1, 3)}));
  CHECK(line.rank() == 3);
  const RdBasis tri = rd_basis_quadratic(triangle(), alphas({q(1, 2), q(1, 3), q(1, 5)}));
  CHECK(tri.rank() == 7);
  CHECK(tri.truncated.size() == 6);
  const RdBasis four = rd_basis_quadratic(four_lines(), alphas({q(1, 2), q(1, 3), q(1, 5), q(1, 7)}));
  CHECK(four.rank() == 11);
  const RankReport r = rank_cross_check(triangle(), alphas({q(1, 2), q(1, 3), q(1, 5)}), {PhaseKind::quadratic, {}, {}});
  CHECK(r.ok);
  CHECK(r.fiber_kind == "schlafli");
  CHECK(r.fiber_count == 6);
}

TEST_CASE("only the top degree carries classes") {
  const RdBasis b = rd_basis_linear(unit_interval(), alphas({q(1, 2), q(1, 3)}), RatVector{q(0), q(1)});
  CHECK(basis_in_degree(b, 1).rank() == 2);
  CHECK(basis_in_degree(b, 0).rank() == 0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_WITH_AS(rd_basis_linear(unit_interval(), alphas({q(1), q(1, 3)}), RatVector{q(0), q(1)}),
                       "genericity: integer eigenvalue at j=1", PreconditionError);
}

TEST_CASE("level stability") {
  const PhaseSpec phase{PhaseKind::linear, RatVector{q(0), q(1)}, {}};
  const ExponentData E = alphas({q(1, 2), q(1, 3)});
  const Rat R = default_level(unit_interval(), phase);
  CHECK(R > 1);
  CHECK(check_level_stability(unit_interval(), E, phase, R).stable);
}

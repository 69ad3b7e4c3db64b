#include "common.hpp"

#include "twistperiod/errors.hpp"
#include "twistperiod/oracles.hpp"

using namespace twistperiod;

TEST_CASE("hyperplane evaluation") {
  CHECK(eval_hyperplane({{q(-1), q(1)}, ""}, pt({q(1)})) == 0);
  CHECK(eval_hyperplane({{q(0), q(1), q(1)}, ""}, pt({q(1, 2), q(1, 3)})) == q(5, 6));
  CHECK(eval_hyperplane({{q(2), q(-1)}, ""}, pt({q(3)})) == -1);
}

TEST_CASE("sign vector feasibility") {
  const Arrangement A = unit_interval();
  const auto w = sign_vector_feasible(A, parse_sign_vector("++"));
  REQUIRE(w);
  CHECK(sign_vector_at(A, *w) == parse_sign_vector("++"));
  CHECK((*w)[0] > 0);
  CHECK((*w)[0] < 1);
  CHECK_FALSE(sign_vector_feasible(A, parse_sign_vector("--")));

  const Arrangement T = triangle();
  const auto inside = sign_vector_feasible(T, parse_sign_vector("+++"));
  REQUIRE(inside);
  CHECK(sign_vector_at(T, *inside) == parse_sign_vector("+++"));
  // grid search over [-2, 2]^2 agrees with the LP answer
  bool grid_hit = false;
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) grid_hit = grid_hit || sign_vector_at(T, pt({q(i, 4), q(j, 4)})) == parse_sign_vector("+++");
  }
  CHECK(grid_hit);
}

TEST_CASE("recession cone") {
  const Arrangement A = unit_interval();
  CHECK(recession_cone_trivial(A, parse_sign_vector("++")));
  CHECK_FALSE(recession_cone_trivial(A, parse_sign_vector("+-")));
  CHECK(recession_cone_trivial(triangle(), parse_sign_vector("+++")));
  CHECK_FALSE(recession_cone_trivial(triangle(), parse_sign_vector("-++")));
}

TEST_CASE("slices") {
  SUBCASE("point slice of the line") {
    const Slice s = slice_arrangement(unit_interval(), RatVector{q(0), q(1)}, q(10));
    CHECK(s.arrangement.dim == 0);
    CHECK(s.arrangement.size() == 0);
    CHECK(s.embed(RatVector{}) == pt({q(10)}));
  }
  SUBCASE("three lines cut by t1 = R") {
    const Slice s = slice_arrangement(triangle(), RatVector{q(0), q(1), q(0)}, q(50));
    CHECK(s.arrangement.dim == 1);
    CHECK(s.arrangement.size() == 2);  // t1 = 0 is parallel to the slice
  }
  SUBCASE("two axes cut by t1 + t2 = 1") {
    const Arrangement A = make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
    const Slice s = slice_arrangement(A, RatVector{q(0), q(1), q(1)}, q(1));
    REQUIRE(s.arrangement.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      // the induced point embeds onto the ambient hyperplane
      const Hyperplane& h = s.arrangement[j];
      const Rat u = -h.coeffs[0] / h.coeffs[1];
      CHECK(eval_hyperplane(A[static_cast<std::size_t>(s.source[j])], s.embed(RatVector{u})) == 0);
    }
  }
}

TEST_CASE("flats up to codimension two") {
  const auto line = flats_up_to_codim2(unit_interval());
  CHECK(std::count_if(line.begin(), line.end(), [](const Flat& f) { return f.codim == 1; }) == 2);
  CHECK(std::count_if(line.begin(), line.end(), [](const Flat& f) { return f.codim == 2; }) == 0);

  const auto tri = flats_up_to_codim2(triangle());
  CHECK(std::count_if(tri.begin(), tri.end(), [](const Flat& f) { return f.codim == 2 && f.closure.size() == 2; }) == 3);

  const Arrangement concurrent = make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(0), q(1), q(1)}});
  const auto c = flats_up_to_codim2(concurrent);
  CHECK(std::count_if(c.begin(), c.end(), [](const Flat& f) { return f.codim == 1; }) == 3);
  REQUIRE(std::count_if(c.begin(), c.end(), [](const Flat& f) { return f.codim == 2; }) == 1);
  CHECK(std::find_if(c.begin(), c.end(), [](const Flat& f) { return f.codim == 2; })->closure.size() == 3);
}

TEST_CASE("Boolean test") {
  const Arrangement three_points = make_arrangement(1, {{q(0), q(1)}, {q(-1), q(1)}, {q(-2), q(1)}});
  CHECK(is_boolean_through_origin(three_points, BooleanMode::coned));
  const Arrangement parallel = make_arrangement(2, {{q(0), q(1), q(0)}, {q(-1), q(1), q(0)}});
  CHECK_FALSE(is_boolean_through_origin(parallel, BooleanMode::coned));
  CHECK(is_boolean_through_origin(make_arrangement(1, {{q(0), q(1)}}), BooleanMode::coned));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const RatMatrix rows = oracle::random_rows(rng, n, n + 2, false, 2);
    CHECK(is_boolean_through_origin(make_arrangement(n, rows), BooleanMode::coned) == oracle::general_position(n, rows));
  }
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(make_arrangement(2, {{q(1), q(0), q(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(make_arrangement(2, {{q(1), q(0)}}), DimensionError);
}

#include "common.hpp"

#include <random>
#include <set>

#include "twistperiod/oracles.hpp"

using namespace twistperiod;

TEST_CASE("chamber census of small arrangements") {
  const auto line = enumerate_chambers(unit_interval());
  CHECK(line.n_total == 3);
  CHECK(line.n_bounded == 1);

  const auto tri = enumerate_chambers(triangle());
  CHECK(tri.n_total == 7);
  CHECK(tri.n_bounded == 1);

  const auto four = enumerate_chambers(four_lines());
  CHECK(four.n_total == 11);
  CHECK(four.n_bounded == 3);
}

TEST_CASE("census ids are sorted and witnesses realize their signs") {
  const Arrangement A = four_lines();
  const auto c = enumerate_chambers(A);
  for (std::size_t i = 0; i < c.chambers.size(); ++i) {
    const Chamber& ch = c.chambers[i];
    CHECK(sign_vector_at(A, ch.witness) == ch.sign);
    CHECK(ch.id == chamber_id(ch.sign));
    if (i) CHECK(c.chambers[i - 1].id < ch.id);
    CHECK(ch.bounded == recession_cone_trivial(A, ch.sign));
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const Arrangement A = make_arrangement(2, oracle::random_rows(rng, 2, 7, false));
    const auto s = enumerate_chambers(A, Execution::serial);
    const auto p = enumerate_chambers(A, Execution::parallel);
    REQUIRE(s.chambers.size() == p.chambers.size());
    for (std::size_t k = 0; k < s.chambers.size(); ++k) {
      CHECK(s.chambers[k].sign == p.chambers[k].sign);
      CHECK(s.chambers[k].witness == p.chambers[k].witness);
    }
  }
}

TEST_CASE("census matches the 2^N scan up to N = 12") {
  std::mt19937_64 rng(12);
  for (int N : {9, 12}) {
    const RatMatrix rows = oracle::random_rows(rng, 2, N, false, 5);
    const auto c = enumerate_chambers(make_arrangement(2, rows));
    std::vector<SignVector> lib;
    for (const auto& ch : c.chambers) lib.push_back(ch.sign);
    auto ref = oracle::brute_force_chambers(2, rows);
    std::sort(lib.begin(), lib.end());
    std::sort(ref.begin(), ref.end());
    CHECK(lib == ref);
  }
}

TEST_CASE("bounded chambers") {
  const auto line = bounded_chambers(unit_interval());
  REQUIRE(line.size() == 1);
  CHECK(to_string(line[0].sign) == "++");
  CHECK(bounded_chambers(triangle()).size() == 1);
  CHECK(bounded_chambers(make_arrangement(2, {{q(0), q(1), q(0)}, {q(-1), q(1), q(0)}})).empty());
}

TEST_CASE("Schlafli counts") {
  CHECK(schlafli_bounded_count(3, 2) == 6);
  CHECK(schlafli_bounded_count(1, 1) == 2);
  CHECK(schlafli_bounded_count(4, 2) == 8);
  CHECK(schlafli_bounded_count(2, 1) == 2);
  CHECK(oracle::arcs_on_circle({{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(1), q(-1), q(-1)}}, 100.0) == 6);
  CHECK(unbounded_equals_schlafli_check(triangle()));
  CHECK(unbounded_equals_schlafli_check(four_lines()));
  CHECK(unbounded_equals_schlafli_check(unit_interval()));
}

TEST_CASE("Morse critical points") {
  const auto line = morse_critical_points(unit_interval(), {1.0, 1.0});
  REQUIRE(line.size() == 1);
  CHECK(line[0].point[0] == doctest::Approx(0.5).epsilon(1e-14));

  const auto tri = morse_critical_points(triangle(), {1.0, 1.0, 1.0});
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].point[0] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(tri[0].point[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));

  const Arrangement A = four_lines();
  const auto four = morse_critical_points(A, {1.0, 1.0, 1.0, 1.0});
  CHECK(four.size() == 3);
  std::set<std::uint64_t> ids;
  for (const auto& c : four) {
    ids.insert(c.chamber_id);
    CHECK(c.gradient_norm < 1e-12);
  }
  CHECK(ids.size() == 3);
}

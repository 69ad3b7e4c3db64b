#pragma once

#include <doctest.h>

#include "twistperiod/chambers.hpp"
#include "twistperiod/connection.hpp"
#include "twistperiod/geometry.hpp"

namespace tp = twistperiod;

inline tp::Rat q(long num, long den = 1) { return tp::Rat(num, den); }

// {t = 0, t = 1}
inline tp::Arrangement unit_interval() { return tp::make_arrangement(1, {{q(0), q(1)}, {q(1), q(-1)}}); }

// t1 = 0, t2 = 0, t1 + t2 = 1
inline tp::Arrangement triangle() {
  return tp::make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(1), q(-1), q(-1)}});
}

// the triangle plus t1 - t2 = 1/2
inline tp::Arrangement four_lines() {
  return tp::make_arrangement(2, {{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(1), q(-1), q(-1)}, {q(-1, 2), q(1), q(-1)}});
}

inline tp::ExponentData alphas(std::initializer_list<tp::Rat> a) {
  std::vector<tp::ComplexRat> v;
  for (const auto& x : a) v.emplace_back(x);
  return tp::ExponentData::scalar(v);
}

inline tp::Point pt(std::initializer_list<tp::Rat> p) { return tp::Point(p); }

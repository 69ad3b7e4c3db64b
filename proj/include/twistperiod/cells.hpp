#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "twistperiod/geometry.hpp"

namespace twistperiod {

using Vec2 = std::array<double, 2>;  // 1-D cells use the first entry only

enum class CellKind {
  segment,    // [a, b] on the real line
  loop,       // a + eps e^{i theta} u, theta in [angle0, angle0 + 2 pi]
  arc,        // same map, theta in [angle0, angle1]
  ray,        // a + s b, s >= 0 (1-D)
  polygon,    // real convex polygon, counterclockwise corners
  edge_loop,  // p(theta, s) = b(s) + eps e^{i theta} w(s), b: a -> b, w: u -> v
  torus,      // a + eps e^{i theta} u + eps e^{i phi} v
};

std::string to_string(CellKind k);

/// One parametrized piece of a twisted chain. Branch data: `base_args` holds
/// arg l_j (0 or pi) at the cell's real base point, from which every other
/// value is reached by continuous transport.
struct Cell {
  CellKind kind = CellKind::segment;
  int dim = 1;
  Vec2 a{}, b{};
  Vec2 u{}, v{};
  double radius = 0;
  double angle0 = 0;
  double angle1 = 0;
  std::vector<Vec2> polygon;
  int wall = -1;   // wall circled by the (first) loop factor
  int wall2 = -1;  // wall circled by the second loop factor (torus)
  std::vector<double> base_args;
};

/// coefficient = sign / prod_{j in walls} d_j, kept symbolically as well.
struct ChainTerm {
  int sign = 1;
  std::vector<int> walls;
  std::complex<double> coefficient{1.0, 0.0};
  Cell cell;
  std::string label;
};

struct TwistedChain {
  int dim = 1;
  std::vector<ChainTerm> terms;
  Rat epsilon;
  SignVector chamber_sign;
  std::vector<int> twisted_walls;  // carry loops
  std::vector<int> plain_walls;    // integral exponent >= 1, no loop
  bool truncated = false;
};

}  // namespace twistperiod

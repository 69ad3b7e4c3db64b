#include "twistperiod/rdbasis.hpp"

#include <algorithm>
#include <set>

#include "twistperiod/errors.hpp"
#include "twistperiod/linalg.hpp"

namespace twistperiod {

namespace {

// Squared distance from the origin to a nonempty affine flat.
Rat squared_distance(const Arrangement& A, const Flat& flat) {
  RatMatrix N;
  RatVector b;
  for (int j : flat.members) {
    const auto& h = A[static_cast<std::size_t>(j)];
    N.emplace_back(h.normal().begin(), h.normal().end());
    b.push_back(-h.constant());
  }
  RatMatrix G(N.size(), RatVector(N.size()));
  for (std::size_t i = 0; i < N.size(); ++i) {
    for (std::size_t k = 0; k < N.size(); ++k) G[i][k] = linalg::dot(N[i], N[k]);
  }
  auto y = linalg::solve(G, b, N.size());
  if (!y) throw ConsistencyError("squared_distance: dependent flat generators");
  return linalg::dot(*y, b);
}

void require_generic(const Arrangement& A, const ExponentData& E) {
  if (auto v = is_generic(A, E); !v) throw PreconditionError(v.reason);
}

void require_nonintegral(const ExponentData& E) {
  for (std::size_t j = 0; j < E.size(); ++j) {
    bool bad = false;
    if (E.rank() == 1) {
      bad = E.alpha(j).is_integer();
    } else {
      bad = has_integer_eigenvalue(E.residue(j));
    }
    if (bad) throw PreconditionError("genericity: integer eigenvalue at j=" + std::to_string(j + 1));
  }
}

// Ambient chambers met by the bounded chambers of the slice {f = R}.
std::vector<TruncatedChamber> lift_slice(const Arrangement& A, const ChamberCensus& census,
                                         std::span<const Rat> f, const Rat& R) {
  const Slice s = slice_arrangement(A, f, R);
  const auto slice_census = enumerate_chambers(s.arrangement);
  std::vector<TruncatedChamber> out;
  std::set<std::uint64_t> seen;
  for (const auto& sc : slice_census.chambers) {
    if (!sc.bounded) continue;
    Point p = s.embed(sc.witness);
    SignVector sign = sign_vector_at(A, p);
    const Chamber* c = census.find(sign);
    if (!c) throw ConsistencyError("lifted slice witness is not in a chamber: " + to_string(sign));
    if (!seen.insert(c->id).second) {
      throw PreconditionError("basis: two bounded slice chambers lie in ambient chamber " + to_string(sign));
    }
    if (c->bounded) throw ConsistencyError("bounded slice chamber inside a bounded chamber " + to_string(sign));
    out.push_back({*c, sc.sign, std::move(p)});
  }
  return out;
}

std::set<std::uint64_t> ids_of(const std::vector<TruncatedChamber>& t) {
  std::set<std::uint64_t> s;
  for (const auto& x : t) s.insert(x.chamber.id);
  return s;
}

}  // namespace

std::string to_string(PhaseKind k) {
  switch (k) {
    case PhaseKind::none: return "none";
    case PhaseKind::linear: return "linear";
    case PhaseKind::quadratic: return "quadratic";
  }
  return "none";
}

Rat default_level(const Arrangement& A, const PhaseSpec& phase) {
  if (phase.kind == PhaseKind::linear) {
    Rat m = 0;
    for (const auto& v : vertices(A)) m = std::max(m, Rat(abs(eval_affine(phase.f, v))));
    Rat R = 2 * (1 + m);
    const Rat g = generic_slice_level(A, phase.f);
    if (R <= g) R = 2 * g;
    return R;
  }
  if (phase.kind == PhaseKind::quadratic) {
    Rat m = 0;
    for (const auto& flat : affine_flats(A)) m = std::max(m, squared_distance(A, flat));
    return 2 * (1 + m);
  }
  throw PreconditionError("phase: no level for phase kind none");
}

RdBasis rd_basis_linear(const Arrangement& A, const ExponentData& E, std::span<const Rat> f,
                        std::optional<Rat> level) {
  require_generic(A, E);
  if (auto v = is_asymptotically_generic(A, E, f); !v) throw PreconditionError(v.reason);
  PhaseSpec phase{PhaseKind::linear, RatVector(f.begin(), f.end()), level};
  RdBasis basis;
  basis.kind = PhaseKind::linear;
  basis.degree = A.dim;
  basis.checked = {"genericity (single hyperplanes and degenerate subfamilies, infinity included)",
                   "asymptotic genericity on the slice at the generic level"};
  basis.generic_level = generic_slice_level(A, f);
  basis.level = level ? *level : default_level(A, phase);
  const auto census = enumerate_chambers(A);
  for (const auto& c : census.chambers) {
    if (c.bounded) basis.bounded.push_back(c);
  }
  basis.truncated = lift_slice(A, census, f, basis.generic_level);
  return basis;
}

RdBasis rd_basis_quadratic(const Arrangement& A, const ExponentData& E, std::optional<Rat> level) {
  if (!is_boolean_through_origin(A, BooleanMode::coned)) {
    throw PreconditionError("general position: coned arrangement is not Boolean");
  }
  require_nonintegral(E);
  RdBasis basis;
  basis.kind = PhaseKind::quadratic;
  basis.degree = A.dim;
  basis.level = level ? *level : default_level(A, {PhaseKind::quadratic, {}, {}});
  for (const auto& flat : affine_flats(A)) {
    if (squared_distance(A, flat) == basis.level) {
      throw PreconditionError("transversality: sphere |t|^2 = R is tangent to a flat");
    }
  }
  basis.generic_level = basis.level;
  basis.checked = {"coned arrangement is Boolean", "exponents non-integral",
                   "sphere |t|^2 = R is not tangent to any flat"};
  basis.assumed = {"normal crossings of the sphere and the arrangement at infinity"};
  for (const auto& c : enumerate_chambers(A).chambers) {
    if (c.bounded) {
      basis.bounded.push_back(c);
    } else {
      basis.truncated.push_back({c, {}, {}});
    }
  }
  return basis;
}

RdBasis rd_basis(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase) {
  switch (phase.kind) {
    case PhaseKind::linear: return rd_basis_linear(A, E, phase.f, phase.level);
    case PhaseKind::quadratic: return rd_basis_quadratic(A, E, phase.level);
    case PhaseKind::none: break;
  }
  require_generic(A, E);
  RdBasis basis;
  basis.kind = PhaseKind::none;
  basis.degree = A.dim;
  basis.checked = {"genericity (single hyperplanes and degenerate subfamilies, infinity included)"};
  basis.bounded = bounded_chambers(A);
  return basis;
}

RdBasis basis_in_degree(const RdBasis& basis, int p) {
  if (p == basis.degree) return basis;
  RdBasis empty;
  empty.kind = basis.kind;
  empty.degree = basis.degree;
  empty.level = basis.level;
  empty.generic_level = basis.generic_level;
  return empty;
}

RankReport rank_cross_check(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase) {
  const RdBasis basis = rd_basis(A, E, phase);
  RankReport r;
  r.basis_rank = basis.rank();
  r.bounded_count = enumerate_chambers(A).n_bounded;
  if (phase.kind == PhaseKind::linear) {
    r.fiber_kind = "slice";
    const Slice s = slice_arrangement(A, phase.f, generic_slice_level(A, phase.f));
    r.fiber_count = enumerate_chambers(s.arrangement).n_bounded;
  } else if (phase.kind == PhaseKind::quadratic) {
    r.fiber_kind = "schlafli";
    r.fiber_count = schlafli_bounded_count(static_cast<int>(A.size()), A.dim);
  } else {
    r.fiber_kind = "none";
  }
  r.ok = r.basis_rank == r.bounded_count + r.fiber_count;
  if (!r.ok) {
    throw ConsistencyError("rank cross-check failed: " + std::to_string(r.basis_rank) +
                           " != " + std::to_string(r.bounded_count) + " + " + std::to_string(r.fiber_count));
  }
  return r;
}

StabilityReport check_level_stability(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase,
                                      const Rat& level) {
  StabilityReport rep{level, 2 * level, false};
  if (phase.kind == PhaseKind::linear) {
    const auto census = enumerate_chambers(A);
    const RdBasis basis = rd_basis_linear(A, E, phase.f, level);
    try {
      const auto at_r = ids_of(lift_slice(A, census, phase.f, level));
      const auto at_2r = ids_of(lift_slice(A, census, phase.f, rep.doubled));
      rep.stable = at_r == at_2r && at_r == ids_of(basis.truncated);
    } catch (const PreconditionError&) {
      rep.stable = false;
    }
    return rep;
  }
  if (phase.kind == PhaseKind::quadratic) {
    rep.stable = true;
    for (const auto& v : vertices(A)) {
      Rat n2 = 0;
      for (const auto& x : v) n2 += x * x;
      if (n2 >= level) rep.stable = false;
    }
    return rep;
  }
  rep.stable = true;
  return rep;
}

}  // namespace twistperiod

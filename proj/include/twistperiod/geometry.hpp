#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistperiod/rational.hpp"

namespace twistperiod {

using Point = RatVector;

/// Affine hyperplane l(t) = a_0 + a_1 t_1 + ... + a_n t_n = 0.
struct Hyperplane {
  RatVector coeffs;
  std::string label;

  std::size_t dim() const { return coeffs.size() - 1; }
  const Rat& constant() const { return coeffs.front(); }
  std::span<const Rat> normal() const { return std::span<const Rat>(coeffs).subspan(1); }
};

/// Real arrangement in affine n-space. The hyperplane at infinity is not
/// stored; `include_infinity` records that projective scans treat it as the
/// extra member with index size().
struct Arrangement {
  int dim = 0;
  std::vector<Hyperplane> hyperplanes;
  bool include_infinity = true;

  std::size_t size() const { return hyperplanes.size(); }
  const Hyperplane& operator[](std::size_t j) const { return hyperplanes[j]; }
};

/// Builds and validates an arrangement from coefficient rows [a_0, ..., a_n].
/// Rejects zero normals, wrong row widths and projectively repeated rows.
Arrangement make_arrangement(int dim, const RatMatrix& rows, std::vector<std::string> labels = {});

enum class Sign : std::int8_t { negative = -1, zero = 0, positive = 1 };
using SignVector = std::vector<Sign>;

inline Sign sign_from(const Rat& v) {
  const int s = sgn(v);
  return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
}
inline int to_int(Sign s) { return static_cast<int>(s); }

std::string to_string(const SignVector& s);
SignVector parse_sign_vector(std::string_view text);

/// Subfamily of hyperplanes with a common intersection. Indices equal to
/// Arrangement::size() denote the hyperplane at infinity (projective scans only).
struct Flat {
  std::vector<int> members;  // generating subset, |members| == codim
  int codim = 0;
  std::vector<int> closure;  // every hyperplane containing the intersection
};

Rat eval_hyperplane(const Hyperplane& h, std::span<const Rat> p);
Rat eval_affine(std::span<const Rat> coeffs, std::span<const Rat> p);
SignVector sign_vector_at(const Arrangement& A, std::span<const Rat> p);

/// Interior point strictly on the given sides of the given hyperplanes, found
/// by maximizing a common slack 0 <= delta <= 1 with exact simplex.
std::optional<Point> interior_point(int dim, std::span<const Hyperplane> planes,
                                    std::span<const Sign> signs);

/// Exact witness for a zero-free sign vector, or nullopt if the region is empty.
std::optional<Point> sign_vector_feasible(const Arrangement& A, const SignVector& s);

/// Nonzero d with s_j (a_j . d) >= 0 for all j, or nullopt when the recession
/// cone is trivial. Throws std::invalid_argument for an infeasible sign vector.
std::optional<Point> recession_direction(const Arrangement& A, const SignVector& s);
bool recession_cone_trivial(const Arrangement& A, const SignVector& s);

std::vector<Flat> projective_flats(const Arrangement& A);
std::vector<Flat> affine_flats(const Arrangement& A);
std::vector<Flat> flats_up_to_codim2(const Arrangement& A);

/// A point of a nonempty affine flat.
Point flat_point(const Arrangement& A, const Flat& flat);

/// True iff f's linear part is a combination of the normals of the flat.
bool functional_constant_on_flat(const Arrangement& A, const Flat& flat, std::span<const Rat> f);

/// Vertices (codim-n affine flats) as exact points.
std::vector<Point> vertices(const Arrangement& A);

enum class BooleanMode {
  coned,    // {a_0j t_0 + a_j . t = 0} together with {t_0 = 0}, in n+1 variables
  central,  // {a_j . t = 0} in n variables
};

/// Every subset of the chosen covectors of size min(dim, count) is independent.
bool is_boolean_through_origin(const Arrangement& A, BooleanMode mode);

/// Arrangement induced on the affine hyperplane {f = R}.
struct Slice {
  Arrangement arrangement;          // dimension n-1
  std::vector<int> source;          // ambient index of each induced hyperplane
  int dropped_coordinate = 0;       // eliminated ambient variable
  RatVector functional;             // f = [c_0, c_1, ..., c_n]
  Rat level;                        // R

  Point embed(std::span<const Rat> u) const;
};

/// Slice at a concrete level. Hyperplanes parallel to {f = R} are omitted.
/// Throws PreconditionError for a constant f or when {f = R} contains a flat
/// (non-transversal), naming the flat.
Slice slice_arrangement(const Arrangement& A, std::span<const Rat> f, const Rat& R);

/// Level beyond which the slice's oriented matroid no longer changes: every
/// minor of the induced coned matrix is a degree-one polynomial in R, and the
/// bound exceeds all their real roots and every value f takes on a flat where
/// f is constant. Evaluating at any R above it is the same as working in Q(R)
/// with R -> +infinity.
Rat generic_slice_level(const Arrangement& A, std::span<const Rat> f);

}  // namespace twistperiod

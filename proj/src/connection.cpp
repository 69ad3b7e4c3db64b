#include "twistperiod/connection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twistperiod/errors.hpp"

namespace twistperiod {

namespace {

ComplexRatMatrix zero_matrix(std::size_t r) { return ComplexRatMatrix(r, std::vector<ComplexRat>(r, ComplexRat(0))); }

ComplexRatMatrix add(const ComplexRatMatrix& a, const ComplexRatMatrix& b) {
  ComplexRatMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += b[i][j];
  }
  return c;
}

ComplexRatMatrix multiply(const ComplexRatMatrix& a, const ComplexRatMatrix& b) {
  const std::size_t r = a.size();
  ComplexRatMatrix c = zero_matrix(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

bool is_zero(const ComplexRatMatrix& m) {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

std::string index_name(int j, std::size_t N) {
  return static_cast<std::size_t>(j) == N ? std::string("inf") : std::to_string(j + 1);
}

std::string family_name(const std::vector<int>& members, std::size_t N) {
  std::string s = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) s += ",";
    s += index_name(members[i], N);
  }
  return s + "}";
}

std::vector<int> one_based(const std::vector<int>& members) {
  std::vector<int> out;
  for (int j : members) out.push_back(j + 1);
  return out;
}

// Integer roots of a nonzero polynomial with rational coefficients (lowest
// degree first).
std::vector<mpz_class> integer_roots(std::vector<Rat> p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  if (p.empty()) throw std::invalid_argument("integer_roots: zero polynomial");
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : p) z.push_back(mpz_class(c * l));
  std::vector<mpz_class> roots;
  std::size_t low = 0;
  while (z[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (low + 1 == z.size()) return roots;
  // Cauchy bound on |root|
  mpz_class bound = 0;
  for (std::size_t i = low; i + 1 < z.size(); ++i) {
    mpz_class q = abs(z[i]) / abs(z.back()) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  const mpz_class c0 = abs(z[low]);
  if (c0 < bound) bound = c0;
  if (bound > 10000000) {
    throw PreconditionError("genericity: integer eigenvalue search bound too large");
  }
  auto eval = [&](const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = z.size(); i-- > low;) acc = acc * x + z[i];
    return acc;
  };
  for (mpz_class k = 1; k <= bound; ++k) {
    if (c0 % k != 0) continue;
    if (eval(k) == 0) roots.push_back(k);
    if (eval(-k) == 0) roots.push_back(-k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

struct RawVerdict {
  bool holds = true;
  bool at_single = false;
  std::vector<int> members;  // 0-based, N = infinity
};

bool sum_has_integer_eigenvalue(const ExponentData& E, const std::vector<int>& members) {
  if (E.rank() == 1) {
    ComplexRat s(0);
    for (int j : members) s += E.alpha(static_cast<std::size_t>(j));
    return s.is_integer();
  }
  ComplexRatMatrix s = zero_matrix(static_cast<std::size_t>(E.rank()));
  for (int j : members) s = add(s, E.residue(static_cast<std::size_t>(j)));
  return has_integer_eigenvalue(s);
}

RawVerdict generic_raw(const Arrangement& A, const ExponentData& E) {
  if (E.size() != A.size() + 1) throw DimensionError("exponent count does not match arrangement");
  const std::size_t last = A.dim == 0 ? A.size() : A.size() + 1;
  for (std::size_t j = 0; j < last; ++j) {
    if (sum_has_integer_eigenvalue(E, {static_cast<int>(j)})) return {false, true, {static_cast<int>(j)}};
  }
  for (const auto& flat : projective_flats(A)) {
    if (static_cast<int>(flat.closure.size()) <= flat.codim) continue;
    if (sum_has_integer_eigenvalue(E, flat.closure)) return {false, false, flat.closure};
  }
  return {};
}

}  // namespace

ExponentData ExponentData::scalar(std::vector<ComplexRat> alphas) {
  ExponentData e;
  e.rank_ = 1;
  ComplexRat total(0);
  for (const auto& a : alphas) total += a;
  e.alphas_ = std::move(alphas);
  e.alphas_.push_back(-total);
  return e;
}

ExponentData ExponentData::matrices(std::vector<ComplexRatMatrix> residues) {
  if (residues.empty()) throw std::invalid_argument("residues: empty list");
  const std::size_t r = residues.front().size();
  if (r == 0) throw std::invalid_argument("residues: empty matrix");
  ComplexRatMatrix total = zero_matrix(r);
  for (const auto& P : residues) {
    if (P.size() != r) throw DimensionError("residues: inconsistent matrix sizes");
    for (const auto& row : P) {
      if (row.size() != r) throw DimensionError("residues: matrix is not square");
    }
    total = add(total, P);
  }
  for (auto& row : total) {
    for (auto& x : row) x = -x;
  }
  ExponentData e;
  e.rank_ = static_cast<int>(r);
  e.residues_ = std::move(residues);
  e.residues_.push_back(std::move(total));
  if (r == 1) {
    for (const auto& P : e.residues_) e.alphas_.push_back(P[0][0]);
  }
  return e;
}

const ComplexRat& ExponentData::alpha(std::size_t j) const {
  if (rank_ != 1) throw std::logic_error("alpha: rank is not one");
  return alphas_.at(j);
}

const ComplexRatMatrix& ExponentData::residue(std::size_t j) const {
  if (rank_ == 1) throw std::logic_error("residue: rank one data has no matrices");
  return residues_.at(j);
}

ExponentData ExponentData::restrict_to(const std::vector<int>& indices) const {
  if (rank_ == 1) {
    std::vector<ComplexRat> a;
    for (int j : indices) a.push_back(alphas_.at(static_cast<std::size_t>(j)));
    return scalar(std::move(a));
  }
  std::vector<ComplexRatMatrix> m;
  for (int j : indices) m.push_back(residues_.at(static_cast<std::size_t>(j)));
  if (m.empty()) {
    ExponentData e;
    e.rank_ = rank_;
    e.residues_.push_back(zero_matrix(static_cast<std::size_t>(rank_)));
    return e;
  }
  return matrices(std::move(m));
}

std::vector<ComplexRat> characteristic_polynomial(const ComplexRatMatrix& M) {
  const std::size_t n = M.size();
  std::vector<ComplexRat> c(n + 1, ComplexRat(0));
  c[n] = 1;
  ComplexRatMatrix Mk = zero_matrix(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexRatMatrix next = multiply(M, Mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Mk = std::move(next);
    ComplexRatMatrix AM = multiply(M, Mk);
    ComplexRat trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += AM[i][i];
    c[n - k] = -(trace / ComplexRat(Rat(static_cast<long>(k))));
  }
  return c;
}

bool has_integer_eigenvalue(const ComplexRatMatrix& M, mpz_class* eigenvalue) {
  const auto p = characteristic_polynomial(M);
  std::vector<Rat> re, im;
  for (const auto& c : p) {
    re.push_back(c.re);
    im.push_back(c.im);
  }
  for (const auto& k : integer_roots(re)) {
    Rat x(k);
    Rat acc = 0;
    for (std::size_t i = im.size(); i-- > 0;) acc = acc * x + im[i];
    if (sgn(acc) == 0) {
      if (eigenvalue) *eigenvalue = k;
      return true;
    }
  }
  return false;
}

Verdict check_flatness(const Arrangement& A, const ExponentData& E) {
  if (E.size() != A.size() + 1) throw DimensionError("exponent count does not match arrangement");
  if (E.rank() == 1) return {};
  for (const auto& flat : flats_up_to_codim2(A)) {
    if (flat.codim != 2) continue;
    ComplexRatMatrix S = zero_matrix(static_cast<std::size_t>(E.rank()));
    for (int j : flat.closure) S = add(S, E.residue(static_cast<std::size_t>(j)));
    for (int nu : flat.closure) {
      const auto& P = E.residue(static_cast<std::size_t>(nu));
      ComplexRatMatrix comm = multiply(P, S);
      ComplexRatMatrix back = multiply(S, P);
      for (std::size_t i = 0; i < comm.size(); ++i) {
        for (std::size_t k = 0; k < comm.size(); ++k) comm[i][k] -= back[i][k];
      }
      if (!is_zero(comm)) {
        return {false,
                "flatness: [P_" + std::to_string(nu + 1) + ", sum] != 0 on subfamily " +
                    family_name(flat.closure, A.size()),
                one_based(flat.closure)};
      }
    }
  }
  return {};
}

Verdict is_generic(const Arrangement& A, const ExponentData& E) {
  const RawVerdict raw = generic_raw(A, E);
  if (raw.holds) return {};
  if (raw.at_single) {
    return {false, "genericity: integer eigenvalue at j=" + index_name(raw.members[0], A.size()),
            one_based(raw.members)};
  }
  return {false, "genericity: integer eigenvalue on subfamily " + family_name(raw.members, A.size()),
          one_based(raw.members)};
}

Verdict is_asymptotically_generic(const Arrangement& A, const ExponentData& E, std::span<const Rat> f) {
  if (E.size() != A.size() + 1) throw DimensionError("exponent count does not match arrangement");
  const Rat R = generic_slice_level(A, f);
  const Slice s = slice_arrangement(A, f, R);
  const RawVerdict raw = generic_raw(s.arrangement, E.restrict_to(s.source));
  if (raw.holds) return {};
  std::vector<int> ambient;
  std::string names = "{";
  for (std::size_t i = 0; i < raw.members.size(); ++i) {
    const int m = raw.members[i];
    const bool inf = static_cast<std::size_t>(m) == s.source.size();
    ambient.push_back(inf ? static_cast<int>(A.size()) + 1 : s.source[static_cast<std::size_t>(m)] + 1);
    if (i) names += ",";
    names += inf ? std::string("slice-inf") : std::to_string(ambient.back());
  }
  names += "}";
  return {false, "asymptotic genericity: integer eigenvalue on slice subfamily " + names, ambient};
}

double sinpi(const Rat& q) {
  Rat r = q - Rat(floor_rat(q / 2) * 2);  // [0, 2)
  double sign = 1;
  if (r >= 1) {
    r -= 1;
    sign = -1;
  }
  if (r > Rat(1, 2)) r = 1 - r;
  if (sgn(r) == 0) return sign * 0.0;
  if (r == Rat(1, 2)) return sign;
  if (r == Rat(1, 6)) return sign * 0.5;
  if (r == Rat(1, 4)) return sign * std::numbers::sqrt2 / 2;
  if (r > Rat(1, 4)) return sign * std::cos(std::numbers::pi * Rat(Rat(1, 2) - r).get_d());
  return sign * std::sin(std::numbers::pi * r.get_d());
}

double cospi(const Rat& q) { return sinpi(q + Rat(1, 2)); }

std::complex<double> monodromy_factor(const ComplexRat& alpha) {
  const Rat r = alpha.re - Rat(floor_rat(alpha.re));
  const double x = -2 * std::numbers::pi * alpha.im.get_d();
  const double s = sinpi(r);
  return {std::expm1(x) * cospi(2 * r) - 2 * s * s, std::exp(x) * sinpi(2 * r)};
}

std::vector<std::complex<double>> monodromy_factors(const ExponentData& E) {
  if (E.rank() != 1) throw PreconditionError("monodromy: rank is not one");
  std::vector<std::complex<double>> d;
  for (std::size_t j = 0; j + 1 < E.size(); ++j) {
    if (E.alpha(j).is_integer()) {
      throw PreconditionError("monodromy: integral exponent at j=" + std::to_string(j + 1));
    }
    d.push_back(monodromy_factor(E.alpha(j)));
  }
  return d;
}

}  // namespace twistperiod

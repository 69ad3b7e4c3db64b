#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace twistperiod {

// Arbitrary-precision rational; always kept in canonical form.
using Rat = mpq_class;

using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

/// Parses "p", "p/q", "-p/q" or a finite decimal like "0.125" into a canonical
/// rational. Throws std::invalid_argument on malformed input or a zero
/// denominator.
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_rat(const Rat& value);

inline int sign_of(const Rat& value) { return sgn(value); }

bool is_integer(const Rat& value);

// floor(value), exact.
mpz_class floor_rat(const Rat& value);

/// Complex number with exact rational parts. Exponents and residues live here
/// so that integrality can be decided rather than approximated.
struct ComplexRat {
  Rat re;
  Rat im;

  ComplexRat() = default;
  ComplexRat(Rat real, Rat imag = 0) : re(std::move(real)), im(std::move(imag)) {}
  ComplexRat(int real) : re(real), im(0) {}

  bool is_integer() const { return sgn(im) == 0 && twistperiod::is_integer(re); }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  ComplexRat operator-() const { return {-re, -im}; }
  ComplexRat& operator+=(const ComplexRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRat& operator-=(const ComplexRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexRat operator+(ComplexRat a, const ComplexRat& b) { return a += b; }
  friend ComplexRat operator-(ComplexRat a, const ComplexRat& b) { return a -= b; }
  friend ComplexRat operator*(const ComplexRat& a, const ComplexRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRat operator/(const ComplexRat& a, const ComplexRat& b);
  friend bool operator==(const ComplexRat& a, const ComplexRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRat& a, const ComplexRat& b) { return !(a == b); }
};

std::string format_complex_rat(const ComplexRat& value);

}  // namespace twistperiod

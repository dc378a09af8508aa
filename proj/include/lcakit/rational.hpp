#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcakit/errors.hpp"

namespace lca {

using Integer = mpz_class;
using Rational = mpq_class;
using Prime = unsigned long;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

bool is_integer(const Rational& x);
Integer floor(const Rational& x);
Integer mod(const Integer& a, const Integer& m);  // result in [0, |m|)
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(Prime p, unsigned long k);

bool is_prime(const Integer& n);

// v_p(x); x must be nonzero.
long valuation(const Integer& x, Prime p);
long valuation(const Rational& x, Prime p);

bool is_p_integral(const Rational& x, Prime p);
bool is_p_unit(const Rational& x, Prime p);

// |x|_p = p^{-v_p(x)}, with |0|_p = 0.
Rational padic_abs(const Rational& x, Prime p);

// Fractional part in [0, 1).
Rational frac(const Rational& x);

// Canonical representative of x modulo Z_(p): a / p^k with 0 <= a < p^k.
// x must have no denominators prime to p other than units, i.e. any rational works
// and the prime-to-p part of the denominator is inverted modulo p^k.
Rational padic_frac(const Rational& x, Prime p);

// A p-integral rational a/b reduced to an integer residue modulo p^k.
Integer padic_residue(const Rational& x, Prime p, unsigned long k);

// Residue of a rational with denominator prime to m, modulo m.
Integer residue_mod(const Rational& x, const Integer& m);

// Prime factorisation by trial division; fine for the heights this library handles.
std::map<Prime, unsigned long> factorize(Integer n);

// A strictly positive rational, used for Haar modulus values and sequence factors.
class PositiveRational {
 public:
  PositiveRational() : value_(1) {}
  explicit PositiveRational(const Rational& v);
  const Rational& value() const { return value_; }
  PositiveRational operator*(const PositiveRational& o) const;
  PositiveRational operator/(const PositiveRational& o) const;
  PositiveRational inverse() const;
  bool operator==(const PositiveRational& o) const { return value_ == o.value_; }
  bool operator!=(const PositiveRational& o) const { return !(*this == o); }
  std::string str() const { return to_string(value_); }

 private:
  Rational value_;
};

}  // namespace lca

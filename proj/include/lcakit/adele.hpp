#pragma once

#include <set>

#include "lcakit/haar.hpp"

namespace lca {

// R + sum over p in S of Q_p. The omitted restricted-product tail has modulus 1 under rational ideles.
struct AdeleTruncation {
  std::set<Prime> places;
  LcaObject object;
};

AdeleTruncation adele_object(const std::set<Prime>& places);

// The primes dividing numerator or denominator of x.
std::set<Prime> support(const Rational& x);

// One factor of the idele modulus; place 0 is the real place.
struct LocalFactor {
  Prime place;
  Rational value;
};
// |x|_inf followed by |x|_p for p in S; throws SupportNotCovered if S misses a prime of x.
std::vector<LocalFactor> local_factors(const Rational& x, const std::set<Prime>& places);

// Modulus of multiplication by x on adele_object(S).
PositiveRational idele_modulus(const Rational& x, const std::set<Prime>& places);

// idele_modulus(x, support(x)) == 1.
bool product_formula_check(const Rational& x);

}  // namespace lca

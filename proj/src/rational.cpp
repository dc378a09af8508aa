#include "lcakit/rational.hpp"

#include <cctype>

namespace lca {

ParseError::ParseError(std::string msg, int line, int column)
    : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty number", 1, 1);
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& part, size_t offset) {
    size_t i = 0;
    if (i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) throw ParseError("expected digits in '" + text + "'", 1, int(offset + i + 1));
    for (size_t j = i; j < part.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(part[j])))
        throw ParseError("unexpected character '" + std::string(1, part[j]) + "'", 1, int(offset + j + 1));
    return Integer(part[0] == '+' ? part.substr(1) : part);
  };
  if (slash == std::string::npos) return Rational(parse_int(s, 0));
  Integer num = parse_int(s.substr(0, slash), 0);
  Integer den = parse_int(s.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError("zero denominator in '" + text + "'", 1, int(slash + 2));
  return make_rational(num, den);
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  Integer am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer pow(Prime p, unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

long valuation(const Integer& x, Prime p) {
  if (x == 0) throw Error("valuation of zero");
  Integer y = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rational& x, Prime p) {
  if (x == 0) throw Error("valuation of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_p_integral(const Rational& x, Prime p) { return !mpz_divisible_ui_p(x.get_den_mpz_t(), p); }

bool is_p_unit(const Rational& x, Prime p) { return x != 0 && valuation(x, p) == 0; }

Rational padic_abs(const Rational& x, Prime p) {
  if (x == 0) return 0;
  long v = valuation(x, p);
  if (v >= 0) return make_rational(1, pow(p, v));
  return Rational(pow(p, -v));
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

Rational padic_frac(const Rational& x, Prime p) {
  if (x == 0) return 0;
  long v = valuation(x.get_den(), p);
  if (v == 0) return 0;
  Integer pk = pow(p, v);
  Integer rest = x.get_den() / pk;  // prime to p
  // x = n / (pk * rest); find a with a*rest == n (mod pk)
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), pk.get_mpz_t()) == 0) throw Error("padic_frac: not invertible");
  Integer a = mod(Integer(x.get_num() * inv), pk);
  return make_rational(a, pk);
}

Integer padic_residue(const Rational& x, Prime p, unsigned long k) {
  if (!is_p_integral(x, p)) throw Error("padic_residue: " + to_string(x) + " is not " + std::to_string(p) + "-integral");
  Integer pk = pow(p, k);
  if (pk == 1) return 0;
  return residue_mod(x, pk);
}

Integer residue_mod(const Rational& x, const Integer& m) {
  if (m == 1) return 0;
  Integer den = x.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error("residue_mod: denominator of " + to_string(x) + " not invertible mod " + to_string(m));
  return mod(Integer(x.get_num() * inv), m);
}

std::map<Prime, unsigned long> factorize(Integer n) {
  std::map<Prime, unsigned long> out;
  n = abs(n);
  if (n == 0) throw Error("factorize(0)");
  for (Prime p = 2; Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[p];
    }
  }
  if (n > 1) {
    if (!n.fits_ulong_p()) throw Error("prime factor too large");
    ++out[n.get_ui()];
  }
  return out;
}

PositiveRational::PositiveRational(const Rational& v) : value_(v) {
  value_.canonicalize();
  if (value_ <= 0) throw Error("PositiveRational requires a positive value, got " + to_string(value_));
}

PositiveRational PositiveRational::operator*(const PositiveRational& o) const {
  return PositiveRational(Rational(value_ * o.value_));
}

PositiveRational PositiveRational::operator/(const PositiveRational& o) const {
  return PositiveRational(Rational(value_ / o.value_));
}

PositiveRational PositiveRational::inverse() const { return PositiveRational(Rational(1 / value_)); }

}  // namespace lca

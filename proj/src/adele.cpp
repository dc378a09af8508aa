#include "lcakit/adele.hpp"

namespace lca {

AdeleTruncation adele_object(const std::set<Prime>& places) {
  std::vector<Component> comps{{Kind::R}};
  for (Prime p : places) {
    if (!is_prime(Integer(p))) throw Error(std::to_string(p) + " is not a prime");
    comps.push_back({Kind::Qp, 0, p});
  }
  return {places, LcaObject::from_components(comps)};
}

std::set<Prime> support(const Rational& x) {
  if (x == 0) throw Error("support of zero");
  std::set<Prime> out;
  for (const Integer& n : {Integer(abs(x.get_num())), Integer(x.get_den())})
    for (const auto& [p, k] : factorize(n)) out.insert(p);
  return out;
}

namespace {

void require_covered(const Rational& x, const std::set<Prime>& places) {
  for (Prime p : support(x))
    if (!places.count(p)) throw SupportNotCovered("prime " + std::to_string(p) + " of " + to_string(x) + " is not in S");
}

}  // namespace

std::vector<LocalFactor> local_factors(const Rational& x, const std::set<Prime>& places) {
  require_covered(x, places);
  std::vector<LocalFactor> out{{0, abs(x)}};
  for (Prime p : places) out.push_back({p, padic_abs(x, p)});
  return out;
}

PositiveRational idele_modulus(const Rational& x, const std::set<Prime>& places) {
  require_covered(x, places);
  return modulus(LcaMorphism::scalar(adele_object(places).object, x));
}

bool product_formula_check(const Rational& x) { return idele_modulus(x, support(x)).value() == 1; }

}  // namespace lca

#include "doctest.h"
#include "haar_fixtures.hpp"
#include "lcakit/order.hpp"

using namespace lca;

namespace {

LcaObject O(const std::string& s) { return LcaObject::parse(s); }
LcaMorphism M(const std::string& s) { return LcaMorphism::parse(s); }

std::vector<Integer> basis(size_t n, size_t i) {
  std::vector<Integer> e(n, Integer(0));
  e[i] = 1;
  return e;
}

LcaModule sum(const LcaModule& a, const LcaModule& b) {
  LcaModule m{a.carrier + b.carrier, a.order, {}};
  for (size_t i = 0; i < a.action.size(); ++i) m.action.push_back(direct_sum(a.act(i), b.act(i)).matrix());
  return m;
}

LcaModule transport(const LcaModule& a, const gen::Automorphism& phi) {
  LcaModule m{a.carrier, a.order, {}};
  for (size_t i = 0; i < a.action.size(); ++i) m.action.push_back(compose(compose(phi.inv, a.act(i)), phi.fwd).matrix());
  return m;
}

Component random_kind(gen::Rng& rng) {
  Prime p = gen::small_prime(rng);
  switch (gen::uniform(rng, 0, 6)) {
    case 0: return {Kind::R};
    case 1: return {Kind::Z};
    case 2: return {Kind::T};
    case 3: return {Kind::F, Integer(gen::uniform(rng, 2, 9))};
    case 4: return {Kind::Qp, 0, p};
    case 5: return {Kind::Zp, 0, p};
    default: return {Kind::Pr, 0, p};
  }
}

}  // namespace

TEST_CASE("order validation examples") {
  OrderReport c2 = validate_order(Order::cyclic_group_ring(2));
  CHECK(c2.ok());
  CHECK(abs(c2.gram_det) == 4);

  OrderReport dual_numbers = validate_order(Order::named("Z[x]/(x^2)"));
  CHECK(dual_numbers.associative);
  CHECK(dual_numbers.unital);
  CHECK_FALSE(dual_numbers.semisimple);
  CHECK(dual_numbers.gram_det == 0);

  OrderReport g3 = validate_order(Order::gamma3());
  CHECK(g3.ok());
  CHECK(Order::gamma3().rank() == 9);

  CHECK(validate_order(Order::integers()).ok());
  for (size_t n = 1; n <= 6; ++n) {
    // the trace form of Z[G] is |G| times a permutation matrix
    CHECK(abs(validate_order(Order::cyclic_group_ring(n)).gram_det) == pow(n, n));
    CHECK(abs(validate_order(Order::dihedral_group_ring(n)).gram_det) == pow(2 * n, 2 * n));
    CHECK(validate_order(Order::dihedral_group_ring(n)).ok());
  }
}

TEST_CASE("orders with broken axioms are rejected") {
  // Z^2 with b2 b2 = b1 + b2 but b1 not a unit
  Order bad("bad", {"a", "b"}, {1, 0, 0, 1, 0, 1, 1, 1}, {1, 1});
  CHECK_FALSE(validate_order(bad).ok());

  gen::Rng rng(7);
  int caught = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Order o = trial % 2 ? Order::dihedral_group_ring(3) : Order::gamma3();
    size_t n = o.rank();
    std::vector<Integer> c;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) c.push_back(o.c(i, j, k));
    c[gen::uniform(rng, 0, long(c.size()) - 1)] += gen::uniform(rng, 0, 1) ? 1 : -1;
    OrderReport r = validate_order(Order("perturbed", o.labels(), c, o.unit()));
    caught += !(r.associative && r.unital);
    CHECK_FALSE(r.detail.empty());
  }
  CHECK(caught == 100);
}

TEST_CASE("opposite orders") {
  Order c2 = Order::cyclic_group_ring(2);
  CHECK(opposite_order(c2) == c2);
  Order g = Order::gamma3(), gop = opposite_order(g);
  CHECK(validate_order(gop).ok());
  CHECK_FALSE(gop == g);
  for (size_t i = 0; i < 9; ++i)
    for (size_t j = 0; j < 9; ++j)
      for (size_t k = 0; k < 9; ++k) CHECK(gop.c(i, j, k) == g.c(j, i, k));
  CHECK(opposite_order(gop) == g);
  CHECK(opposite_order(gop).name() == "Gamma3");
  Order d = Order::dihedral_group_ring(4);
  CHECK(opposite_order(opposite_order(d)) == d);
  CHECK_FALSE(opposite_order(d) == d);
}

TEST_CASE("order file round trip") {
  for (const Order& o : {Order::gamma3(), Order::dihedral_group_ring(3), Order::named("Z[C5]")}) {
    Order back = Order::parse(o.str());
    CHECK(back == o);
    CHECK(back.name() == o.name());
  }
  Order c2 = Order::parse("name Z[C2]\nrank 2\nbasis 1 t\nunit 1 0\n(1 1 1 1)\n(1 2 2 1)\n(2 1 2 1)\n(2 2 1 1)\n");
  CHECK(c2 == Order::cyclic_group_ring(2));
  CHECK_THROWS_AS(Order::parse("rank 2\nunit 1 0\n(1 3 1 1)\n"), ParseError);
  CHECK_THROWS_AS(Order::parse("rank 2\nunit 1\n"), ParseError);
  CHECK_THROWS_AS(Order::named("Z[D5]"), Error);
}

TEST_CASE("module validation examples") {
  Order c2 = Order::cyclic_group_ring(2);
  LcaModule reg{O("Z^2"), c2, {QMatrix::identity(2), QMatrix::from_rows({{0, 1}, {1, 0}})}};
  CHECK(validate_module(reg).ok);
  CHECK(regular_module(c2, {Kind::Z}).action == reg.action);

  LcaModule circle{O("T"), c2, {QMatrix::from_rows({{1}}), QMatrix::from_rows({{-1}})}};
  CHECK(validate_module(circle).ok);

  LcaModule zp{O("Zp(3)"), c2, {QMatrix::from_rows({{1}}), QMatrix::from_rows({{Rational(1, 3)}})}};
  ModuleReport r = validate_module(zp);
  CHECK_FALSE(r.ok);
  CHECK(r.detail.find("act(t)") != std::string::npos);

  LcaModule wrong{O("Z"), c2, {QMatrix::from_rows({{1}}), QMatrix::from_rows({{2}})}};
  r = validate_module(wrong);
  CHECK_FALSE(r.ok);
  CHECK(r.detail.find("(t, t)") != std::string::npos);
  LcaModule no_unit{O("Z"), c2, {QMatrix::from_rows({{-1}}), QMatrix::from_rows({{1}})}};
  CHECK_FALSE(validate_module(no_unit).ok);
}

TEST_CASE("module duals") {
  Order c2 = Order::cyclic_group_ring(2);
  LcaModule reg = regular_module(c2, {Kind::Z});
  LcaModule d = module_dual(reg);
  CHECK(d.carrier.str() == "T^2");
  CHECK(d.order == opposite_order(c2));
  CHECK(d.act(1) == M("[T^2 -> T^2] { (T,T): 0 1; 1 0 }"));
  CHECK(validate_module(d).ok);
  LcaModule dd = module_dual(d);
  CHECK(dd.carrier == reg.carrier);
  CHECK(dd.action == reg.action);

  LcaObject x = O("R + Z/4 + Qp(3)");
  LcaModule triv{x, c2, {QMatrix::identity(3), QMatrix::identity(3)}};
  LcaModule td = module_dual(triv);
  CHECK(td.carrier == dual(x));
  CHECK(td.act(1) == LcaMorphism::identity(dual(x)));
}

TEST_CASE("projective and injective classification") {
  Order z = Order::integers(), c2 = Order::cyclic_group_ring(2);
  auto scalar_module = [&](const std::string& g) {
    LcaObject o = O(g);
    return LcaModule{o, z, {QMatrix::identity(o.dim())}};
  };
  CHECK(classify_proj_inj(scalar_module("R^2 + Z^3")) == ProjInj::Projective);
  CHECK(classify_proj_inj(scalar_module("R + T^2")) == ProjInj::Injective);
  CHECK(classify_proj_inj(scalar_module("T + Z")) == ProjInj::Neither);
  CHECK(classify_proj_inj(scalar_module("R^3")) == ProjInj::Both);
  CHECK(classify_proj_inj(scalar_module("Zp(3)")) == ProjInj::Neither);
  CHECK(classify_proj_inj(scalar_module("Z/2")) == ProjInj::Neither);
  CHECK(classify_proj_inj(regular_module(c2, {Kind::R})) == ProjInj::Both);
  CHECK(classify_proj_inj(regular_module(c2, {Kind::Qp, 0, 5})) == ProjInj::Neither);

  // lattices over a general order need a certificate or the hereditary flag
  Order g = Order::gamma3();
  LcaModule reg = regular_module(g, {Kind::Z});
  CHECK(classify_proj_inj(reg) == ProjInj::NeedsCertificate);
  CHECK(classify_proj_inj(reg, true) == ProjInj::Projective);
  SummandCertificate cert{1, QMatrix::identity(9), QMatrix::identity(9)};
  CHECK(classify_proj_inj(reg, false, &cert) == ProjInj::Projective);
  SummandCertificate bad{1, QMatrix::identity(9).scaled(2), QMatrix::identity(9)};
  CHECK(classify_proj_inj(reg, false, &bad) == ProjInj::NeedsCertificate);
  // the dual of a projective lattice is an injective torus module, certified through the opposite order
  LcaModule tor = module_dual(reg);
  CHECK(classify_proj_inj(tor) == ProjInj::NeedsCertificate);
  CHECK(classify_proj_inj(tor, false, &cert) == ProjInj::Injective);

  // the trivial C2-module Z is a summand of Z[C2] only after inverting 2, so a certificate fails
  LcaModule triv{O("Z"), c2, {QMatrix::identity(1), QMatrix::identity(1)}};
  SummandCertificate norm{1, QMatrix::from_rows({{1}, {1}}), QMatrix::from_rows({{1, 0}})};
  CHECK_FALSE(check_certificate(c2, lattice_action(triv), norm));
  CHECK(classify_proj_inj(triv, false, &norm) == ProjInj::NeedsCertificate);
}

TEST_CASE("modules over group rings act by automorphisms") {
  gen::Rng rng(19);
  std::vector<Order> rings{Order::cyclic_group_ring(2), Order::cyclic_group_ring(3), Order::dihedral_group_ring(3)};
  for (int trial = 0; trial < 60; ++trial) {
    const Order& o = rings[trial % rings.size()];
    LcaModule m = regular_module(o, random_kind(rng));
    if (gen::uniform(rng, 0, 1)) m = sum(m, regular_module(o, random_kind(rng)));
    m = transport(m, gen::automorphism(rng, m.carrier, false, 3));
    REQUIRE(validate_module(m).ok);
    auto pr = predicates(m.carrier);
    for (size_t i = 0; i < o.rank(); ++i) {
      LcaMorphism a = m.act(i);
      CHECK(is_automorphism(a));
      if (pr.is_compact || pr.is_discrete) CHECK(modulus(a).value() == 1);
    }
    LcaModule d = module_dual(m);
    CHECK(validate_module(d).ok);
    LcaModule dd = module_dual(d);
    CHECK(dd.carrier == m.carrier);
    CHECK(dd.action == m.action);
    CHECK(dd.order == m.order);
  }
}

TEST_CASE("vector module actions are invertible exactly on units") {
  gen::Rng rng(31);
  int units = 0, nonunits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Order o = trial % 2 ? Order::cyclic_group_ring(2) : Order::gamma3();
    size_t n = o.rank();
    std::vector<Integer> a(n);
    for (auto& x : a) x = gen::uniform(rng, 0, 3) ? 0 : gen::uniform(rng, -2, 2);
    LcaModule m = regular_module(o, {Kind::R});
    QMatrix act(n, n);
    for (size_t i = 0; i < n; ++i) act = act + m.action[i].scaled(Rational(a[i]));
    LcaMorphism f(m.carrier, m.carrier, act);
    // a is a unit of A exactly when a b = 1 has a solution b
    QMatrix b;
    QMatrix unit(n, 1);
    for (size_t i = 0; i < n; ++i) unit(i, 0) = Rational(o.unit()[i]);
    bool is_unit = solve(o.left_mult(a), unit, b);
    CHECK(is_automorphism(f) == is_unit);
    (is_unit ? units : nonunits)++;
  }
  CHECK(units > 10);
  CHECK(nonunits > 10);
}

TEST_CASE("module files") {
  LcaModule m = LcaModule::parse(
      "# regular representation of C2\n"
      "order Z[C2]\n"
      "carrier Z^2\n"
      "act 1 [Z^2 -> Z^2] { (Z,Z): 1 0; 0 1 }\n"
      "act t [Z^2 -> Z^2] {\n"
      "  (Z,Z): 0 1; 1 0 }\n");
  CHECK(validate_module(m).ok);
  CHECK(m.action == regular_module(Order::cyclic_group_ring(2), {Kind::Z}).action);
  CHECK_THROWS_AS(LcaModule::parse("order Z[C2]\ncarrier Z\nact 1 [Z -> Z] { (Z,Z): 1 }\n"), ParseError);
  CHECK_THROWS_AS(LcaModule::parse("order Z[C2]\ncarrier Zp(3)\nact 1 [Zp(3) -> Zp(3)] { (Zp,Zp): 1 }\n"
                                   "act t [Zp(3) -> Zp(3)] { (Zp,Zp): 1/3 }\n"),
                  ParseError);
  CHECK_THROWS_AS(LcaModule::parse("order Nope\ncarrier Z\n"), ParseError);
}

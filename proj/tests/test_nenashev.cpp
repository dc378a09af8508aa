#include <thread>

#include "doctest.h"
#include "lcakit/haar.hpp"
#include "lcakit/nenashev.hpp"
#include "nenashev_fixtures.hpp"

using namespace lca;

namespace {

std::shared_ptr<ComputedBackend> real_line() {
  auto be = std::make_shared<ComputedBackend>();
  LcaObject r = LcaObject::real();
  be->add_object("X", r);
  be->add_arrow("two", "X", "X", LcaMorphism::scalar(r, 2));
  be->add_arrow("three", "X", "X", LcaMorphism::scalar(r, 3));
  return be;
}

ZMatrix zmat(std::initializer_list<std::initializer_list<long>> rows) {
  ZMatrix m(rows.size(), rows.begin()->size());
  size_t i = 0;
  for (const auto& r : rows) {
    size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("generators") {
  auto be = real_line();
  DoubleSes two = class_of_automorphism(*be, "X", "two");
  CHECK(two.label() == "(0 => X => X; 0, two | 0, 1)");
  K1Expression g = dses_generator(*be, two);
  CHECK(g.terms.size() == 1);
  CHECK(g.terms.begin()->second == 1);

  CHECK(dses_generator(*be, class_of_automorphism(*be, "X", be->identity("X"))).is_zero());
  DoubleSes same = two;
  same.s = two.r;
  CHECK(dses_generator(*be, same).is_zero());
  std::string z = be->zero("0", "0");
  CHECK(dses_generator(*be, DoubleSes{"0", "0", "0", z, z, z, z}).is_zero());

  // identical arrows under other names give the same generator
  be->add_arrow("double", "X", "X", LcaMorphism::scalar(LcaObject::real(), 2));
  CHECK(dses_generator(*be, class_of_automorphism(*be, "X", "double")) == g);
  CHECK_FALSE(dses_generator(*be, class_of_automorphism(*be, "X", "three")) == g);
}

TEST_CASE("generator errors") {
  auto be = real_line();
  be->add_object("Y", LcaObject::lattice());
  be->add_arrow("zero", "X", "X", LcaMorphism(LcaObject::real(), LcaObject::real()));
  CHECK_THROWS_AS(class_of_automorphism(*be, "X", "zero"), NotAnAutomorphism);
  CHECK_THROWS_AS(class_of_automorphism(*be, "Y", "two"), NotAnAutomorphism);
  DoubleSes d = class_of_automorphism(*be, "X", "two");
  d.r = "zero";
  CHECK_THROWS_AS(dses_generator(*be, d), NotExact);
  d = class_of_automorphism(*be, "X", "two");
  d.c = "Y";
  CHECK_THROWS_AS(dses_generator(*be, d), ObjectMismatch);
}

TEST_CASE("modulus of generators") {
  auto be = real_line();
  CHECK(dses_modulus(*be, class_of_automorphism(*be, "X", "two"))->value() == 2);
  for (Prime p : {2ul, 3ul, 5ul}) {
    LcaObject q = LcaObject::qp(p);
    be->add_object("Q" + std::to_string(p), q);
    be->add_arrow("u" + std::to_string(p), "Q" + std::to_string(p), "Q" + std::to_string(p),
                  LcaMorphism::scalar(q, Rational(1 + p)));
    be->add_arrow("p" + std::to_string(p), "Q" + std::to_string(p), "Q" + std::to_string(p),
                  LcaMorphism::scalar(q, Rational(p)));
    DoubleSes u = class_of_automorphism(*be, "Q" + std::to_string(p), "u" + std::to_string(p));
    CHECK_FALSE(dses_generator(*be, u).is_zero());
    CHECK(dses_modulus(*be, u)->value() == 1);
    CHECK(dses_modulus(*be, class_of_automorphism(*be, "Q" + std::to_string(p), "p" + std::to_string(p)))->value() ==
          Rational(1, p));
  }
}

TEST_CASE("the lattice-torus relation and both swindles") {
  ZMatrix phi = zmat({{2, 1}, {1, 1}});
  SwindleReplay s = swindle_replay(phi);
  const auto& c = *s.computed;
  K1Expression X = dses_generator(c, class_of_automorphism(*s.computed, "X", "phi"));
  K1Expression XR = dses_generator(c, class_of_automorphism(*s.computed, "XR", "phiR"));
  K1Expression T = dses_generator(c, class_of_automorphism(*s.computed, "T", "phiT"));
  CHECK(s.target == XR);

  // [X] + [T] = [X_R]
  CHECK(s.lattice_torus.lhs == X - XR + T);
  CHECK(s.lattice_torus.rhs.is_zero());
  CHECK(s.lattice_torus.difference() == X + T - XR);
  // [X] = 0 and [T] = 0, with generators shared across backends
  CHECK(s.discrete_swindle.difference() == X);
  CHECK(s.discrete_swindle.rhs.is_zero());
  CHECK(s.compact_swindle.difference() == T);

  CHECK(s.reduction.is_zero());
  CHECK(s.reduction.normal_form.is_zero());
  CHECK(s.reduction.certificate == std::vector<Integer>{-1, 1, 1});
  CHECK(check_certificate(s.target, s.relations(), s.reduction));
  for (const auto& r : s.relations()) CHECK(replays(r));

  CHECK(*modulus_identity_holds(s.lattice_torus));
  CHECK_FALSE(modulus_identity_holds(s.discrete_swindle).has_value());
  CHECK(dses_modulus(c, class_of_automorphism(*s.computed, "XR", "phiR"))->value() == 1);

  // without the swindles [X_R] is only tied to [X] and [T]
  Reduction partial = reduce(s.target, {s.lattice_torus});
  CHECK_FALSE(partial.is_zero());
  CHECK(check_certificate(s.target, {s.lattice_torus}, partial));
}

TEST_CASE("all-identity diagram") {
  auto be = std::make_shared<ComputedBackend>();
  be->add_object("A", LcaObject::lattice());
  be->add_object("B", LcaObject::real());
  be->add_object("C", LcaObject::torus());
  be->add_arrow("i", "A", "B", LcaMorphism(LcaObject::lattice(), LcaObject::real(), QMatrix::identity(1)));
  be->add_arrow("q", "B", "C", LcaMorphism(LcaObject::real(), LcaObject::torus(), QMatrix::identity(1)));
  ThreeByThree d;
  d.objects = {{{"0", "A", "A"}, {"0", "B", "B"}, {"0", "C", "C"}}};
  for (size_t i = 0; i < 3; ++i)
    d.rows[i] = class_of_automorphism(*be, d.objects[i][1], be->identity(d.objects[i][1]));
  DoubleSes col{"A", "B", "C", "i", "q", "i", "q"};
  d.cols = {gen::zeros(*be), col, col};
  Relation r = relation_from_3x3(be, d);
  CHECK(r.lhs.is_zero());
  CHECK(r.rhs.is_zero());
  CHECK(r.str() == "0 = 0");
}

TEST_CASE("diagram errors name the offending part") {
  SwindleReplay s = swindle_replay(zmat({{1, 1}, {0, 1}}));
  auto c = s.computed;
  c->add_arrow("nincl", "X", "XR", -c->arrow("incl"));
  ThreeByThree d = s.lattice_torus.diagram;
  d.cols[2].p = "nincl";
  try {
    relation_from_3x3(c, d);
    FAIL("expected DiagramNotCommutative");
  } catch (const DiagramNotCommutative& e) {
    CHECK(std::string(e.what()).find("yin square at (1, 2)") != std::string::npos);
  }
  d = s.lattice_torus.diagram;
  d.cols[1].s = c->zero("XR", "T");
  try {
    relation_from_3x3(c, d);
    FAIL("expected RowOrColumnNotExact");
  } catch (const RowOrColumnNotExact& e) {
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }
  d = s.lattice_torus.diagram;
  std::swap(d.objects[1], d.objects[2]);
  CHECK_THROWS_AS(relation_from_3x3(c, d), ObjectMismatch);

  // a declared backend only knows the facts it was given
  auto be = std::make_shared<DeclaredBackend>();
  be->add_object("X", LcaObject::lattice());
  be->add_arrow("phi", "X", "X", LcaMorphism::scalar(LcaObject::lattice(), -1));
  be->add_formal_object("S");
  be->add_formal_arrow("Phi", "S", "S");
  be->add_formal_arrow("i", "X", "S");
  be->add_formal_arrow("sh", "S", "S");
  be->declare_isomorphism("Phi");
  ThreeByThree w;
  w.objects = {{{"0", "X", "X"}, {"0", "S", "S"}, {"0", "S", "S"}}};
  w.rows = {class_of_automorphism(*be, "X", "phi"), class_of_automorphism(*be, "S", "Phi"),
            class_of_automorphism(*be, "S", "Phi")};
  DoubleSes col{"X", "S", "S", "i", "sh", "i", "sh"};
  w.cols = {gen::zeros(*be), col, col};
  CHECK_THROWS_AS(relation_from_3x3(be, w), RowOrColumnNotExact);
  be->declare_exact("i", "sh");
  CHECK_THROWS_AS(relation_from_3x3(be, w), DiagramNotCommutative);
  be->declare_commutes({"phi", "i"}, {"i", "Phi"});
  CHECK_THROWS_AS(relation_from_3x3(be, w), DiagramNotCommutative);
  be->declare_commutes({"Phi", "sh"}, {"sh", "Phi"});
  Relation r = relation_from_3x3(be, w);
  CHECK(r.difference().terms.size() == 1);
}

TEST_CASE("declared composition table") {
  DeclaredBackend be;
  be.add_formal_object("A");
  be.add_formal_object("B");
  be.add_formal_arrow("f", "A", "B");
  be.add_formal_arrow("g", "B", "A");
  be.add_formal_arrow("h", "A", "A");
  CHECK_FALSE(be.equal({"f", "g"}, {be.identity("A")}));
  be.declare_composite("f", "g", be.identity("A"));
  CHECK(be.equal({"f", "g"}, {be.identity("A")}));
  CHECK(be.equal({"f", "g", "h"}, {"h"}));
  be.declare_composite("h", "h", "0");
  CHECK(be.equal({"h", "f", "g", "h"}, {be.zero("A", "A")}));
  CHECK(be.equal({"f", be.zero("B", "B")}, {be.zero("A", "B")}));
  CHECK_FALSE(be.equal({"f"}, {be.zero("A", "B")}));
  CHECK_THROWS_AS(be.declare_composite("f", "h", "0"), ShapeMismatch);
  CHECK_THROWS_AS(be.equal({"f", "f"}, {"f"}), ShapeMismatch);
}

TEST_CASE("reduce") {
  K1Expression g;
  g.terms["g"] = 1;
  g.labels["g"] = "g";

  Reduction none = reduce(g * 3, {});
  CHECK(none.normal_form == g * 3);
  CHECK(none.invariants == std::vector<Integer>{0});
  CHECK(none.coordinates == std::vector<Integer>{3});
  CHECK(none.certificate.empty());

  Relation twice;
  twice.lhs = g * 2;
  Reduction red = reduce(g * 3, {twice});
  CHECK(red.normal_form == g);
  CHECK(red.invariants == std::vector<Integer>{2});
  CHECK(red.coordinates == std::vector<Integer>{1});
  CHECK(red.certificate == std::vector<Integer>{1});
  CHECK(check_certificate(g * 3, {twice}, red));
  CHECK(red.str() == "group Z/2\ncoordinates (1)\nnormal form [g]\ncertificate (1)");
  CHECK(reduce(g * 4, {twice}).is_zero());
  CHECK(reduce(K1Expression{}, {}).is_zero());
}

TEST_CASE("reduce agrees with membership in the relation lattice") {
  gen::Rng rng(71);
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  auto random_expr = [&](long range) {
    K1Expression e;
    for (const auto& n : names) {
      long c = gen::uniform(rng, -range, range);
      if (c) e.terms[n] = c;
    }
    return e;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Relation> rels(static_cast<size_t>(gen::uniform(rng, 0, 4)));
    for (auto& r : rels) r.lhs = random_expr(3);
    // a combination of relations reduces to zero
    K1Expression in;
    for (const auto& r : rels) in += r.lhs * Integer(gen::uniform(rng, -3, 3));
    Reduction z = reduce(in, rels);
    CHECK(z.is_zero());
    CHECK(check_certificate(in, rels, z));
    // any expression: certificate holds and the normal form is stable
    K1Expression e = random_expr(9);
    Reduction red = reduce(e, rels);
    CHECK(check_certificate(e, rels, red));
    Reduction again = reduce(red.normal_form, rels);
    CHECK(again.normal_form == red.normal_form);
    CHECK(again.coordinates == red.coordinates);
    // equal classes have equal normal forms
    K1Expression shifted = e + in;
    CHECK(reduce(shifted, rels).normal_form == red.normal_form);
  }
}

TEST_CASE("swindle replay over random GL2(Z)") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    ZMatrix phi = gen::gl_n(rng, 2);
    SwindleReplay s = swindle_replay(phi);
    CHECK(s.reduction.is_zero());
    CHECK(check_certificate(s.target, s.relations(), s.reduction));
    for (const auto& r : s.relations()) CHECK(replays(r));
    CHECK(*modulus_identity_holds(s.lattice_torus));
  }
  CHECK_THROWS_AS(swindle_replay(zmat({{2, 0}, {0, 1}})), NotAnAutomorphism);
}

TEST_CASE("random computed diagrams map to modulus identities") {
  gen::Rng rng(99);
  auto be = std::make_shared<ComputedBackend>();
  RelationStore store;
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    ThreeByThree d = gen::computed_diagram(rng, *be, "d" + std::to_string(trial) + "_");
    Relation r;
    try {
      r = relation_from_3x3(be, d);
    } catch (const Undecided&) {
      continue;
    } catch (const RowOrColumnNotExact&) {
      continue;
    }
    store.add(r);
    ++built;
  }
  CHECK(built >= 40);
  for (const auto& r : store.snapshot()) {
    CHECK(replays(r));
    auto ok = modulus_identity_holds(r);
    REQUIRE(ok.has_value());
    CHECK(*ok);
  }
}

TEST_CASE("relation store snapshots under concurrent appends") {
  SwindleReplay s = swindle_replay(zmat({{0, 1}, {1, 0}}));
  RelationStore store;
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&] {
      for (int k = 0; k < 50; ++k) {
        store.add(s.lattice_torus);
        CHECK(store.snapshot().size() >= 1);
      }
    });
  for (auto& w : workers) w.join();
  CHECK(store.size() == 200);
}

TEST_CASE("diagram files") {
  const char* text = R"(# the swindle for phi = -1 on Z
backend declared
object X = Z
object XR = R
object T = T
object S formal
arrow phi : X -> X = [Z -> Z] { (Z,Z): -1 }
arrow phiR : XR -> XR = [R -> R] {
  (R,R): -1
}
arrow incl : X -> XR = [Z -> R] { (Z,R): 1 }
arrow proj : XR -> T = [R -> T] { (R,T): 1 }
arrow phiT : T -> T = [T -> T] { (T,T): -1 }
arrow Phi : S -> S
arrow i : X -> S
arrow sh : S -> S
iso Phi
exact i sh
commutes phi i = i Phi
commutes Phi sh = sh Phi
automorphism x : X phi
automorphism xr : XR phiR
automorphism t : T phiT
automorphism s : S Phi
dses z : 0 0 0 yin 0 0 yang 0 0
dses lt : X XR T yin incl proj yang incl proj
dses swindle : X S S yin i sh yang i sh
diagram lattice-torus rows x xr t cols z lt lt
diagram swindle rows x s s cols z swindle swindle
reduce xr
reduce 2 x - t
)";
  DiagramFile f = parse_diagram_file(text);
  CHECK(std::string(f.backend->kind()) == "declared");
  REQUIRE(f.diagrams.size() == 2);
  std::vector<Relation> rels;
  for (const auto& [name, d] : f.diagrams) rels.push_back(relation_from_3x3(f.backend, d, name));
  CHECK(rels[1].difference() == dses_generator(*f.backend, f.sequences.at("x")));
  REQUIRE(f.targets.size() == 2);
  K1Expression xr = f.expression(f.targets[0]);
  Reduction red = reduce(xr, rels);
  CHECK_FALSE(red.is_zero());  // [T] = 0 is missing
  CHECK(check_certificate(xr, rels, red));
  K1Expression other = f.expression(f.targets[1]);
  CHECK(other == dses_generator(*f.backend, f.sequences.at("x")) * 2 - dses_generator(*f.backend, f.sequences.at("t")));

  auto error_line = [](const std::string& t) {
    try {
      parse_diagram_file(t);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(error_line("object X = Z\n") == 1);
  CHECK(error_line("backend computed\nobject X = R^-1\n") == 2);
  CHECK(error_line("backend computed\nobject S formal\n") == 2);
  CHECK(error_line("backend computed\nobject X = Z\narrow f : X -> X = [Z -> Z] {\n (Z,Z): 1/2 }\n") == 4);
  CHECK(error_line("backend computed\nobject X = Z\ndses d : X X X yin 1 1 yang 1 g\n") == 3);
  CHECK(error_line("backend declared\nfrobnicate\n") == 2);
  CHECK(error_line("backend computed\nobject X = Z\nobject Y = R\narrow f : X -> Y = [Z -> Z] { (Z,Z): 1 }\n") == 4);
}

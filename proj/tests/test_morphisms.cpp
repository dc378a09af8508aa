#include "doctest.h"
#include "oracles.hpp"

using namespace lca;

namespace {
LcaMorphism M(const std::string& s) { return LcaMorphism::parse(s); }
}  // namespace

TEST_CASE("composition examples") {
  CHECK(compose(M("[Z -> R] { (Z,R): 1 }"), M("[R -> T] { (R,T): 1 }")).is_zero());
  CHECK(compose(M("[Zp(5) -> Qp(5)] { (Zp,Qp): 1 }"), M("[Qp(5) -> Qp(5)] { (Qp,Qp): 5 }")) ==
        M("[Zp(5) -> Qp(5)] { (Zp,Qp): 5 }"));
  CHECK(compose(LcaMorphism::scalar(LcaObject::real(), 2), LcaMorphism::scalar(LcaObject::real(), 3)) ==
        LcaMorphism::scalar(LcaObject::real(), 6));
  CHECK_THROWS_AS(compose(M("[Z -> R] { (Z,R): 1 }"), M("[Z -> R] { (Z,R): 1 }")), SourceTargetMismatch);
  // the Z_2-adic unit 1/3 acts as 1 on the 2-torsion of T
  LcaMorphism into_z2 = M("[Z -> Zp(2)] { (Z,Zp): 1/3 }");
  LcaMorphism half = M("[Zp(2) -> T] { (Zp,T): 1/2 }");
  CHECK(compose(into_z2, half) == M("[Z -> T] { (Z,T): 1/2 }"));
}

TEST_CASE("entries are normalized per block") {
  CHECK(M("[Z -> T] { (Z,T): 5/2 }") == M("[Z -> T] { (Z,T): 1/2 }"));
  CHECK(M("[Z -> Z/4] { (Z,F): 7 }").matrix()(0, 0) == 3);
  CHECK(M("[Z -> Pr(3)] { (Z,Pr): 1/6 }") == M("[Z -> Pr(3)] { (Z,Pr): 2/3 }"));
  CHECK(M("[R -> T] { (R,T): 3/2 }").matrix()(0, 0) == make_rational(3, 2));
  CHECK_THROWS_AS(M("[R -> Z] { (R,Z): 1 }"), ParseError);
  CHECK_THROWS_AS(LcaMorphism(LcaObject::real(), LcaObject::lattice(), QMatrix::identity(1)), InvalidMorphism);
  CHECK_THROWS_AS(M("[Zp(5) -> Zp(5)] { (Zp,Zp): 1/5 }"), ParseError);
  CHECK_THROWS_AS(M("[Z/2 -> Z/3] { (F,F): 1 }"), ParseError);
  CHECK_THROWS_AS(M("[T -> T] { (T,T): 1/2 }"), ParseError);
  CHECK_THROWS_AS(M("[Z/4 -> T] { (F,T): 1/3 }"), ParseError);
}

TEST_CASE("morphism grammar round trip") {
  const char* texts[] = {
      "[Z -> R] { (Z,R): 1 }",
      "[Zp(5) -> Qp(5)] { (Zp(5),Qp(5)): 1 }",
      "[R^2 + Z -> R^2 + T] { (R,R): 1 0; 0 2, (Z,R): 1; -1/2, (Z,T): 1/3 }",
      "[Z/4 + Z/12 -> T] { (F,T): 1/4 1/12 }",
      "[R -> Z] { }",
  };
  for (const char* t : texts) {
    LcaMorphism f = M(t);
    CHECK(M(f.str()) == f);
  }
  CHECK(M("[Zp(5) -> Qp(5)] { (Zp,Qp): 1 }").str() == "[Zp(5) -> Qp(5)] { (Zp(5),Qp(5)): 1 }");
  CHECK(M("[Z -> R] {}").is_zero());
  CHECK_THROWS_AS(M("[Z -> R] { (Z,R): 1 2 }"), ParseError);
  CHECK_THROWS_AS(M("[Z -> R] { (Z,T): 1 }"), ParseError);
  CHECK_THROWS_AS(M("[Zp(2) + Zp(3) -> Qp(2)] { (Zp,Qp): 1 }"), ParseError);
}

TEST_CASE("dual examples") {
  LcaMorphism a = LcaMorphism::scalar(LcaObject::real(), make_rational(-3, 7));
  CHECK(dual_morphism(a) == a);
  CHECK(dual_morphism(M("[Z -> Z] { (Z,Z): 2 }")) == M("[T -> T] { (T,T): 2 }"));
  LcaObject g = LcaObject::parse("R + Z^2 + T + Z/6 + Zp(3) + Pr(5)");
  CHECK(dual_morphism(LcaMorphism::identity(g)) == LcaMorphism::identity(dual(g)));
  CHECK(dual_morphism(M("[Z -> R] { (Z,R): 1 }")) == M("[R -> T] { (R,T): 1 }"));
  CHECK(dual_morphism(M("[Zp(3) -> Qp(3)] { (Zp,Qp): 1 }")) == M("[Qp(3) -> Pr(3)] { (Qp,Pr): 1 }"));
}

TEST_CASE("composition agrees with evaluation on elements") {
  gen::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    LcaObject a = gen::object(rng), b = gen::object(rng), c = gen::object(rng);
    LcaMorphism f = gen::morphism(rng, a, b), g = gen::morphism(rng, b, c);
    LcaMorphism gf = compose(f, g);
    for (int k = 0; k < 3; ++k) {
      auto x = oracle::random_element(rng, a);
      CHECK(oracle::apply(gf, x) == oracle::apply(g, oracle::apply(f, x)));
    }
  }
}

TEST_CASE("dual morphism is adjoint under the character pairing") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    LcaObject a = gen::object(rng), b = gen::object(rng);
    LcaMorphism f = gen::morphism(rng, a, b);
    LcaMorphism fd = dual_morphism(f);
    CHECK(fd.source() == dual(b));
    CHECK(fd.target() == dual(a));
    CHECK(dual_morphism(fd) == f);
    for (int k = 0; k < 3; ++k) {
      auto x = oracle::random_element(rng, a);
      auto chi = oracle::random_element(rng, dual(b));
      CHECK(oracle::pairing(b, oracle::apply(f, x), chi) == oracle::pairing(a, x, oracle::apply(fd, chi)));
    }
  }
}

TEST_CASE("composition is associative, contravariant under duality, and closed") {
  gen::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    LcaObject a = gen::object(rng), b = gen::object(rng), c = gen::object(rng), d = gen::object(rng);
    LcaMorphism f = gen::morphism(rng, a, b), g = gen::morphism(rng, b, c), h = gen::morphism(rng, c, d);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(dual_morphism(compose(f, g)) == compose(dual_morphism(g), dual_morphism(f)));
    CHECK(compose(LcaMorphism::identity(a), f) == f);
    CHECK(compose(f, LcaMorphism::identity(b)) == f);
  }
  // closure: composites always pass the Hom-table check inside the constructor
  for (int trial = 0; trial < 10000; ++trial) {
    LcaObject a = gen::object(rng, 1), b = gen::object(rng, 1), c = gen::object(rng, 1);
    LcaMorphism gf = compose(gen::morphism(rng, a, b), gen::morphism(rng, b, c));
    auto ac = a.components(), cc = c.components();
    for (size_t i = 0; i < cc.size(); ++i)
      for (size_t j = 0; j < ac.size(); ++j)
        if (gf.matrix()(i, j) != 0) CHECK(entry_allowed(ac[j], cc[i]));
  }
}

TEST_CASE("direct sums and layouts") {
  LcaMorphism two = M("[Z/2 -> Z/2] { (F,F): 1 }");
  LcaMorphism three = M("[Z/3 -> Z/3] { (F,F): 2 }");
  LcaMorphism s = direct_sum(two, three);
  CHECK(s.source().str() == "Z/6");
  // x |-> x on Z/2 and x |-> 2x on Z/3 is x |-> 5x on Z/6
  CHECK(s.matrix()(0, 0) == 5);
  gen::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    LcaObject a = gen::object(rng), b = gen::object(rng);
    LcaMorphism f = gen::morphism(rng, a, b);
    Layout la = Layout::of(a), lb = Layout::of(b);
    CHECK(canonical_morphism(la, lb, raw_matrix(f, la, lb)) == f);
  }
}

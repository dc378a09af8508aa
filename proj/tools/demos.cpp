#include "demos.hpp"

#include "lcakit/adele.hpp"
#include "lcakit/haar.hpp"
#include "lcakit/homological.hpp"
#include "lcakit/nenashev.hpp"
#include "lcakit/order.hpp"

namespace lca::cli {

namespace {

const char* kExample = "worked example";
const char* kComputed = "independent computation";
const char* kDefinition = "definition";

std::string yes(bool b) { return b ? "true" : "false"; }

std::string shape(const ExactSequenceSpec& s) { return s.sub.str() + " -> " + s.mid.str() + " -> " + s.quot.str(); }

LcaMorphism unit_map(const LcaObject& a, const LcaObject& b) { return LcaMorphism(a, b, QMatrix::identity(a.dim())); }

std::vector<DemoCheck> ex_det_a1() {
  LcaObject Z = LcaObject::lattice(), R = LcaObject::real(), T = LcaObject::torus();
  ExactSequenceSpec s = ExactSequenceSpec::of(unit_map(Z, R), unit_map(R, T));
  Ladder minus{s, LcaMorphism::scalar(Z, -1), LcaMorphism::scalar(R, -1), LcaMorphism::scalar(T, -1)};
  return {
      {"Z->R->T exact", "Exact", to_string(check_exact(s)), kExample},
      {"modulus(-1 on R)", "1", modulus(LcaMorphism::scalar(R, -1)).str(), kExample},
      {"modulus(-1 on Z)", "1", modulus(LcaMorphism::scalar(Z, -1)).str(), kDefinition},
      {"modulus(-1 on T)", "1", modulus(LcaMorphism::scalar(T, -1)).str(), kDefinition},
      {"ladder (-1,-1,-1) multiplicative", "true", yes(check_modulus_multiplicativity(minus)), kExample},
      {"seq_factor(Z->R->T)", "1", seq_factor(s).str(), kDefinition},
  };
}

std::vector<DemoCheck> ex_det_a2() {
  std::vector<DemoCheck> out;
  for (Prime p : {2ul, 3ul, 5ul, 7ul}) {
    std::string tag = "p=" + std::to_string(p) + " ";
    LcaObject zp = LcaObject::zp(p), qp = LcaObject::qp(p), pr = LcaObject::pruefer(p);
    ExactSequenceSpec s = ExactSequenceSpec::of(unit_map(zp, qp), unit_map(qp, pr));
    Rational a(1 + p);
    Ladder unit{s, LcaMorphism::scalar(zp, a), LcaMorphism::scalar(qp, a), LcaMorphism::scalar(pr, a)};
    out.push_back({tag + "Zp->Qp->Qp/Zp exact", "Exact", to_string(check_exact(s)), kExample});
    out.push_back({tag + "ladder (1+p) multiplicative", "true", yes(check_modulus_multiplicativity(unit)), kExample});
    out.push_back({tag + "modulus(1+p on Qp)", "1", modulus(LcaMorphism::scalar(qp, a)).str(), kComputed});
    out.push_back({tag + "modulus(p on Qp)", "1/" + std::to_string(p), modulus(LcaMorphism::scalar(qp, Rational(p))).str(),
                   kExample});
    out.push_back({tag + "cg/discrete decomposition of Qp",
                   "Zp(" + std::to_string(p) + ") -> Qp(" + std::to_string(p) + ") -> Pr(" + std::to_string(p) + ")",
                   shape(decompose_cg_discrete(qp)), kExample});
  }
  return out;
}

std::vector<DemoCheck> modulus_table() {
  LcaObject R = LcaObject::real();
  std::vector<DemoCheck> out = {
      {"modulus(3 on R)", "3", modulus(LcaMorphism::scalar(R, 3)).str(), kExample},
      {"modulus(-3/2 on R)", "3/2", modulus(LcaMorphism::scalar(R, Rational(-3, 2))).str(), kDefinition},
      {"modulus(5 on Z/6)", "1", modulus(LcaMorphism::scalar(LcaObject::cyclic(6), 5)).str(), kExample},
      {"modulus(2 on Zp(3))", "1", modulus(LcaMorphism::scalar(LcaObject::zp(3), 2)).str(), kExample},
  };
  for (Prime p : {2ul, 3ul, 5ul, 7ul}) {
    LcaObject q = LcaObject::qp(p);
    out.push_back({"modulus(p on Qp(" + std::to_string(p) + "))", "1/" + std::to_string(p),
                   modulus(LcaMorphism::scalar(q, Rational(p))).str(), kExample});
    out.push_back({"modulus(1/p^2 on Qp(" + std::to_string(p) + "))", std::to_string(p * p),
                   modulus(LcaMorphism::scalar(q, Rational(1, p * p))).str(), kDefinition});
  }
  return out;
}

std::vector<DemoCheck> example_a1() {
  auto be = std::make_shared<ComputedBackend>();
  LcaObject R = LcaObject::real();
  be->add_object("X", R);
  be->add_arrow("two", "X", "X", LcaMorphism::scalar(R, 2));
  DoubleSes d = class_of_automorphism(*be, "X", "two");
  DoubleSes one = class_of_automorphism(*be, "X", be->identity("X"));
  return {
      {"generator of 2 on R", "[(0 => X => X; 0, two | 0, 1)]", dses_generator(*be, d).str(), kExample},
      {"generator of the identity", "0", dses_generator(*be, one).str(), kExample},
      {"modulus of the generator", "2", dses_modulus(*be, d)->str(), kComputed},
  };
}

std::string equation(const Relation& r) { return r.lhs.str() + " = " + r.rhs.str(); }

std::vector<DemoCheck> nenashev_lrr() {
  ZMatrix phi(2, 2);
  phi(0, 0) = 2, phi(0, 1) = 1, phi(1, 0) = 1, phi(1, 1) = 1;
  SwindleReplay s = swindle_replay(phi);
  std::string x = "[(0 => X => X; 0, phi | 0, 1)]", xr = "[(0 => XR => XR; 0, phiR | 0, 1)]",
              t = "[(0 => T => T; 0, phiT | 0, 1)]";
  std::string certificate;
  for (size_t i = 0; i < s.reduction.certificate.size(); ++i)
    certificate += (i ? ", " : "") + s.reduction.certificate[i].get_str();
  return {
      {"lattice-torus relation", "-" + xr + " + " + t + " + " + x + " = 0", equation(s.lattice_torus), kExample},
      {"discrete swindle", x + " = 0", equation(s.discrete_swindle), kExample},
      {"compact swindle", t + " = 0", equation(s.compact_swindle), kExample},
      {"reduction of " + xr, "0", s.reduction.normal_form.str(), kExample},
      {"certificate", "-1, 1, 1", certificate, kComputed},
      {"certificate verifies", "true", yes(check_certificate(s.target, s.relations(), s.reduction)), kComputed},
      {"modulus identity on the lattice-torus relation", "true", yes(*modulus_identity_holds(s.lattice_torus)),
       kComputed},
  };
}

std::vector<DemoCheck> m_alpha() {
  std::vector<DemoCheck> out;
  for (long a = 0; a < 3; ++a) {
    ExtensionPresentation e = build_M_alpha(3, a);
    std::string tag = "n=3 alpha=" + std::to_string(a) + " ";
    out.push_back({tag + "sequence", "R^2 + T -> R^2 + Z + T -> Z", shape(e.sequence), kComputed});
    out.push_back({tag + "exact", "Exact", to_string(check_exact(e.sequence)), kComputed});
    out.push_back({tag + "splits", yes(a == 0), yes(splits_algebraically(e)), kExample});
  }
  out.push_back({"H^2(C3, Z)", "Z/3", cyclic_cohomology(3, 2).str(), kExample});
  return out;
}

std::vector<DemoCheck> product_formula() {
  std::vector<DemoCheck> out;
  Rational x(6, 5);
  std::set<Prime> places = support(x);
  std::string factors;
  for (const auto& f : local_factors(x, places))
    factors += (factors.empty() ? "" : " ") + (f.place ? std::to_string(f.place) : std::string("inf")) + ":" +
               to_string(f.value);
  out.push_back({"local factors of 6/5", "inf:6/5 2:1/2 3:1/3 5:5", factors, kComputed});
  out.push_back({"idele modulus of 6/5", "1", idele_modulus(x, places).str(), kComputed});
  int holds = 0, primes = 0;
  for (Prime p = 2; p <= 100; ++p) {
    if (support(Rational(p)) != std::set<Prime>{p}) continue;
    ++primes;
    holds += product_formula_check(Rational(p));
  }
  out.push_back({"primes up to 100 satisfying the product formula", "25", std::to_string(holds), kExample});
  out.push_back({"primes up to 100", "25", std::to_string(primes), kDefinition});
  return out;
}

std::vector<DemoCheck> gamma3_order() {
  Order g = Order::gamma3();
  OrderReport r = validate_order(g);
  // regular trace on M_3(Q) is 3 tr, and the basis 5^max(0,i-j) e_ij scales the Gram
  // determinant by 5^(2 (1 + 2 + 1))
  Integer expected = Integer(19683) * Integer(390625);
  return {
      {"rank", "9", std::to_string(g.rank()), kDefinition},
      {"associative", "true", yes(r.associative), kExample},
      {"unital", "true", yes(r.unital), kExample},
      {"semisimple", "true", yes(r.semisimple), kExample},
      {"|Gram determinant|", expected.get_str(), Integer(abs(r.gram_det)).get_str(), kComputed},
      {"opposite of the opposite", "Gamma3", opposite_order(opposite_order(g)).name(), kDefinition},
  };
}

std::vector<DemoCheck> cyclic_cohomology_demo() {
  std::vector<DemoCheck> out;
  const char* expected[] = {"Z", "0", "Z/5", "0", "Z/5", "0", "Z/5"};
  for (size_t k = 0; k <= 6; ++k)
    out.push_back({"H^" + std::to_string(k) + "(C5, Z)", expected[k], cyclic_cohomology(5, k).str(), kExample});
  out.push_back({"Ext^1 classes for C4", "Z/4", ext1_classes(4).str(), kExample});
  return out;
}

std::vector<DemoCheck> dihedral_cohomology() {
  return {
      {"H^1(D6, Z)", "0", bar_cohomology(dihedral_table(3), 1).str(), kComputed},
      {"H^2(D6, Z)", "Z/2", bar_cohomology(dihedral_table(3), 2).str(), kExample},
      {"H^2(D8, Z)", "Z/2 + Z/2", bar_cohomology(dihedral_table(4), 2).str(), kComputed},
  };
}

std::vector<DemoCheck> duality() {
  LcaObject g = LcaObject::parse("R + Z^2"), zp = LcaObject::zp(5);
  LcaObject h = LcaObject::parse("R^2 + Z + T + Z/4 + Qp(3) + Zp(5)");
  PredicateSet a = predicates(h), b = predicates(dual(h));
  return {
      {"dual(R + Z^2)", "R + T^2", dual(g).str(), kExample},
      {"dual(Zp(5))", "Pr(5)", dual(zp).str(), kExample},
      {"dual(0)", "0", dual(LcaObject()).str(), kDefinition},
      {"dual(dual(g)) = g", h.str(), dual(dual(h)).str(), kDefinition},
      {"cg(g) = nss(dual g)", yes(a.is_compactly_generated), yes(b.is_nss), kExample},
      {"compact(g) = discrete(dual g)", yes(a.is_compact), yes(b.is_discrete), kExample},
  };
}

std::vector<DemoCheck> decompositions() {
  LcaObject g = LcaObject::parse("R + Z + T^2 + Z/3");
  ExactSequenceSpec c = compact_part(g);
  auto [v, rest] = split_vector_summand(LcaObject::parse("R^2 + Z"));
  return {
      {"compact part of R + Z + T^2 + Z/3", "T^2 + Z/3 -> R + Z + T^2 + Z/3 -> R + Z", shape(c), kComputed},
      {"compact part exact", "Exact", to_string(check_exact(c)), kComputed},
      {"cg/discrete of Pr(3)", "0 -> Pr(3) -> Pr(3)", shape(decompose_cg_discrete(LcaObject::pruefer(3))),
       kComputed},
      {"vector summand of R^2 + Z", "R^2 | Z", v.str() + " | " + rest.str(), kExample},
  };
}

std::vector<DemoCheck> det_square_demo() {
  LcaObject Z = LcaObject::lattice(), R = LcaObject::real();
  DetSquare d = det_square(LcaMorphism::scalar(Z, 2), unit_map(Z, R));
  return {
      {"c(2Z in R)", "2", d.c13.str(), kComputed},
      {"c(Z/2 in T)", "1", d.c_quot.str(), kComputed},
      {"c(Z in R)", "1", d.c23.str(), kComputed},
      {"c(2Z in Z)", "2", d.c12.str(), kComputed},
      {"square holds", "true", yes(d.holds()), kExample},
  };
}

std::vector<DemoCheck> proj_inj() {
  Order c2 = Order::cyclic_group_ring(2);
  // Z[C2] is free of rank one over itself
  SummandCertificate free{1, QMatrix::identity(2), QMatrix::identity(2)};
  return {
      {"Z[C2] without a certificate", "NeedsCertificate",
       to_string(classify_proj_inj(regular_module(c2, {Kind::Z}))), kDefinition},
      {"R[C2]", "Both", to_string(classify_proj_inj(regular_module(c2, {Kind::R}))), kExample},
      {"Z[C2]", "Projective", to_string(classify_proj_inj(regular_module(c2, {Kind::Z}), false, &free)), kComputed},
      {"T[C2]", "Injective", to_string(classify_proj_inj(regular_module(c2, {Kind::T}), false, &free)), kComputed},
      {"Qp(5)[C2]", "Neither", to_string(classify_proj_inj(regular_module(c2, {Kind::Qp, 0, 5}))), kComputed},
  };
}

}  // namespace

const std::vector<DemoScenario>& demo_registry() {
  static const std::vector<DemoScenario> registry = {
      {"ex-detA1", "Z -> R -> T, the modulus of -1 and its ladder", ex_det_a1},
      {"ex-detA2", "Zp -> Qp -> Qp/Zp, p-adic units and the modulus of p", ex_det_a2},
      {"modulus-table", "moduli of scalars on R, Qp and compact or discrete groups", modulus_table},
      {"det-square", "the determinant square for 2Z in Z in R", det_square_demo},
      {"duality", "Pontryagin duality and the cg/nss exchange", duality},
      {"decompositions", "compact part, cg/discrete sequence and vector summand", decompositions},
      {"product-formula", "local factors and the product formula", product_formula},
      {"gamma3-order", "the order Gamma3 in M_3(Q)", gamma3_order},
      {"proj-inj", "projective and injective modules over Z[C2]", proj_inj},
      {"cyclic-cohomology", "H^k(C_n, Z) from the periodic resolution", cyclic_cohomology_demo},
      {"dihedral-cohomology", "H^k(D_2n, Z) from normalized bar cochains", dihedral_cohomology},
      {"m-alpha", "the extensions M_alpha and their splitting", m_alpha},
      {"example-A1", "automorphisms of vector modules as double sequences", example_a1},
      {"nenashev-lrr", "the swindle in the double-sequence presentation", nenashev_lrr},
  };
  return registry;
}

std::vector<std::string> run_scenario(const DemoScenario& s, bool& all_pass) {
  std::vector<std::string> lines;
  try {
    for (const auto& c : s.run()) {
      all_pass = all_pass && c.pass();
      lines.push_back(s.id + "/" + c.name + "\t" + c.expected + "\t" + c.got + "\t" + (c.pass() ? "PASS" : "FAIL"));
    }
  } catch (const std::exception& e) {
    all_pass = false;
    lines.push_back(s.id + "\t-\terror: " + e.what() + "\tFAIL");
  }
  return lines;
}

}  // namespace lca::cli

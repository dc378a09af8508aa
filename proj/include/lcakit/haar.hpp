#pragma once

#include "lcakit/exact.hpp"

namespace lca {

// Canonical Haar measures, summand by summand: Lebesgue on R, counting on Z and Q_p/Z_p,
// total mass 1 on T, Z_p and finite summands, and mass 1 on Z_p inside Q_p.

// |f| with mu(f E) = |f| mu(E), for an automorphism f.
PositiveRational modulus(const LcaMorphism& f);

// The c with canonical(mid) = c * (canonical(sub) x canonical(quot)).
PositiveRational seq_factor(const ExactSequenceSpec& seq);

// An exact sequence with automorphisms f, g, h of sub, mid, quot commuting with its maps.
struct Ladder {
  ExactSequenceSpec seq;
  LcaMorphism f, g, h;
};
// Whether |g| = |f| |h|; throws NotExact, NotAnAutomorphism or NotCommutative on bad input.
bool check_modulus_multiplicativity(const Ladder& ladder);

// G1 -m1-> G2 -m2-> G3 and the four sequences of its quotients.
struct DetSquare {
  ExactSequenceSpec g1_g3, q21_q31, g2_g3, g1_g2;
  PositiveRational c13, c_quot, c23, c12;
  // c13 * c_quot == c23 * c12
  bool holds() const { return c13 * c_quot == c23 * c12; }
};
DetSquare det_square(const LcaMorphism& m1, const LcaMorphism& m2);
bool check_det_square(const LcaObject& g1, const LcaObject& g2, const LcaObject& g3, const LcaMorphism& m1,
                      const LcaMorphism& m2);

}  // namespace lca

#pragma once

#include <string>

#include "haar_fixtures.hpp"
#include "lcakit/nenashev.hpp"

namespace lca::gen {

// Random element of GL_n(Z) as a product of elementary matrices and sign changes.
inline ZMatrix gl_n(Rng& rng, size_t n, int steps = 6) {
  ZMatrix m = ZMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    size_t i = static_cast<size_t>(uniform(rng, 0, long(n) - 1));
    size_t j = static_cast<size_t>(uniform(rng, 0, long(n) - 1));
    if (i == j) {
      if (uniform(rng, 0, 1))
        for (size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
      continue;
    }
    Integer k = uniform(rng, -3, 3);
    for (size_t c = 0; c < n; ++c) m(i, c) += k * m(j, c);
  }
  return m;
}

inline ThreeByThree transpose(const ThreeByThree& d) {
  ThreeByThree t;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) t.objects[i][j] = d.objects[j][i];
  t.rows = d.cols;
  t.cols = d.rows;
  return t;
}

inline DoubleSes zeros(Backend& be) {
  std::string z = be.zero("0", "0");
  return {"0", "0", "0", z, z, z, z};
}

// Rows (0 => A => A; f, 1), (0 => B => B; g, 1), (0 => C => C; h, 1) over the ladder's
// sequence; names are prefixed so several diagrams share one backend.
inline ThreeByThree ladder_diagram(ComputedBackend& be, const std::string& tag, const Ladder& l) {
  std::string A = tag + "A", B = tag + "B", C = tag + "C";
  be.add_object(A, l.seq.sub);
  be.add_object(B, l.seq.mid);
  be.add_object(C, l.seq.quot);
  be.add_arrow(tag + "m", A, B, l.seq.monic);
  be.add_arrow(tag + "e", B, C, l.seq.epic);
  be.add_arrow(tag + "f", A, A, l.f);
  be.add_arrow(tag + "g", B, B, l.g);
  be.add_arrow(tag + "h", C, C, l.h);
  ThreeByThree d;
  d.objects = {{{"0", A, A}, {"0", B, B}, {"0", C, C}}};
  d.rows = {class_of_automorphism(be, A, tag + "f"), class_of_automorphism(be, B, tag + "g"),
            class_of_automorphism(be, C, tag + "h")};
  DoubleSes col{A, B, C, tag + "m", tag + "e", tag + "m", tag + "e"};
  d.cols = {zeros(be), col, col};
  return d;
}

// Rows (0 => X => X; phi, 1) and (0 => X => X; phi c, d) over the columns X => X -> 0 with
// monics (1, 1) and (c, d).
inline ThreeByThree composite_diagram(ComputedBackend& be, const std::string& tag, const LcaObject& x,
                                      const LcaMorphism& phi, const LcaMorphism& c, const LcaMorphism& d) {
  std::string X = tag + "X";
  be.add_object(X, x);
  be.add_arrow(tag + "phi", X, X, phi);
  be.add_arrow(tag + "c", X, X, c);
  be.add_arrow(tag + "d", X, X, d);
  be.add_arrow(tag + "phic", X, X, compose(phi, c));
  std::string z0X = be.zero("0", X), zX0 = be.zero(X, "0"), one = be.identity(X);
  ThreeByThree t;
  t.objects = {{{"0", X, X}, {"0", X, X}, {"0", "0", "0"}}};
  t.rows = {DoubleSes{"0", X, X, z0X, tag + "phi", z0X, one}, DoubleSes{"0", X, X, z0X, tag + "phic", z0X, tag + "d"},
            zeros(be)};
  t.cols = {zeros(be), DoubleSes{X, X, "0", one, zX0, one, zX0}, DoubleSes{X, X, "0", tag + "c", zX0, tag + "d", zX0}};
  return t;
}

// One random computed diagram, of either shape and either orientation.
inline ThreeByThree computed_diagram(Rng& rng, ComputedBackend& be, const std::string& tag) {
  ThreeByThree d;
  if (uniform(rng, 0, 1)) {
    d = ladder_diagram(be, tag, ladder(rng, true));
  } else {
    LcaObject x = local_object(rng, small_prime(rng), 2);
    d = composite_diagram(be, tag, x, automorphism(rng, x).fwd, automorphism(rng, x).fwd, automorphism(rng, x).fwd);
  }
  return uniform(rng, 0, 1) ? transpose(d) : d;
}

}  // namespace lca::gen

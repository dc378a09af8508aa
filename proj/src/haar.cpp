#include "lcakit/haar.hpp"

#include "place.hpp"

namespace lca {

using detail::Arrow;
using detail::LocalGroup;
using detail::PlaceSplit;

PositiveRational modulus(const LcaMorphism& f) {
  if (!is_automorphism(f)) throw NotAnAutomorphism(f.str() + " is not an automorphism");
  const LcaObject& g = f.source();
  Rational m = 1;
  if (g.real_rank()) m *= abs(det(f.block({Kind::R}, {Kind::R})));
  for (const auto& [p, r] : g.padic_parts())
    if (r.qp) m *= padic_abs(det(f.block({Kind::Qp, p}, {Kind::Qp, p})), p);
  return PositiveRational(m);
}

namespace {

std::vector<size_t> free_positions(const LocalGroup& g) {
  std::vector<size_t> out;
  for (size_t i = 0; i < g.free.size(); ++i)
    if (g.free[i]) out.push_back(i);
  return out;
}

void require_exact(const ExactSequenceSpec& s) {
  Exactness e = check_exact(s);
  if (e == Exactness::Unknown) throw Undecided("exactness undecided for a sequence mixing places");
  if (e != Exactness::Exact) throw NotExact("sequence is not exact");
}

}  // namespace

PositiveRational seq_factor(const ExactSequenceSpec& s) {
  require_exact(s);
  PlaceSplit ps({s.sub, s.mid, s.quot}, {Arrow{0, 1, s.monic}, Arrow{1, 2, s.epic}});
  Rational c = 1;
  for (Prime place : ps.places()) {
    LocalGroup a = ps.local(0, place), b = ps.local(1, place), q = ps.local(2, place);
    auto fa = free_positions(a), fb = free_positions(b), fq = free_positions(q);
    // finite summands carry mass 1; at a prime this is already the unit-ball normalization
    if (place == 0) c *= make_rational(a.kappa * q.kappa, b.kappa);
    if (fb.empty()) continue;
    QMatrix f = ps.local_map(0, place).select_rows(fb).select_cols(fa);
    QMatrix g = ps.local_map(1, place).select_rows(fq).select_cols(fb);
    // lift the standard basis of the quotient's vector coordinates
    QMatrix lift;
    if (!solve(g, QMatrix::identity(fq.size()), lift)) throw Error("seq_factor: vector part not surjective");
    QMatrix frame = hstack(f, lift);
    if (frame.rows() != frame.cols()) throw Error("seq_factor: vector parts do not add up");
    Rational d = det(frame);
    c *= place == 0 ? Rational(abs(d)) : padic_abs(d, place);
  }
  return PositiveRational(c);
}

bool check_modulus_multiplicativity(const Ladder& l) {
  require_exact(l.seq);
  const std::pair<const LcaMorphism*, const LcaObject*> maps[] = {{&l.f, &l.seq.sub}, {&l.g, &l.seq.mid}, {&l.h, &l.seq.quot}};
  for (const auto& [m, g] : maps) {
    if (m->source() != *g || m->target() != *g) throw ShapeMismatch("ladder map on the wrong object");
    if (!is_automorphism(*m)) throw NotAnAutomorphism(m->str() + " is not an automorphism");
  }
  if (compose(l.seq.monic, l.g) != compose(l.f, l.seq.monic)) throw NotCommutative("left square does not commute");
  if (compose(l.seq.epic, l.h) != compose(l.g, l.seq.epic)) throw NotCommutative("right square does not commute");
  return modulus(l.g) == modulus(l.f) * modulus(l.h);
}

DetSquare det_square(const LcaMorphism& m1, const LcaMorphism& m2) {
  if (m1.target() != m2.source()) throw NotAFiltration("the two monics do not chain");
  for (const auto* m : {&m1, &m2}) {
    Admissibility a = classify(*m);
    if (a == Admissibility::Unknown) throw Undecided("admissibility undecided for " + m->str());
    if (a != Admissibility::AdmissibleMonic && a != Admissibility::Isomorphism)
      throw NotAFiltration(m->str() + " is not an admissible monic");
  }
  LcaMorphism m3 = compose(m1, m2);
  Cokernel c21(m1), c31(m3), c32(m2);
  LcaMorphism j = c21.descend(compose(m2, c31.projection()));
  LcaMorphism k = c31.descend(c32.projection());
  DetSquare d;
  d.g1_g3 = ExactSequenceSpec::of(m3, c31.projection());
  d.q21_q31 = ExactSequenceSpec::of(j, k);
  d.g2_g3 = ExactSequenceSpec::of(m2, c32.projection());
  d.g1_g2 = ExactSequenceSpec::of(m1, c21.projection());
  d.c13 = seq_factor(d.g1_g3);
  d.c_quot = seq_factor(d.q21_q31);
  d.c23 = seq_factor(d.g2_g3);
  d.c12 = seq_factor(d.g1_g2);
  return d;
}

bool check_det_square(const LcaObject& g1, const LcaObject& g2, const LcaObject& g3, const LcaMorphism& m1,
                      const LcaMorphism& m2) {
  if (m1.source() != g1 || m1.target() != g2 || m2.source() != g2 || m2.target() != g3)
    throw NotAFiltration("monics do not run G1 -> G2 -> G3");
  return det_square(m1, m2).holds();
}

}  // namespace lca

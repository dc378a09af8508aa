#include "lcakit/exact.hpp"

#include "place.hpp"

namespace lca {

using detail::Arrow;
using detail::LocalGroup;
using detail::PlaceSplit;

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::AdmissibleMonic: return "AdmissibleMonic";
    case Admissibility::AdmissibleEpic: return "AdmissibleEpic";
    case Admissibility::Isomorphism: return "Isomorphism";
    case Admissibility::Neither: return "Neither";
    case Admissibility::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::Exact: return "Exact";
    case Exactness::NotExact: return "NotExact";
    case Exactness::Unknown: return "Unknown";
  }
  return "?";
}

ExactSequenceSpec ExactSequenceSpec::of(const LcaMorphism& monic, const LcaMorphism& epic) {
  if (monic.target() != epic.source()) throw ShapeMismatch("monic target differs from epic source");
  return {monic.source(), monic.target(), epic.target(), monic, epic};
}

ExactSequenceSpec dual_sequence(const ExactSequenceSpec& s) {
  return {dual(s.quot), dual(s.mid), dual(s.sub), dual_morphism(s.epic), dual_morphism(s.monic)};
}

namespace {

// Position of a kind in the filtration preserved by every endomorphism:
// blocks only map a kind to kinds of equal or lower rank.
int filtration_rank(Kind k) {
  switch (k) {
    case Kind::T: return 0;
    case Kind::Pr: return 1;
    case Kind::F: return 2;
    case Kind::Qp: return 3;
    case Kind::Zp: return 4;
    case Kind::R: return 5;
    case Kind::Z: return 6;
  }
  return 0;
}

bool diagonal_block_invertible(const BlockLabel& l, const QMatrix& d, const LcaObject& g) {
  switch (l.kind) {
    case Kind::R:
    case Kind::Qp: return det(d) != 0;
    case Kind::Z:
    case Kind::T: {
      Rational x = det(d);
      return x == 1 || x == -1;
    }
    case Kind::Zp:
    case Kind::Pr: return is_p_unit(det(d), l.prime);
    case Kind::F: {
      const auto& orders = g.finite_part();
      size_t n = orders.size();
      ZMatrix m(n, 2 * n);
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m(i, j) = d(i, j).get_num();
        m(i, n + i) = orders[i];
      }
      AbelianGroup c = cokernel(m);
      return c.free_rank == 0 && c.torsion.empty();
    }
  }
  return false;
}

struct Verdict {
  bool decided = true;
  bool mono = true, epi = true;
};

Verdict local_classify(const LcaMorphism& f) {
  PlaceSplit ps({f.source(), f.target()}, {Arrow{0, 1, f}});
  Verdict v;
  if (!ps.decided()) {
    v.decided = false;
    return v;
  }
  for (Prime place : ps.places()) {
    LocalGroup a = ps.local(0, place), b = ps.local(1, place);
    QMatrix m = ps.local_map(0, place);
    if (!a.lattice.contains(a.cover.preimage(m, b.lattice))) v.mono = false;
    if (!(a.cover.image(m) + b.lattice).contains(b.cover)) v.epi = false;
  }
  return v;
}

}  // namespace

bool is_automorphism(const LcaMorphism& f) {
  if (f.source() != f.target()) return false;
  const LcaObject& g = f.source();
  for (const auto& b : g.blocks())
    if (!diagonal_block_invertible(b.label, f.block(b.label, b.label), g)) return false;
  return true;
}

Admissibility classify(const LcaMorphism& f) {
  Verdict v = local_classify(f);
  if (!v.decided) {
    if (f.source() == f.target() && is_automorphism(f)) return Admissibility::Isomorphism;
    return Admissibility::Unknown;
  }
  if (v.mono && v.epi) return Admissibility::Isomorphism;
  if (v.mono) return Admissibility::AdmissibleMonic;
  if (v.epi) return Admissibility::AdmissibleEpic;
  return Admissibility::Neither;
}

Exactness check_exact(const ExactSequenceSpec& s) {
  if (s.monic.source() != s.sub || s.monic.target() != s.mid || s.epic.source() != s.mid || s.epic.target() != s.quot)
    throw ShapeMismatch("sequence maps do not match its objects");
  if (!compose(s.monic, s.epic).is_zero()) return Exactness::NotExact;
  ExactInvariants a = exact_invariants(s.sub), b = exact_invariants(s.mid), c = exact_invariants(s.quot);
  if (b.dim_inf != a.dim_inf + c.dim_inf || b.codim_inf != a.codim_inf + c.codim_inf) return Exactness::NotExact;
  for (const auto& [p, r] : b.padic) {
    auto ra = a.padic.count(p) ? a.padic.at(p) : std::pair<long, long>{0, 0};
    auto rc = c.padic.count(p) ? c.padic.at(p) : std::pair<long, long>{0, 0};
    if (r.first != ra.first + rc.first || r.second != ra.second + rc.second) return Exactness::NotExact;
  }
  for (const auto* side : {&a, &c})
    for (const auto& [p, r] : side->padic)
      if (!b.padic.count(p)) return Exactness::NotExact;

  PlaceSplit ps({s.sub, s.mid, s.quot}, {Arrow{0, 1, s.monic}, Arrow{1, 2, s.epic}});
  if (!ps.decided()) return Exactness::Unknown;
  for (Prime place : ps.places()) {
    LocalGroup la = ps.local(0, place), lb = ps.local(1, place), lc = ps.local(2, place);
    QMatrix f = ps.local_map(0, place), g = ps.local_map(1, place);
    if (!la.lattice.contains(la.cover.preimage(f, lb.lattice))) return Exactness::NotExact;
    Subgroup image = la.cover.image(f) + lb.lattice;
    if (lb.cover.preimage(g, lc.lattice) != image) return Exactness::NotExact;
    if (!(lb.cover.image(g) + lc.lattice).contains(lc.cover)) return Exactness::NotExact;
  }
  return Exactness::Exact;
}

Cokernel::Cokernel(const LcaMorphism& monic) : monic_(monic) {
  Admissibility a = classify(monic);
  if (a == Admissibility::Unknown) throw Undecided("cokernel of a morphism mixing places");
  if (a != Admissibility::AdmissibleMonic && a != Admissibility::Isomorphism)
    throw NotExact("cokernel requested for a map that is not an admissible monic");
  PlaceSplit ps({monic.source(), monic.target()}, {Arrow{0, 1, monic}});
  mid_ = ps.layout(1);
  size_t n = mid_.comps.size();
  std::vector<Component> comps;
  std::vector<QMatrix> proj_rows, sect_cols;
  std::vector<Prime> via(n);
  for (size_t i = 0; i < n; ++i) via[i] = ps.place_of(1, i);
  QMatrix proj(0, n), sect(n, 0);
  for (Prime place : ps.places()) {
    LocalGroup la = ps.local(0, place), lb = ps.local(1, place);
    if (lb.atoms.empty()) continue;
    Subgroup s = la.cover.image(ps.local_map(0, place)) + lb.lattice;
    Quotient q = quotient(lb.cover, s);
    QMatrix p(q.comps.size(), n), c(n, q.comps.size());
    for (size_t k = 0; k < lb.atoms.size(); ++k)
      for (size_t r = 0; r < q.comps.size(); ++r) {
        p(r, lb.atoms[k]) = q.projection(r, k);
        c(lb.atoms[k], r) = q.section(k, r);
      }
    proj = vstack(proj, p);
    sect = hstack(sect, c);
    for (const auto& comp : q.comps) {
      comps.push_back(comp);
      quot_place_.push_back(place);
    }
  }
  quot_ = Layout::of(comps);
  object_ = quot_.canonical;
  section_ = sect;
  projection_ = canonical_morphism(mid_, quot_, detail::normalized(mid_, quot_, proj, via));
}

LcaMorphism Cokernel::descend(const LcaMorphism& h) const {
  if (h.source() != monic_.target()) throw SourceTargetMismatch("descend: map does not start at the cokernel's source");
  if (!compose(monic_, h).is_zero()) throw NotCommutative("descend: map does not vanish on the image");
  Layout x = detail::primary_layout(h.target());
  QMatrix prod = raw_matrix(h, mid_, x) * section_;
  LcaMorphism out = canonical_morphism(quot_, x, detail::normalized(quot_, x, prod, quot_place_));
  if (compose(projection_, out) != h) throw Error("descend: factorization check failed");
  return out;
}

namespace {

LcaMorphism layout_map(const std::vector<Component>& src, const std::vector<Component>& dst,
                       const std::vector<std::pair<size_t, size_t>>& ones) {
  QMatrix raw(dst.size(), src.size());
  for (auto [from, to] : ones) raw(to, from) = 1;
  return canonical_morphism(Layout::of(src), Layout::of(dst), raw);
}

}  // namespace

ExactSequenceSpec decompose_cg_discrete(const LcaObject& g) {
  auto comps = g.components();
  std::vector<Component> h, d;
  std::vector<std::pair<size_t, size_t>> in, out;
  for (size_t i = 0; i < comps.size(); ++i) {
    Component c = comps[i];
    if (c.kind == Kind::Pr) {
      out.push_back({i, d.size()});
      d.push_back(c);
      continue;
    }
    if (c.kind == Kind::Qp) {
      out.push_back({i, d.size()});
      d.push_back({Kind::Pr, 0, c.prime});
      c.kind = Kind::Zp;
    }
    in.push_back({h.size(), i});
    h.push_back(c);
  }
  return ExactSequenceSpec::of(layout_map(h, comps, in), layout_map(comps, d, out));
}

ExactSequenceSpec compact_part(const LcaObject& g) {
  if (!predicates(g).is_compactly_generated) throw NotCompactlyGenerated(g.str() + " is not compactly generated");
  auto comps = g.components();
  std::vector<Component> c, w;
  std::vector<std::pair<size_t, size_t>> in, out;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].kind == Kind::R || comps[i].kind == Kind::Z) {
      out.push_back({i, w.size()});
      w.push_back(comps[i]);
    } else {
      in.push_back({c.size(), i});
      c.push_back(comps[i]);
    }
  }
  return ExactSequenceSpec::of(layout_map(c, comps, in), layout_map(comps, w, out));
}

std::pair<LcaObject, LcaObject> split_vector_summand(const LcaObject& g) {
  std::vector<Component> rest;
  for (const auto& c : g.components())
    if (c.kind != Kind::R) rest.push_back(c);
  return {LcaObject::real(g.real_rank()), LcaObject::from_components(rest)};
}

}  // namespace lca

#include "lcakit/homological.hpp"

#include <cstdlib>

#include "lcakit/subgroup.hpp"

namespace lca {

size_t max_degree() {
  if (const char* v = std::getenv("LCAKIT_MAX_DEGREE")) {
    char* end = nullptr;
    unsigned long d = std::strtoul(v, &end, 10);
    if (end && *end == '\0' && end != v) return d;
  }
  return 10;
}

ZMatrix circulant(size_t n, const std::vector<Integer>& r) {
  ZMatrix m(n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n && k < r.size(); ++k) m((j + k) % n, j) += r[k];
  return m;
}

namespace {

std::vector<Integer> one_minus_t(size_t n) {
  std::vector<Integer> r(n, Integer(0));
  r[0] += 1;
  r[1 % n] -= 1;
  return r;
}

std::vector<Integer> norm(size_t n) { return std::vector<Integer>(n, Integer(1)); }

// Integer basis (columns) of { x : a x = 0 }.
ZMatrix integer_kernel(const ZMatrix& a) {
  SmithForm s = smith(a, false, true);
  size_t n = a.cols();
  return s.v.block(0, s.rank, n, n - s.rank);
}

AbelianGroup to_group(const std::vector<Component>& comps) {
  AbelianGroup g;
  std::vector<Integer> orders;
  for (const auto& c : comps) {
    if (c.kind == Kind::Z)
      ++g.free_rank;
    else if (c.kind == Kind::F)
      orders.push_back(c.order);
    else
      throw Error("expected a discrete finitely generated group");
  }
  g.torsion = invariant_factors(orders);
  return g;
}

}  // namespace

CyclicResolution cyclic_resolution(size_t n, size_t length) {
  if (n < 2) throw Error("cyclic resolution needs n >= 2");
  CyclicResolution r{n, {}};
  ZMatrix d = circulant(n, one_minus_t(n)), nm = circulant(n, norm(n));
  for (size_t i = 0; i < length; ++i) r.maps.push_back(i % 2 ? nm : d);
  return r;
}

AbelianGroup cyclic_cohomology(size_t n, size_t k) {
  if (k > max_degree()) throw Error("degree " + std::to_string(k) + " exceeds the cap " + std::to_string(max_degree()));
  CyclicResolution res = cyclic_resolution(n, k + 1);
  // Hom_G(Z[G], Z): functionals phi with phi(x t) = phi(x)
  ZMatrix t = circulant(n, {0, 1});
  ZMatrix fix = t.transpose();
  for (size_t i = 0; i < n; ++i) fix(i, i) -= 1;
  QMatrix basis = to_rational(integer_kernel(fix));
  size_t r = basis.cols();
  // phi |-> phi o d in the invariant basis
  auto dual = [&](const ZMatrix& d) {
    QMatrix x;
    if (!solve(basis, to_rational(d.transpose()) * basis, x)) throw Error("resolution map does not preserve invariants");
    return to_integer(x);
  };
  ZMatrix in = k == 0 ? ZMatrix(r, 0) : dual(res.maps[k - 1]);
  return homology(in, dual(res.maps[k]));
}

AbelianGroup bar_cohomology(const GroupTable& table, size_t k) {
  size_t order = table.size(), e = order;
  for (size_t g = 0; g < order && e == order; ++g) {
    bool id = true;
    for (size_t h = 0; h < order; ++h) id = id && table[g][h] == h;
    if (id) e = g;
  }
  if (e == order) throw Error("group table has no identity");
  std::vector<size_t> elems, pos(order, order);
  for (size_t g = 0; g < order; ++g)
    if (g != e) {
      pos[g] = elems.size();
      elems.push_back(g);
    }
  size_t m = elems.size();
  auto power = [&](size_t j) {
    size_t p = 1;
    for (size_t i = 0; i < j; ++i) p *= m;
    return p;
  };
  // normalized cochains on G^j, trivial coefficients
  auto delta = [&](size_t j) {
    ZMatrix d(power(j + 1), power(j));
    std::vector<size_t> g(j + 1);
    for (size_t row = 0; row < d.rows(); ++row) {
      size_t x = row;
      for (size_t i = j + 1; i-- > 0;) {
        g[i] = elems[x % m];
        x /= m;
      }
      auto col = [&](const std::vector<size_t>& args) {
        size_t c = 0;
        for (size_t a : args) c = c * m + pos[a];
        return c;
      };
      std::vector<size_t> args(g.begin() + 1, g.end());
      d(row, col(args)) += 1;
      for (size_t i = 0; i < j; ++i) {
        size_t prod = table[g[i]][g[i + 1]];
        if (prod == e) continue;
        args.assign(g.begin(), g.begin() + i);
        args.push_back(prod);
        args.insert(args.end(), g.begin() + i + 2, g.end());
        d(row, col(args)) += (i % 2 ? 1 : -1);
      }
      args.assign(g.begin(), g.begin() + j);
      d(row, col(args)) += (j % 2 ? 1 : -1);
    }
    return d;
  };
  ZMatrix in = k == 0 ? ZMatrix(1, 0) : delta(k - 1);
  return homology(in, delta(k));
}

AbelianGroup ext1_classes(size_t n) {
  if (n < 2) throw Error("ext1_classes needs n >= 2");
  Subgroup cover = Subgroup::coordinate(0, std::vector<bool>(n, true));
  QMatrix ncol(n, 1);
  for (size_t i = 0; i < n; ++i) ncol(i, 0) = 1;
  Subgroup norm_lattice(0, QMatrix(n, 0), ncol);
  // a chain map sends 1 to beta with beta N in N_G; homotopies add (1 - t) h
  Subgroup maps = cover.preimage(to_rational(circulant(n, norm(n))), norm_lattice);
  Subgroup homotopies = cover.image(to_rational(circulant(n, one_minus_t(n)))) + norm_lattice;
  return to_group(quotient(maps, homotopies).comps);
}

ExtensionPresentation build_M_alpha(size_t n, const Integer& alpha) {
  if (n < 2) throw Error("M_alpha needs n >= 2");
  ExtensionPresentation e;
  e.n = n;
  e.alpha = mod(alpha, Integer(n));
  Rational a = Rational(e.alpha);
  // cover coordinates: Z[G] first, then R[G]
  e.relations = QMatrix(2 * n, n + 1);
  for (size_t g = 0; g < n; ++g) {
    e.relations(g, g) += 1;
    e.relations((g + 1) % n, g) -= 1;  // g (1 - t)
    e.relations(n + g, g) = a;         // g alpha
    e.relations(n + g, n) = 1;         // N in the R[G] part
  }
  QMatrix t = to_rational(circulant(n, {0, 1}));
  e.action = QMatrix(2 * n, 2 * n);
  e.action.set_block(0, 0, t);
  e.action.set_block(n, n, t);

  std::vector<Component> lat(n, Component{Kind::Z}), vec(n, Component{Kind::R}), cover = lat;
  cover.insert(cover.end(), vec.begin(), vec.end());
  Layout l_lat = Layout::of(lat), l_vec = Layout::of(vec), l_cover = Layout::of(cover), l_z = Layout::of({Component{Kind::Z}});
  // the relations for g < n - 1 together with (0, N) form a basis
  std::vector<size_t> basis;
  for (size_t g = 0; g + 1 < n; ++g) basis.push_back(g);
  basis.push_back(n);
  e.relation_map = canonical_morphism(l_lat, l_cover, e.relations.select_cols(basis));
  Cokernel m(e.relation_map);

  Cokernel sub(canonical_morphism(Layout::of({Component{Kind::Z}}), l_vec, e.relations.block(n, n, n, 1)));
  QMatrix incl(2 * n, n), sum(1, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    incl(n + i, i) = 1;
    sum(0, i) = 1;
  }
  LcaMorphism monic = sub.descend(compose(canonical_morphism(l_vec, l_cover, incl), m.projection()));
  LcaMorphism epic = m.descend(canonical_morphism(l_cover, l_z, sum));
  e.sequence = ExactSequenceSpec::of(monic, epic);
  return e;
}

bool splits_algebraically(const ExtensionPresentation& e) {
  // unknowns: the image (a, b) of 1 and integer coefficients y of the relations, with
  //   (a, b)(t - 1) = relations y  and  sum(a) = 1
  size_t n = e.n, rels = e.relations.cols();
  QMatrix shift = e.action - QMatrix::identity(2 * n);
  QMatrix integral(2 * n + 1, n + rels), free(2 * n + 1, n), target(2 * n + 1, 1);
  for (size_t i = 0; i < 2 * n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      integral(i, j) = shift(i, j);
      free(i, j) = shift(i, n + j);
    }
    for (size_t j = 0; j < rels; ++j) integral(i, n + j) = -e.relations(i, j);
  }
  for (size_t j = 0; j < n; ++j) integral(2 * n, j) = 1;
  target(2 * n, 0) = 1;
  return Subgroup(0, free, integral).contains(target);
}

}  // namespace lca

#include "place.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lca::detail {

bool padic(Kind k) { return k == Kind::Qp || k == Kind::Zp || k == Kind::Pr; }

Layout primary_layout(const LcaObject& g) {
  std::vector<Component> comps;
  for (const auto& c : g.components()) {
    if (c.kind != Kind::F) {
      comps.push_back(c);
      continue;
    }
    for (const auto& [p, k] : factorize(c.order)) comps.push_back({Kind::F, pow(p, k)});
  }
  return Layout::of(comps);
}

Rational cover_entry(Prime via, const Component& from, const Component& to, const Rational& v) {
  Rational e = v;
  bool element = from.kind == Kind::Z || from.kind == Kind::F || from.kind == Kind::Zp;
  if (via != 0 && element && to.kind == Kind::T) e = padic_frac(e, via);
  if (to.kind == Kind::F && !is_integer(e)) e = Rational(residue_mod(e, to.order));
  return normalize_entry(from, to, e);
}

QMatrix normalized(const Layout& src, const Layout& dst, const QMatrix& raw, const std::vector<Prime>& via) {
  QMatrix out(raw.rows(), raw.cols());
  for (size_t i = 0; i < raw.rows(); ++i)
    for (size_t j = 0; j < raw.cols(); ++j) out(i, j) = cover_entry(via[j], src.comps[j], dst.comps[i], raw(i, j));
  return out;
}

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

PlaceSplit::PlaceSplit(std::vector<LcaObject> objects, std::vector<Arrow> arrows)
    : objects_(std::move(objects)), arrows_(std::move(arrows)) {
  std::vector<size_t> base;
  size_t total = 0;
  for (const auto& g : objects_) {
    layouts_.push_back(primary_layout(g));
    base.push_back(total);
    total += layouts_.back().comps.size();
  }
  UnionFind uf(total);
  for (const auto& a : arrows_) {
    const Layout &s = layouts_[a.src], &d = layouts_[a.dst];
    QMatrix r = raw_matrix(a.f, s, d);
    std::vector<Prime> via(s.comps.size());
    for (size_t j = 0; j < via.size(); ++j) via[j] = padic(s.comps[j].kind) ? s.comps[j].prime : 0;
    r = normalized(s, d, r, via);
    for (size_t i = 0; i < r.rows(); ++i)
      for (size_t j = 0; j < r.cols(); ++j)
        if (r(i, j) != 0) uf.unite(base[a.src] + j, base[a.dst] + i);
    raw_.push_back(r);
  }
  // places claimed by each connected group of atoms
  std::vector<std::set<Prime>> claims(total);
  for (size_t k = 0; k < objects_.size(); ++k)
    for (size_t i = 0; i < layouts_[k].comps.size(); ++i) {
      const auto& c = layouts_[k].comps[i];
      if (c.kind == Kind::F) continue;
      claims[uf.find(base[k] + i)].insert(padic(c.kind) ? c.prime : 0);
    }
  std::set<Prime> all;
  place_.resize(objects_.size());
  for (size_t k = 0; k < objects_.size(); ++k)
    for (size_t i = 0; i < layouts_[k].comps.size(); ++i) {
      const auto& cl = claims[uf.find(base[k] + i)];
      if (cl.size() > 1) decided_ = false;
      Prime p = cl.empty() ? 0 : *cl.begin();
      place_[k].push_back(p);
      all.insert(p);
    }
  all.insert(0);
  places_.assign(all.begin(), all.end());
}

LocalGroup PlaceSplit::local(size_t obj, Prime place) const {
  LocalGroup g;
  const Layout& l = layouts_[obj];
  for (size_t i = 0; i < l.comps.size(); ++i)
    if (place_[obj][i] == place) {
      g.atoms.push_back(i);
      g.comps.push_back(l.comps[i]);
    }
  size_t n = g.atoms.size();
  QMatrix lat(n, 0);
  for (size_t i = 0; i < n; ++i) {
    const auto& c = g.comps[i];
    bool fr = c.kind == Kind::R || c.kind == Kind::T || c.kind == Kind::Qp || c.kind == Kind::Pr;
    g.free.push_back(fr);
    Rational gen = 0;
    if (c.kind == Kind::T || c.kind == Kind::Pr) gen = 1;
    if (c.kind == Kind::F) {
      gen = Rational(c.order);
      g.kappa *= c.order;
    }
    if (gen != 0) {
      QMatrix col(n, 1);
      col(i, 0) = gen;
      lat = hstack(lat, col);
    }
  }
  g.cover = Subgroup::coordinate(place, g.free);
  g.lattice = Subgroup(place, QMatrix(n, 0), lat);
  return g;
}

QMatrix PlaceSplit::local_map(size_t arrow, Prime place) const {
  const Arrow& a = arrows_[arrow];
  std::vector<size_t> rows, cols;
  for (size_t i = 0; i < place_[a.dst].size(); ++i)
    if (place_[a.dst][i] == place) rows.push_back(i);
  for (size_t j = 0; j < place_[a.src].size(); ++j)
    if (place_[a.src][j] == place) cols.push_back(j);
  return raw_[arrow].select_rows(rows).select_cols(cols);
}

}  // namespace lca::detail

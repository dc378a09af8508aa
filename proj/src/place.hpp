#pragma once

// Place-by-place view of a diagram of objects and morphisms.
//
// Every object splits into summands living at the infinite place (R, Z, T) or at a prime p
// (Q_p, Z_p, Q_p/Z_p), plus prime-power cyclic atoms that join whichever place their
// neighbours live at. At a place, each summand is a quotient U/L of a coordinate group
// U = K^free x O^int by a lattice L, and morphisms lift to rational matrices between the U's.
// A morphism connecting two different places makes the diagram undecided.

#include <tuple>
#include <vector>

#include "lcakit/morphism.hpp"
#include "lcakit/subgroup.hpp"

namespace lca::detail {

bool padic(Kind k);

// The object with its finite part split into prime-power cyclic atoms.
Layout primary_layout(const LcaObject& g);

// Entry of a morphism between two components obtained as a product of cover-level lifts
// through summands at the given place.
Rational cover_entry(Prime via, const Component& from, const Component& to, const Rational& v);

// A raw layout matrix turned into an honest morphism entry matrix, block by block.
QMatrix normalized(const Layout& src, const Layout& dst, const QMatrix& raw, const std::vector<Prime>& via);

struct LocalGroup {
  std::vector<size_t> atoms;  // layout positions living at the place
  std::vector<Component> comps;
  std::vector<bool> free;
  Subgroup cover, lattice;
  Integer kappa = 1;  // product of the finite orders
};

struct Arrow {
  size_t src, dst;
  LcaMorphism f;
};

class PlaceSplit {
 public:
  PlaceSplit(std::vector<LcaObject> objects, std::vector<Arrow> arrows);

  bool decided() const { return decided_; }
  const std::vector<Prime>& places() const { return places_; }
  const Layout& layout(size_t obj) const { return layouts_[obj]; }
  const QMatrix& raw(size_t arrow) const { return raw_[arrow]; }
  Prime place_of(size_t obj, size_t atom) const { return place_[obj][atom]; }
  LocalGroup local(size_t obj, Prime place) const;
  // rows: target atoms at the place, columns: source atoms at the place
  QMatrix local_map(size_t arrow, Prime place) const;

 private:
  std::vector<LcaObject> objects_;
  std::vector<Arrow> arrows_;
  std::vector<Layout> layouts_;
  std::vector<QMatrix> raw_;
  std::vector<std::vector<Prime>> place_;
  std::vector<Prime> places_;
  bool decided_ = true;
};

}  // namespace lca::detail

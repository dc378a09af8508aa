#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcakit/matrix.hpp"
#include "lcakit/object.hpp"

namespace lca {

// Continuous homomorphism between canonical objects, stored as one rational entry per
// (target component, source component). Entries are normalized per block type, so two
// morphisms are equal exactly when their matrices are equal.
//
// Entry meaning, for a source component s and target component t:
//   s discrete or Z_p (Z, Z/d, Z_p): the image of the generator, as an element of t
//   s = R, T, Q_p, Q_p/Z_p: the scalar of x |-> e x (followed by the projection to t)
// Maps into T from a p-adic component read the product through its p-fractional part.
class LcaMorphism {
 public:
  using BlockEntry = std::pair<std::pair<BlockLabel, BlockLabel>, QMatrix>;

  LcaMorphism() = default;
  // Zero morphism.
  LcaMorphism(LcaObject source, LcaObject target);
  // entries: target.dim() x source.dim(); validated against the Hom-table and normalized.
  LcaMorphism(LcaObject source, LcaObject target, QMatrix entries);

  static LcaMorphism identity(const LcaObject& g);
  // Multiplication by a rational on every component (must be allowed on each).
  static LcaMorphism scalar(const LcaObject& g, const Rational& a);
  // Blocks keyed by (source block, target block); each block is target rows x source cols.
  static LcaMorphism from_blocks(const LcaObject& source, const LcaObject& target,
                                 const std::vector<BlockEntry>& blocks);
  static LcaMorphism parse(const std::string& text);

  const LcaObject& source() const { return source_; }
  const LcaObject& target() const { return target_; }
  const QMatrix& matrix() const { return m_; }
  QMatrix block(const BlockLabel& from, const BlockLabel& to) const;
  std::vector<BlockEntry> nonzero_blocks() const;

  bool is_zero() const { return m_.is_zero(); }
  bool operator==(const LcaMorphism& o) const;
  bool operator!=(const LcaMorphism& o) const { return !(*this == o); }

  std::string str() const;

 private:
  LcaObject source_, target_;
  QMatrix m_;
};

// Validate and normalize a single entry; throws InvalidMorphism outside the Hom-table.
Rational normalize_entry(const Component& from, const Component& to, const Rational& e);
// Whether the Hom-table allows a nonzero entry between the two components.
bool entry_allowed(const Component& from, const Component& to);

// g after f; "f then g".
LcaMorphism compose(const LcaMorphism& f, const LcaMorphism& g);
LcaMorphism operator+(const LcaMorphism& f, const LcaMorphism& g);
LcaMorphism operator-(const LcaMorphism& f);
LcaMorphism operator-(const LcaMorphism& f, const LcaMorphism& g);
LcaMorphism direct_sum(const LcaMorphism& f, const LcaMorphism& g);
LcaMorphism dual_morphism(const LcaMorphism& f);

// Position of each component of g inside dual(g).
std::vector<size_t> dual_positions(const LcaObject& g);

// Components in arbitrary order, with cyclic orders that need not be invariant factors,
// together with the isomorphism onto the canonical object they sum to.
struct Layout {
  std::vector<Component> comps;
  LcaObject canonical;
  QMatrix to_canonical;    // canonical.dim() x comps.size()
  QMatrix from_canonical;  // comps.size() x canonical.dim()
  static Layout of(const std::vector<Component>& comps);
  static Layout of(const LcaObject& g) { return of(g.components()); }
};

// Canonical morphism of a raw entry matrix written on layout components.
LcaMorphism canonical_morphism(const Layout& src, const Layout& dst, const QMatrix& raw);
// The entries of f written on layout components (not reduced).
QMatrix raw_matrix(const LcaMorphism& f, const Layout& src, const Layout& dst);

}  // namespace lca

#pragma once

#include <vector>

#include "lcakit/matrix.hpp"
#include "lcakit/object.hpp"

namespace lca {

// Closed subgroup of K^n at a single place, K = R (place 0) or Q_p (place p):
//   S = span_K(free columns) + span_O(integral columns),  O = Z or Z_p.
// Every closed subgroup met by rational maps within one place has this form.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(Prime place, size_t dim);  // zero subgroup
  Subgroup(Prime place, QMatrix free, QMatrix integral);
  // K on the coordinates flagged free, O on the others.
  static Subgroup coordinate(Prime place, const std::vector<bool>& free);

  Prime place() const { return place_; }
  size_t dim() const { return dim_; }
  const QMatrix& free() const { return free_; }
  const QMatrix& integral() const { return int_; }

  bool contains(const QMatrix& column) const;
  bool contains(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const { return contains(o) && o.contains(*this); }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

  Subgroup image(const QMatrix& f) const;
  Subgroup operator+(const Subgroup& o) const;
  // {x in *this : f x in target}
  Subgroup preimage(const QMatrix& f, const Subgroup& target) const;

 private:
  Prime place_ = 0;
  size_t dim_ = 0;
  QMatrix free_, int_;
};

// Whether y lies in the O-span of the columns of m.
bool integral_span_contains(Prime place, const QMatrix& m, const QMatrix& y);

// U/S for closed subgroups S of U, as a list of components native to the place
// (R, Z, T, Z/d at infinity; Q_p, Z_p, Q_p/Z_p, Z/p^k at p), with cover-level maps:
// projection sends K^n to the covers of the components, section is a right inverse on
// the component covers.
struct Quotient {
  std::vector<Component> comps;
  QMatrix projection;  // comps.size() x n
  QMatrix section;     // n x comps.size()
};
Quotient quotient(const Subgroup& u, const Subgroup& s);

}  // namespace lca

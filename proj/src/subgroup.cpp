#include "lcakit/subgroup.hpp"

#include <cassert>

namespace lca {

namespace {

QMatrix unit_column(size_t n, size_t i) {
  QMatrix e(n, 1);
  e(i, 0) = 1;
  return e;
}

// Whether an integer of valuation profile a divides b over O (Z at infinity, Z_p at p).
bool o_divides(Prime place, const Integer& a, const Integer& b) {
  if (b == 0) return true;
  if (a == 0) return false;
  if (place == 0) return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  return valuation(b, place) >= valuation(a, place);
}

}  // namespace

bool integral_span_contains(Prime place, const QMatrix& m, const QMatrix& y) {
  if (y.is_zero()) return true;
  if (m.cols() == 0) return false;
  Integer n = lcm(common_denominator(m), common_denominator(y));
  SmithForm s = smith(to_integer(m.scaled(Rational(n))), true, false);
  ZMatrix z = s.u * to_integer(y.scaled(Rational(n)));
  for (size_t i = 0; i < z.rows(); ++i) {
    if (i < s.rank) {
      if (!o_divides(place, s.diag(i), z(i, 0))) return false;
    } else if (z(i, 0) != 0) {
      return false;
    }
  }
  return true;
}

Subgroup::Subgroup(Prime place, size_t dim) : place_(place), dim_(dim), free_(dim, 0), int_(dim, 0) {}

Subgroup::Subgroup(Prime place, QMatrix free, QMatrix integral)
    : place_(place), dim_(free.rows()), free_(std::move(free)), int_(std::move(integral)) {
  if (int_.rows() != dim_) throw ShapeMismatch("subgroup generators of different dimensions");
}

Subgroup Subgroup::coordinate(Prime place, const std::vector<bool>& free) {
  size_t n = free.size(), nf = 0;
  for (bool b : free) nf += b;
  QMatrix f(n, nf), o(n, n - nf);
  size_t a = 0, b = 0;
  for (size_t i = 0; i < n; ++i) {
    if (free[i])
      f(i, a++) = 1;
    else
      o(i, b++) = 1;
  }
  return Subgroup(place, f, o);
}

bool Subgroup::contains(const QMatrix& x) const {
  if (x.rows() != dim_) throw ShapeMismatch("subgroup membership: dimension mismatch");
  if (free_.cols() == 0) return integral_span_contains(place_, int_, x);
  QMatrix pi = left_kernel(free_);
  return integral_span_contains(place_, pi * int_, pi * x);
}

bool Subgroup::contains(const Subgroup& o) const {
  if (o.dim_ != dim_) throw ShapeMismatch("subgroup containment: dimension mismatch");
  QMatrix pi = left_kernel(free_);
  if (free_.cols() == 0) pi = QMatrix::identity(dim_);
  // a K-line lies in S only if its projection away from the free span vanishes
  if (!(pi * o.free_).is_zero()) return false;
  QMatrix m = pi * int_, y = pi * o.int_;
  for (size_t j = 0; j < y.cols(); ++j)
    if (!integral_span_contains(place_, m, y.block(0, j, y.rows(), 1))) return false;
  return true;
}

Subgroup Subgroup::image(const QMatrix& f) const {
  if (f.cols() != dim_) throw ShapeMismatch("subgroup image: dimension mismatch");
  return Subgroup(place_, f * free_, f * int_);
}

Subgroup Subgroup::operator+(const Subgroup& o) const {
  if (o.dim_ != dim_ || o.place_ != place_) throw ShapeMismatch("subgroup sum: mismatch");
  return Subgroup(place_, hstack(free_, o.free_), hstack(int_, o.int_));
}

Subgroup Subgroup::preimage(const QMatrix& f, const Subgroup& target) const {
  if (f.cols() != dim_ || f.rows() != target.dim_) throw ShapeMismatch("subgroup preimage: dimension mismatch");
  size_t a = free_.cols(), b = int_.cols(), c = target.free_.cols(), d = target.int_.cols();
  // f (Df y1 + Di y2) = Sf z1 + Si z2, with y1, z1 free and y2, z2 integral
  QMatrix eq = hstack(hstack(f * free_, f * int_), hstack(-target.free_, -target.int_));
  QMatrix basis = kernel(eq);
  size_t r = basis.cols();
  if (r == 0) return Subgroup(place_, dim_);
  std::vector<size_t> int_rows;
  for (size_t i = a; i < a + b; ++i) int_rows.push_back(i);
  for (size_t i = a + b + c; i < a + b + c + d; ++i) int_rows.push_back(i);
  QMatrix x = hstack(free_, int_) * basis.block(0, 0, a + b, r);
  if (int_rows.empty()) return Subgroup(place_, x, QMatrix(dim_, 0));
  // parameters t with E t integral: t = V (sum (N/d_i) O e_i + free tail)
  QMatrix e = basis.select_rows(int_rows);
  Integer n = common_denominator(e);
  SmithForm s = smith(to_integer(e.scaled(Rational(n))), false, true);
  QMatrix v = to_rational(s.v);
  QMatrix fr(dim_, 0), in(dim_, 0);
  QMatrix xv = x * v;
  for (size_t i = 0; i < r; ++i) {
    QMatrix col = xv.block(0, i, dim_, 1);
    if (i < s.rank)
      in = hstack(in, col.scaled(make_rational(n, s.diag(i))));
    else
      fr = hstack(fr, col);
  }
  return Subgroup(place_, fr, in);
}

namespace {

// Row-operation bookkeeping: coordinates y = t x of K^n.
struct Frame {
  QMatrix t;
};

Component native(Prime place, Kind inf_kind, Kind p_kind, const Integer& order = 0) {
  Component c{place == 0 ? inf_kind : p_kind};
  if (c.kind == Kind::F) c.order = order;
  if (place != 0 && c.kind != Kind::F) c.prime = place;
  return c;
}

}  // namespace

Quotient quotient(const Subgroup& u, const Subgroup& s) {
  if (u.place() != s.place() || u.dim() != s.dim()) throw ShapeMismatch("quotient: mismatch");
  if (!u.contains(s)) throw Error("quotient: subgroup not contained");
  const Prime place = u.place();
  const size_t n = u.dim();

  // 1. Basis of u: free basis w, then an O-basis of the integral part modulo w.
  QMatrix w = column_basis(u.free());
  size_t a = w.cols();
  QMatrix p = extend_to_basis(w);
  QMatrix pinv = inverse(p);
  QMatrix rest = pinv.block(a, 0, n - a, n) * u.integral();
  QMatrix lat(n - a, 0);
  if (rest.cols() > 0 && !rest.is_zero()) {
    Integer den = common_denominator(rest);
    SmithForm sf = smith(to_integer(rest.scaled(Rational(den))), true, false);
    QMatrix uinv = to_rational(sf.uinv);
    for (size_t i = 0; i < sf.rank; ++i)
      lat = hstack(lat, uinv.block(0, i, n - a, 1).scaled(make_rational(sf.diag(i), den)));
  }
  size_t b = lat.cols();
  QMatrix bu = hstack(w, p * vstack(QMatrix(a, b), lat));
  // left inverse of bu: u-coordinates of points of u
  QMatrix full = extend_to_basis(bu);
  QMatrix left = inverse(full).block(0, 0, a + b, n);
  size_t m = a + b;

  // s in u-coordinates (first a free, last b integral)
  QMatrix sf = left * s.free(), si = left * s.integral();
  assert(sf.block(a, 0, b, sf.cols()).is_zero());

  // 2. Split off the free span of s.
  QMatrix ws = column_basis(sf.block(0, 0, a, sf.cols()));
  size_t wdim = ws.cols();
  QMatrix p1 = extend_to_basis(ws);
  QMatrix t = block_diag(inverse(p1), QMatrix::identity(b));  // coordinates: [W | kept free | integral]
  size_t rf = a - wdim;

  // 3. Smith form of the integral rows of the integral generators.
  QMatrix g = t * si;
  QMatrix gi = g.block(a, 0, b, g.cols());
  QMatrix ginv(0, 0);
  std::vector<Integer> delta;  // normalized elementary divisors on the integral coordinates
  size_t rank2 = 0;
  QMatrix v2 = QMatrix::identity(g.cols());
  if (b > 0 && g.cols() > 0) {
    Integer den = common_denominator(gi);
    SmithForm s2 = smith(to_integer(gi.scaled(Rational(den))));
    rank2 = s2.rank;
    QMatrix row = to_rational(s2.u);
    for (size_t i = 0; i < rank2; ++i) {
      Rational di = make_rational(s2.diag(i), den);
      Rational target = di;
      if (place != 0) {
        long v = valuation(di, place);
        target = Rational(pow(place, v));
      } else {
        assert(is_integer(di));
      }
      Rational unit = target / di;  // a unit of O
      for (size_t j = 0; j < b; ++j) row(i, j) *= unit;
      delta.push_back(target.get_num());
    }
    QMatrix step = block_diag(QMatrix::identity(a), row);
    t = step * t;
    v2 = to_rational(s2.v);
  }
  g = t * si * v2;

  // 4. Pure-free generators: make their lattice the first coordinates of the kept free part.
  size_t tdim = 0;
  {
    std::vector<size_t> cols;
    for (size_t j = rank2; j < g.cols(); ++j) cols.push_back(j);
    QMatrix c = g.select_cols(cols).block(wdim, 0, rf, cols.size());
    if (rf > 0 && c.cols() > 0 && !c.is_zero()) {
      Integer den = common_denominator(c);
      SmithForm s3 = smith(to_integer(c.scaled(Rational(den))), true, false);
      tdim = s3.rank;
      QMatrix q2 = to_rational(s3.uinv);
      for (size_t i = 0; i < tdim; ++i)
        for (size_t r = 0; r < rf; ++r) q2(r, i) *= make_rational(s3.diag(i), den);
      QMatrix step = block_diag(block_diag(QMatrix::identity(wdim), inverse(q2)), QMatrix::identity(b));
      t = step * t;
    }
  }
  g = t * si * v2;

  // 5. Shear the free coordinates against the integral diagonal.
  {
    QMatrix shear = QMatrix::identity(m);
    for (size_t j = 0; j < rank2; ++j)
      for (size_t r = wdim; r < a; ++r)
        if (g(r, j) != 0) shear(r, a + j) = -g(r, j) / Rational(delta[j]);
    t = shear * t;
  }

  // 6. Read off the components.
  Quotient out;
  std::vector<size_t> keep;
  for (size_t r = wdim; r < a; ++r) {
    bool compact = r - wdim < tdim;
    out.comps.push_back(native(place, compact ? Kind::T : Kind::R, compact ? Kind::Pr : Kind::Qp));
    keep.push_back(r);
  }
  for (size_t j = 0; j < b; ++j) {
    if (j < rank2) {
      if (delta[j] == 1) continue;
      out.comps.push_back(native(place, Kind::F, Kind::F, delta[j]));
    } else {
      out.comps.push_back(native(place, Kind::Z, Kind::Zp));
    }
    keep.push_back(a + j);
  }
  QMatrix tinv = inverse(t);
  out.projection = t.select_rows(keep) * left;
  out.section = bu * tinv.select_cols(keep);
  return out;
}

}  // namespace lca

#include <algorithm>
#include <sstream>

#include "lcakit/matrix.hpp"

namespace lca {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

ZMatrix to_integer(const QMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw Error("to_integer: non-integral entry " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Integer common_denominator(const QMatrix& m) {
  Integer d = 1;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  return d;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack: row mismatch");
  QMatrix r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack: column mismatch");
  QMatrix r(a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
  QMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(QMatrix& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

size_t rank(const QMatrix& m) {
  QMatrix t(m);
  return rref(t).size();
}

Rational det(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error("det: matrix not square");
  QMatrix a(m);
  Rational d = 1;
  size_t n = a.rows();
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse: matrix not square");
  size_t n = m.rows();
  QMatrix a = hstack(m, QMatrix::identity(n));
  auto piv = rref(a);
  if (piv.size() < n || (n && piv[n - 1] != n - 1)) throw Error("inverse: singular matrix");
  return a.block(0, n, n, n);
}

QMatrix kernel(const QMatrix& m) {
  QMatrix a(m);
  auto piv = rref(a);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  QMatrix k(m.cols(), free_cols.size());
  for (size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -a(r, free_cols[f]);
  }
  return k;
}

QMatrix left_kernel(const QMatrix& m) { return kernel(m.transpose()).transpose(); }

QMatrix column_basis(const QMatrix& m) {
  QMatrix a(m);
  return m.select_cols(rref(a));
}

bool solve(const QMatrix& m, const QMatrix& b, QMatrix& x) {
  QMatrix a = hstack(m, b);
  auto piv = rref(a);
  for (auto c : piv)
    if (c >= m.cols()) return false;
  x = QMatrix(m.cols(), b.cols());
  for (size_t r = 0; r < piv.size(); ++r)
    for (size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = a(r, m.cols() + j);
  return true;
}

QMatrix extend_to_basis(const QMatrix& independent) {
  size_t n = independent.rows();
  QMatrix a = hstack(independent, QMatrix::identity(n));
  QMatrix t(a);
  auto piv = rref(t);
  if (piv.size() != n) throw Error("extend_to_basis: internal rank failure");
  for (size_t i = 0; i < independent.cols(); ++i)
    if (piv[i] != i) throw Error("extend_to_basis: columns are dependent");
  return a.select_cols(piv);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SmithWork {
  ZMatrix d, u, uinv, v, vinv;
  bool want_u, want_v;

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    if (want_u) {
      for (size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
      for (size_t i = 0; i < uinv.rows(); ++i) std::swap(uinv(i, a), uinv(i, b));
    }
  }
  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    if (want_v) {
      for (size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
      for (size_t j = 0; j < vinv.cols(); ++j) std::swap(vinv(a, j), vinv(b, j));
    }
  }
  // row_i -= q * row_t
  void row_sub(size_t i, size_t t, const Integer& q) {
    if (q == 0) return;
    for (size_t j = 0; j < d.cols(); ++j)
      if (d(t, j) != 0) d(i, j) -= q * d(t, j);
    if (want_u) {
      for (size_t j = 0; j < u.cols(); ++j)
        if (u(t, j) != 0) u(i, j) -= q * u(t, j);
      for (size_t r = 0; r < uinv.rows(); ++r)
        if (uinv(r, i) != 0) uinv(r, t) += q * uinv(r, i);
    }
  }
  // col_j -= q * col_t
  void col_sub(size_t j, size_t t, const Integer& q) {
    if (q == 0) return;
    for (size_t i = 0; i < d.rows(); ++i)
      if (d(i, t) != 0) d(i, j) -= q * d(i, t);
    if (want_v) {
      for (size_t i = 0; i < v.rows(); ++i)
        if (v(i, t) != 0) v(i, j) -= q * v(i, t);
      for (size_t c = 0; c < vinv.cols(); ++c)
        if (vinv(j, c) != 0) vinv(t, c) += q * vinv(j, c);
    }
  }
  void negate_row(size_t t) {
    for (size_t j = 0; j < d.cols(); ++j) d(t, j) = -d(t, j);
    if (want_u) {
      for (size_t j = 0; j < u.cols(); ++j) u(t, j) = -u(t, j);
      for (size_t i = 0; i < uinv.rows(); ++i) uinv(i, t) = -uinv(i, t);
    }
  }
};

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

ZMatrix column_hnf(const ZMatrix& in) {
  ZMatrix a = in;
  size_t m = a.rows(), n = a.cols(), k = 0;
  auto combine = [&](size_t c1, size_t c2, const Integer& s, const Integer& t, const Integer& x, const Integer& y) {
    // (c1, c2) <- (s c1 + t c2, -y c1 + x c2)
    for (size_t i = 0; i < m; ++i) {
      Integer u = a(i, c1), v = a(i, c2);
      a(i, c1) = s * u + t * v;
      a(i, c2) = x * v - y * u;
    }
  };
  for (size_t r = 0; r < m && k < n; ++r) {
    for (size_t j = k + 1; j < n; ++j) {
      if (a(r, j) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, k).get_mpz_t(), a(r, j).get_mpz_t());
      Integer x = a(r, k) / g, y = a(r, j) / g;
      combine(k, j, s, t, x, y);
    }
    if (a(r, k) == 0) continue;
    if (a(r, k) < 0)
      for (size_t i = 0; i < m; ++i) a(i, k) = -a(i, k);
    for (size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(r, j).get_mpz_t(), a(r, k).get_mpz_t());
      if (q != 0)
        for (size_t i = 0; i < m; ++i) a(i, j) -= q * a(i, k);
    }
    ++k;
  }
  return a.block(0, 0, m, k);
}

SmithForm smith(const ZMatrix& a, bool want_u, bool want_v) {
  size_t m = a.rows(), n = a.cols();
  ZMatrix start = a;
  if (!want_v && n > 0 && m > 0) {
    // column operations are free here; shrink to a lattice basis first to keep entries small
    ZMatrix h = column_hnf(a);
    start = ZMatrix(m, n);
    start.set_block(0, 0, h);
  }
  SmithWork w{start, {}, {}, {}, {}, want_u, want_v};
  if (want_u) w.u = w.uinv = ZMatrix::identity(m);
  if (want_v) w.v = w.vinv = ZMatrix::identity(n);
  size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // choose the smallest nonzero entry as pivot
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (w.d(i, j) != 0 && (pi == m || abs(w.d(i, j)) < abs(w.d(pi, pj)))) pi = i, pj = j;
    if (pi == m) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool changed = false;
      for (size_t i = t + 1; i < m; ++i) {
        if (w.d(i, t) == 0) continue;
        w.row_sub(i, t, tdiv(w.d(i, t), w.d(t, t)));
        if (w.d(i, t) != 0) {
          w.swap_rows(t, i);
          changed = true;
        }
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (w.d(t, j) == 0) continue;
        w.col_sub(j, t, tdiv(w.d(t, j), w.d(t, t)));
        if (w.d(t, j) != 0) {
          w.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // pivot row and column are clear; enforce divisibility
      bool fixed = false;
      for (size_t i = t + 1; i < m && !fixed; ++i)
        for (size_t j = t + 1; j < n && !fixed; ++j)
          if (w.d(i, j) % w.d(t, t) != 0) {
            w.row_sub(t, i, Integer(-1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  SmithForm s;
  s.rank = t;
  s.d = std::move(w.d);
  s.u = std::move(w.u);
  s.uinv = std::move(w.uinv);
  s.v = std::move(w.v);
  s.vinv = std::move(w.vinv);
  return s;
}



Integer det(const ZMatrix& m) {
  Rational d = det(to_rational(m));
  return d.get_num();
}

std::string AbelianGroup::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

AbelianGroup cokernel(const ZMatrix& a) {
  SmithForm s = smith(a, false, false);
  AbelianGroup g;
  g.free_rank = a.rows() - s.rank;
  for (size_t i = 0; i < s.rank; ++i)
    if (s.d(i, i) != 1) g.torsion.push_back(s.d(i, i));
  return g;
}

AbelianGroup homology(const ZMatrix& d_in, const ZMatrix& d_out) {
  if (d_in.rows() != d_out.cols()) throw Error("homology: composable maps expected");
  SmithForm s = smith(d_out, false, true);
  size_t q = d_out.cols();
  size_t k = q - s.rank;
  // coordinates of im(d_in) in the kernel basis given by the last columns of v
  ZMatrix coords = s.vinv * d_in;
  ZMatrix sub(k, d_in.cols());
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < d_in.cols(); ++j) sub(i, j) = coords(s.rank + i, j);
  for (size_t i = 0; i < s.rank; ++i)
    for (size_t j = 0; j < d_in.cols(); ++j)
      if (coords(i, j) != 0) throw Error("homology: maps do not compose to zero");
  return cokernel(sub);
}

std::vector<Integer> invariant_factors(const std::vector<Integer>& orders) {
  ZMatrix d(orders.size(), orders.size());
  for (size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
  SmithForm s = smith(d, false, false);
  std::vector<Integer> out;
  for (size_t i = 0; i < orders.size(); ++i) {
    Integer x = s.diag(i);
    if (x == 0) throw Error("invariant_factors: zero order");
    if (x != 1) out.push_back(x);
  }
  return out;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << to_string(m(i, j));
    }
  }
  return os.str();
}

}  // namespace lca

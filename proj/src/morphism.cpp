#include "lcakit/morphism.hpp"

#include <algorithm>
#include <sstream>

#include "grammar.hpp"

namespace lca {

namespace {

bool padic_kind(Kind k) { return k == Kind::Qp || k == Kind::Zp || k == Kind::Pr; }

std::string comp_name(const Component& c) {
  if (c.kind == Kind::F) return "Z/" + c.order.get_str();
  if (padic_kind(c.kind)) return std::string(kind_name(c.kind)) + "(" + std::to_string(c.prime) + ")";
  return kind_name(c.kind);
}

[[noreturn]] void reject(const Component& from, const Component& to, const Rational& e, const std::string& why) {
  throw InvalidMorphism("entry " + to_string(e) + " for " + comp_name(from) + " -> " + comp_name(to) + ": " + why);
}

void need_integer(const Component& from, const Component& to, const Rational& e) {
  if (!is_integer(e)) reject(from, to, e, "must be an integer");
}

void need_p_integral(const Component& from, const Component& to, const Rational& e, Prime p) {
  if (!is_p_integral(e, p)) reject(from, to, e, "must be " + std::to_string(p) + "-integral");
}

}  // namespace

bool entry_allowed(const Component& from, const Component& to) {
  if (padic_kind(from.kind) && padic_kind(to.kind) && from.prime != to.prime) return false;
  if (from.kind == Kind::F && to.kind == Kind::F && (from.order == 1 || to.order == 1)) return false;
  switch (from.kind) {
    case Kind::R: return to.kind == Kind::R || to.kind == Kind::T;
    case Kind::Z: return true;
    case Kind::T: return to.kind == Kind::T;
    case Kind::F: return to.kind == Kind::F || to.kind == Kind::T || to.kind == Kind::Pr;
    case Kind::Qp: return to.kind == Kind::Qp || to.kind == Kind::Pr || to.kind == Kind::T;
    case Kind::Zp: return to.kind != Kind::R && to.kind != Kind::Z;
    case Kind::Pr: return to.kind == Kind::Pr || to.kind == Kind::T;
  }
  return false;
}

Rational normalize_entry(const Component& from, const Component& to, const Rational& e) {
  if (e == 0) return 0;
  if (!entry_allowed(from, to)) reject(from, to, e, "no nonzero morphism of this type");
  Prime p = padic_kind(from.kind) ? from.prime : to.prime;
  switch (from.kind) {
    case Kind::R:
    case Kind::Qp:
      return e;
    case Kind::T:
      need_integer(from, to, e);
      return e;
    case Kind::Pr:
      need_p_integral(from, to, e, p);
      return e;
    case Kind::Z:
      switch (to.kind) {
        case Kind::Z: need_integer(from, to, e); return e;
        case Kind::T: return frac(e);
        case Kind::F: need_integer(from, to, e); return Rational(mod(e.get_num(), to.order));
        case Kind::Zp: need_p_integral(from, to, e, p); return e;
        case Kind::Pr: return padic_frac(e, p);
        default: return e;
      }
    case Kind::F:
      switch (to.kind) {
        case Kind::F:
          need_integer(from, to, e);
          if (mod(Integer(from.order * e.get_num()), to.order) != 0)
            reject(from, to, e, "order of the image does not divide " + from.order.get_str());
          return Rational(mod(e.get_num(), to.order));
        case Kind::T:
          if (!is_integer(Rational(e * from.order))) reject(from, to, e, "image must be killed by " + from.order.get_str());
          return frac(e);
        default:  // Pr
          if (!is_p_integral(Rational(e * from.order), p))
            reject(from, to, e, "image must be killed by " + from.order.get_str());
          return padic_frac(e, p);
      }
    case Kind::Zp:
      switch (to.kind) {
        case Kind::Zp: need_p_integral(from, to, e, p); return e;
        case Kind::Qp: return e;
        case Kind::Pr:
        case Kind::T: return padic_frac(e, p);
        default: {  // F
          need_integer(from, to, e);
          Integer pv = mpz_divisible_ui_p(to.order.get_mpz_t(), p) ? pow(p, valuation(to.order, p)) : Integer(1);
          if (mod(Integer(pv * e.get_num()), to.order) != 0)
            reject(from, to, e, "image must have " + std::to_string(p) + "-power order");
          return Rational(mod(e.get_num(), to.order));
        }
      }
  }
  return e;
}

LcaMorphism::LcaMorphism(LcaObject source, LcaObject target)
    : source_(std::move(source)), target_(std::move(target)), m_(target_.dim(), source_.dim()) {}

LcaMorphism::LcaMorphism(LcaObject source, LcaObject target, QMatrix entries)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(entries)) {
  if (m_.rows() != target_.dim() || m_.cols() != source_.dim())
    throw ShapeMismatch("morphism matrix must be " + std::to_string(target_.dim()) + "x" +
                        std::to_string(source_.dim()));
  auto sc = source_.components(), tc = target_.components();
  for (size_t i = 0; i < m_.rows(); ++i)
    for (size_t j = 0; j < m_.cols(); ++j) m_(i, j) = normalize_entry(sc[j], tc[i], m_(i, j));
}

LcaMorphism LcaMorphism::identity(const LcaObject& g) { return LcaMorphism(g, g, QMatrix::identity(g.dim())); }

LcaMorphism LcaMorphism::scalar(const LcaObject& g, const Rational& a) {
  return LcaMorphism(g, g, QMatrix::identity(g.dim()).scaled(a));
}

LcaMorphism LcaMorphism::from_blocks(const LcaObject& source, const LcaObject& target,
                                     const std::vector<BlockEntry>& blocks) {
  QMatrix m(target.dim(), source.dim());
  for (const auto& [labels, b] : blocks) {
    BlockRange s = source.block(labels.first), t = target.block(labels.second);
    if (s.size == 0) throw ShapeMismatch("source has no block " + labels.first.str());
    if (t.size == 0) throw ShapeMismatch("target has no block " + labels.second.str());
    if (b.rows() != t.size || b.cols() != s.size)
      throw ShapeMismatch("block (" + labels.first.str() + "," + labels.second.str() + ") must be " +
                          std::to_string(t.size) + "x" + std::to_string(s.size));
    m.set_block(t.offset, s.offset, b);
  }
  return LcaMorphism(source, target, m);
}

QMatrix LcaMorphism::block(const BlockLabel& from, const BlockLabel& to) const {
  BlockRange s = source_.block(from), t = target_.block(to);
  return m_.block(t.offset, s.offset, t.size, s.size);
}

std::vector<LcaMorphism::BlockEntry> LcaMorphism::nonzero_blocks() const {
  std::vector<BlockEntry> out;
  for (const auto& s : source_.blocks())
    for (const auto& t : target_.blocks()) {
      QMatrix b = m_.block(t.offset, s.offset, t.size, s.size);
      if (!b.is_zero()) out.push_back({{s.label, t.label}, b});
    }
  return out;
}

bool LcaMorphism::operator==(const LcaMorphism& o) const {
  return source_ == o.source_ && target_ == o.target_ && m_ == o.m_;
}

std::string LcaMorphism::str() const {
  std::ostringstream os;
  os << "[" << source_.str() << " -> " << target_.str() << "] {";
  bool first = true;
  for (const auto& [labels, b] : nonzero_blocks()) {
    os << (first ? " " : ", ") << "(" << labels.first.str() << "," << labels.second.str() << "): " << to_string(b);
    first = false;
  }
  os << (first ? "}" : " }");
  return os.str();
}

LcaMorphism LcaMorphism::parse(const std::string& text) {
  detail::Cursor cur(text);
  LcaMorphism f = detail::parse_morphism(cur);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return f;
}

namespace detail {

namespace {

BlockLabel parse_label(Cursor& cur, const LcaObject& g) {
  int line = cur.line(), col = cur.column();
  BlockLabel l{Kind::R};
  bool padic = true;
  if (cur.accept("Qp"))
    l.kind = Kind::Qp;
  else if (cur.accept("Zp"))
    l.kind = Kind::Zp;
  else if (cur.accept("Pr"))
    l.kind = Kind::Pr;
  else {
    padic = false;
    if (cur.accept('R'))
      l.kind = Kind::R;
    else if (cur.accept('Z'))
      l.kind = Kind::Z;
    else if (cur.accept('T'))
      l.kind = Kind::T;
    else if (cur.accept('F'))
      l.kind = Kind::F;
    else
      cur.fail("expected a block label (R, Z, T, F, Qp, Zp, Pr)");
  }
  if (padic) {
    if (cur.accept('(')) {
      l.prime = cur.natural();
      cur.expect(')');
    } else {
      // the prime may be omitted when the object has a single block of this kind
      std::vector<Prime> candidates;
      for (const auto& b : g.blocks())
        if (b.label.kind == l.kind) candidates.push_back(b.label.prime);
      if (candidates.size() != 1)
        throw ParseError(std::string("ambiguous or missing block ") + kind_name(l.kind) + " in " + g.str(), line, col);
      l.prime = candidates[0];
    }
  }
  if (g.block(l).size == 0) throw ParseError("object " + g.str() + " has no block " + l.str(), line, col);
  return l;
}

}  // namespace

LcaMorphism parse_morphism(Cursor& cur) {
  cur.expect('[');
  LcaObject src = parse_object(cur);
  cur.expect("->");
  LcaObject dst = parse_object(cur);
  cur.expect(']');
  cur.expect('{');
  std::vector<LcaMorphism::BlockEntry> blocks;
  if (!cur.accept('}')) {
    do {
      int line = cur.line(), col = cur.column();
      cur.expect('(');
      BlockLabel a = parse_label(cur, src);
      cur.expect(',');
      BlockLabel b = parse_label(cur, dst);
      cur.expect(')');
      cur.expect(':');
      std::vector<std::vector<Rational>> rows(1);
      for (;;) {
        char c = cur.peek();
        if (c == ';') {
          cur.expect(';');
          rows.emplace_back();
        } else if (c == ',' || c == '}' || c == '\0') {
          break;
        } else {
          rows.back().push_back(cur.rational());
        }
      }
      size_t nr = dst.block(b).size, nc = src.block(a).size;
      if (rows.size() != nr) throw ParseError("block needs " + std::to_string(nr) + " rows", line, col);
      for (const auto& r : rows)
        if (r.size() != nc) throw ParseError("block rows need " + std::to_string(nc) + " entries", line, col);
      for (const auto& [labels, m] : blocks)
        if (labels.first == a && labels.second == b) throw ParseError("duplicate block", line, col);
      blocks.push_back({{a, b}, QMatrix::from_rows(rows)});
    } while (cur.accept(','));
    cur.expect('}');
  }
  try {
    return LcaMorphism::from_blocks(src, dst, blocks);
  } catch (const InvalidMorphism& e) {
    cur.fail(e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

// Contribution of the path from -> via -> to, given the two entries.
Rational path_term(const Component& from, const Component& via, const Component& to, const Rational& first,
                   const Rational& second) {
  bool element_source = from.kind == Kind::Z || from.kind == Kind::F || from.kind == Kind::Zp;
  if (element_source && padic_kind(via.kind)) {
    if (to.kind == Kind::T) return padic_frac(Rational(first * second), via.prime);
    if (to.kind == Kind::F) {
      // via is Z_p; reduce the p-adic element before acting on a p-power torsion point
      Prime p = via.prime;
      unsigned long v = mpz_divisible_ui_p(to.order.get_mpz_t(), p) ? valuation(to.order, p) : 0;
      return Rational(padic_residue(first, p, v) * second.get_num());
    }
  }
  return first * second;
}

}  // namespace

LcaMorphism compose(const LcaMorphism& f, const LcaMorphism& g) {
  if (f.target() != g.source())
    throw SourceTargetMismatch("cannot compose " + f.source().str() + " -> " + f.target().str() + " with " +
                               g.source().str() + " -> " + g.target().str());
  auto a = f.source().components(), b = f.target().components(), c = g.target().components();
  const QMatrix &F = f.matrix(), &G = g.matrix();
  QMatrix m(c.size(), a.size());
  for (size_t k = 0; k < b.size(); ++k)
    for (size_t j = 0; j < a.size(); ++j) {
      if (F(k, j) == 0) continue;
      for (size_t i = 0; i < c.size(); ++i)
        if (G(i, k) != 0) m(i, j) += path_term(a[j], b[k], c[i], F(k, j), G(i, k));
    }
  // Paths through a torsion group can leave a value that only vanishes after reduction,
  // e.g. Z_2 -> Z/10 -> Q_5/Z_5.
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) {
      if (m(i, j) == 0 || entry_allowed(a[j], c[i])) continue;
      Rational v = m(i, j);
      if (c[i].kind == Kind::T) v = frac(v);
      if (c[i].kind == Kind::F && is_integer(v)) v = Rational(mod(v.get_num(), c[i].order));
      if (c[i].kind == Kind::Pr) v = padic_frac(v, c[i].prime);
      m(i, j) = v;
    }
  return LcaMorphism(f.source(), g.target(), m);
}

LcaMorphism operator+(const LcaMorphism& f, const LcaMorphism& g) {
  if (f.source() != g.source() || f.target() != g.target()) throw SourceTargetMismatch("sum of unrelated morphisms");
  return LcaMorphism(f.source(), f.target(), f.matrix() + g.matrix());
}

LcaMorphism operator-(const LcaMorphism& f) { return LcaMorphism(f.source(), f.target(), -f.matrix()); }

LcaMorphism operator-(const LcaMorphism& f, const LcaMorphism& g) { return f + (-g); }

LcaMorphism direct_sum(const LcaMorphism& f, const LcaMorphism& g) {
  auto sc = f.source().components(), tc = f.target().components();
  auto sg = g.source().components(), tg = g.target().components();
  sc.insert(sc.end(), sg.begin(), sg.end());
  tc.insert(tc.end(), tg.begin(), tg.end());
  return canonical_morphism(Layout::of(sc), Layout::of(tc), block_diag(f.matrix(), g.matrix()));
}

std::vector<size_t> dual_positions(const LcaObject& g) {
  LcaObject d = dual(g);
  std::map<BlockLabel, size_t> next;
  std::vector<size_t> pos;
  for (const auto& c : g.components()) {
    BlockLabel l{c.kind, padic_kind(c.kind) ? c.prime : 0};
    switch (c.kind) {
      case Kind::Z: l.kind = Kind::T; break;
      case Kind::T: l.kind = Kind::Z; break;
      case Kind::Zp: l.kind = Kind::Pr; break;
      case Kind::Pr: l.kind = Kind::Zp; break;
      default: break;
    }
    pos.push_back(d.block(l).offset + next[l]++);
  }
  return pos;
}

namespace {

// Entry of the dual map between the dual components, under the pairings
// R x R: xy, Z x T: nt, Z/d x Z/d: ab/d, Q_p x Q_p and Z_p x Pr: p-fractional part of the product.
Rational dual_entry(const Component& from, const Component& to, const Rational& e) {
  if (from.kind == Kind::F && to.kind == Kind::F) return e * from.order / to.order;
  if ((from.kind == Kind::Z || from.kind == Kind::Zp) && to.kind == Kind::F) return e / to.order;
  if (from.kind == Kind::F && (to.kind == Kind::T || to.kind == Kind::Pr)) return e * from.order;
  return e;
}

}  // namespace

LcaMorphism dual_morphism(const LcaMorphism& f) {
  auto sc = f.source().components(), tc = f.target().components();
  auto spos = dual_positions(f.source()), tpos = dual_positions(f.target());
  QMatrix m(sc.size(), tc.size());
  for (size_t i = 0; i < tc.size(); ++i)
    for (size_t j = 0; j < sc.size(); ++j)
      if (f.matrix()(i, j) != 0) m(spos[j], tpos[i]) = dual_entry(sc[j], tc[i], f.matrix()(i, j));
  return LcaMorphism(dual(f.target()), dual(f.source()), m);
}

// ---------------------------------------------------------------------------
// Layouts

Layout Layout::of(const std::vector<Component>& comps) {
  Layout l;
  l.comps = comps;
  l.canonical = LcaObject::from_components(comps);
  size_t n = comps.size(), cn = l.canonical.dim();
  l.to_canonical = QMatrix(cn, n);
  l.from_canonical = QMatrix(n, cn);
  std::vector<size_t> fin;
  std::map<BlockLabel, size_t> next;
  for (size_t i = 0; i < n; ++i) {
    const auto& c = comps[i];
    if (c.kind == Kind::F) {
      fin.push_back(i);
      continue;
    }
    BlockLabel lab{c.kind, padic_kind(c.kind) ? c.prime : 0};
    size_t pos = l.canonical.block(lab).offset + next[lab]++;
    l.to_canonical(pos, i) = 1;
    l.from_canonical(i, pos) = 1;
  }
  if (!fin.empty()) {
    // Match primary pieces to invariant factors prime by prime (largest with largest),
    // so the isomorphism never mixes different primes or pieces of one prime.
    struct Piece {
      size_t comp;
      Prime p;
      unsigned long a;
    };
    std::map<Prime, std::vector<Piece>> by_prime;
    for (size_t i : fin)
      for (const auto& [p, a] : factorize(comps[i].order)) by_prime[p].push_back({i, p, a});
    size_t m = 0;
    for (auto& [p, v] : by_prime) {
      std::stable_sort(v.begin(), v.end(), [](const Piece& x, const Piece& y) { return x.a > y.a; });
      m = std::max(m, v.size());
    }
    std::vector<Integer> inv(m, Integer(1));  // inv[j]: j-th largest invariant factor
    for (const auto& [p, v] : by_prime)
      for (size_t j = 0; j < v.size(); ++j) inv[j] *= pow(p, v[j].a);
    const auto& orders = l.canonical.finite_part();
    if (orders.size() != m) throw Error("layout: invariant factors do not match");
    size_t off = l.canonical.block({Kind::F}).offset;
    for (const auto& [p, v] : by_prime)
      for (size_t j = 0; j < v.size(); ++j) {
        size_t row = m - 1 - j;
        const Integer &d = inv[j], &c = comps[v[j].comp].order;
        if (d != orders[row]) throw Error("layout: invariant factors do not match");
        Integer q = pow(p, v[j].a), dq = d / q, cq = c / q, x, y;
        // Z/q inside Z/d is generated by d/q; inside Z/c by the idempotent c/q * (c/q)^-1
        mpz_invert(x.get_mpz_t(), dq.get_mpz_t(), q.get_mpz_t());
        mpz_invert(y.get_mpz_t(), cq.get_mpz_t(), q.get_mpz_t());
        Rational& to = l.to_canonical(off + row, v[j].comp);
        to = Rational(mod(Integer(to.get_num()) + dq, d));
        Rational& from = l.from_canonical(v[j].comp, off + row);
        from = Rational(mod(Integer(from.get_num()) + mod(x * cq * y, c), c));
      }
  }
  return l;
}

LcaMorphism canonical_morphism(const Layout& src, const Layout& dst, const QMatrix& raw) {
  return LcaMorphism(src.canonical, dst.canonical, dst.to_canonical * raw * src.from_canonical);
}

QMatrix raw_matrix(const LcaMorphism& f, const Layout& src, const Layout& dst) {
  if (f.source() != src.canonical || f.target() != dst.canonical) throw ShapeMismatch("layout does not match morphism");
  return dst.from_canonical * f.matrix() * src.to_canonical;
}

}  // namespace lca

#include "lcakit/object.hpp"

#include "grammar.hpp"
#include "lcakit/matrix.hpp"

namespace lca {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::R: return "R";
    case Kind::Z: return "Z";
    case Kind::T: return "T";
    case Kind::F: return "F";
    case Kind::Qp: return "Qp";
    case Kind::Zp: return "Zp";
    case Kind::Pr: return "Pr";
  }
  return "?";
}

std::string BlockLabel::str() const {
  std::string s = kind_name(kind);
  if (prime) s += "(" + std::to_string(prime) + ")";
  return s;
}

bool BlockLabel::operator<(const BlockLabel& o) const {
  // canonical order: R, Z, T, F, then per prime Qp, Zp, Pr
  auto key = [](const BlockLabel& b) {
    bool padic = b.kind == Kind::Qp || b.kind == Kind::Zp || b.kind == Kind::Pr;
    return std::make_tuple(padic ? b.prime : 0ul, static_cast<int>(b.kind));
  };
  return key(*this) < key(o);
}

std::string PredicateSet::str() const {
  auto b = [](bool x) { return x ? "true" : "false"; };
  return std::string("compact=") + b(is_compact) + " discrete=" + b(is_discrete) +
         " compactly_generated=" + b(is_compactly_generated) + " nss=" + b(is_nss) +
         " vector=" + b(is_vector_module) + " RC=" + b(in_RC_class) + " RD=" + b(in_RD_class);
}

LcaObject LcaObject::real(size_t n) {
  LcaObject g;
  g.real_ = n;
  return g;
}
LcaObject LcaObject::lattice(size_t n) {
  LcaObject g;
  g.lattice_ = n;
  return g;
}
LcaObject LcaObject::torus(size_t n) {
  LcaObject g;
  g.torus_ = n;
  return g;
}
LcaObject LcaObject::finite(const std::vector<Integer>& orders) {
  LcaObject g;
  for (const auto& d : orders)
    if (d < 1) throw Error("finite cyclic order must be positive, got " + d.get_str());
  g.finite_ = orders;
  g.normalize();
  return g;
}

namespace {
void require_prime(Prime p) {
  if (!is_prime(Integer(p))) throw Error(std::to_string(p) + " is not a prime");
}
}  // namespace

LcaObject LcaObject::qp(Prime p, size_t n) {
  require_prime(p);
  LcaObject g;
  g.padic_[p].qp = n;
  g.normalize();
  return g;
}
LcaObject LcaObject::zp(Prime p, size_t n) {
  require_prime(p);
  LcaObject g;
  g.padic_[p].zp = n;
  g.normalize();
  return g;
}
LcaObject LcaObject::pruefer(Prime p, size_t n) {
  require_prime(p);
  LcaObject g;
  g.padic_[p].pr = n;
  g.normalize();
  return g;
}

LcaObject LcaObject::from_components(const std::vector<Component>& comps) {
  LcaObject g;
  for (const auto& c : comps) {
    switch (c.kind) {
      case Kind::R: ++g.real_; break;
      case Kind::Z: ++g.lattice_; break;
      case Kind::T: ++g.torus_; break;
      case Kind::F: g.finite_.push_back(c.order); break;
      case Kind::Qp: require_prime(c.prime); ++g.padic_[c.prime].qp; break;
      case Kind::Zp: require_prime(c.prime); ++g.padic_[c.prime].zp; break;
      case Kind::Pr: require_prime(c.prime); ++g.padic_[c.prime].pr; break;
    }
  }
  g.normalize();
  return g;
}

void LcaObject::normalize() {
  finite_ = invariant_factors(finite_);
  for (auto it = padic_.begin(); it != padic_.end();) {
    if (it->second.zero())
      it = padic_.erase(it);
    else
      ++it;
  }
}

PadicRanks LcaObject::padic(Prime p) const {
  auto it = padic_.find(p);
  return it == padic_.end() ? PadicRanks{} : it->second;
}

LcaObject LcaObject::operator+(const LcaObject& o) const {
  LcaObject g(*this);
  g.real_ += o.real_;
  g.lattice_ += o.lattice_;
  g.torus_ += o.torus_;
  g.finite_.insert(g.finite_.end(), o.finite_.begin(), o.finite_.end());
  for (const auto& [p, r] : o.padic_) {
    auto& t = g.padic_[p];
    t.qp += r.qp;
    t.zp += r.zp;
    t.pr += r.pr;
  }
  g.normalize();
  return g;
}

bool LcaObject::operator==(const LcaObject& o) const {
  return real_ == o.real_ && lattice_ == o.lattice_ && torus_ == o.torus_ && finite_ == o.finite_ &&
         padic_ == o.padic_;
}

size_t LcaObject::dim() const {
  size_t n = real_ + lattice_ + torus_ + finite_.size();
  for (const auto& [p, r] : padic_) n += r.qp + r.zp + r.pr;
  return n;
}

std::vector<Component> LcaObject::components() const {
  std::vector<Component> out;
  for (size_t i = 0; i < real_; ++i) out.push_back({Kind::R});
  for (size_t i = 0; i < lattice_; ++i) out.push_back({Kind::Z});
  for (size_t i = 0; i < torus_; ++i) out.push_back({Kind::T});
  for (const auto& d : finite_) out.push_back({Kind::F, d});
  for (const auto& [p, r] : padic_) {
    for (size_t i = 0; i < r.qp; ++i) out.push_back({Kind::Qp, 0, p});
    for (size_t i = 0; i < r.zp; ++i) out.push_back({Kind::Zp, 0, p});
    for (size_t i = 0; i < r.pr; ++i) out.push_back({Kind::Pr, 0, p});
  }
  return out;
}

std::vector<BlockRange> LcaObject::blocks() const {
  std::vector<BlockRange> out;
  size_t off = 0;
  auto add = [&](BlockLabel l, size_t n) {
    if (n) out.push_back({l, off, n});
    off += n;
  };
  add({Kind::R}, real_);
  add({Kind::Z}, lattice_);
  add({Kind::T}, torus_);
  add({Kind::F}, finite_.size());
  for (const auto& [p, r] : padic_) {
    add({Kind::Qp, p}, r.qp);
    add({Kind::Zp, p}, r.zp);
    add({Kind::Pr, p}, r.pr);
  }
  return out;
}

BlockRange LcaObject::block(const BlockLabel& label) const {
  for (const auto& b : blocks())
    if (b.label == label) return b;
  return {label, 0, 0};
}

Integer LcaObject::finite_order() const {
  Integer n = 1;
  for (const auto& d : finite_) n *= d;
  return n;
}

std::string LcaObject::str() const {
  std::vector<std::string> terms;
  auto add = [&](const std::string& atom, size_t n) {
    if (n == 1) terms.push_back(atom);
    if (n > 1) terms.push_back(atom + "^" + std::to_string(n));
  };
  add("R", real_);
  add("Z", lattice_);
  add("T", torus_);
  for (const auto& d : finite_) terms.push_back("Z/" + d.get_str());
  for (const auto& [p, r] : padic_) {
    std::string ps = "(" + std::to_string(p) + ")";
    add("Qp" + ps, r.qp);
    add("Zp" + ps, r.zp);
    add("Pr" + ps, r.pr);
  }
  if (terms.empty()) return "0";
  std::string s = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) s += " + " + terms[i];
  return s;
}

LcaObject LcaObject::parse(const std::string& text) {
  detail::Cursor cur(text);
  LcaObject g = detail::parse_object(cur);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return g;
}

LcaObject detail::parse_object(Cursor& cur) {
  std::vector<Component> comps;
  auto exponent = [&]() -> size_t { return cur.accept('^') ? cur.natural() : 1; };
  auto prime_arg = [&]() -> Prime {
    cur.expect('(');
    int line = cur.line(), col = cur.column();
    Prime p = cur.natural();
    if (!is_prime(Integer(p))) throw ParseError(std::to_string(p) + " is not a prime", line, col);
    cur.expect(')');
    return p;
  };
  if (cur.at_end()) cur.fail("empty object");
  do {
    char c = cur.peek();
    if (c == '0') {
      cur.expect('0');
    } else if (cur.accept("Qp")) {
      Prime p = prime_arg();
      comps.insert(comps.end(), exponent(), Component{Kind::Qp, 0, p});
    } else if (cur.accept("Zp")) {
      Prime p = prime_arg();
      comps.insert(comps.end(), exponent(), Component{Kind::Zp, 0, p});
    } else if (cur.accept("Pr")) {
      Prime p = prime_arg();
      comps.insert(comps.end(), exponent(), Component{Kind::Pr, 0, p});
    } else if (cur.accept('R')) {
      comps.insert(comps.end(), exponent(), Component{Kind::R});
    } else if (cur.accept('T')) {
      comps.insert(comps.end(), exponent(), Component{Kind::T});
    } else if (cur.accept('Z')) {
      if (cur.accept('/')) {
        int line = cur.line(), col = cur.column();
        Integer d = cur.integer();
        if (d < 1) throw ParseError("cyclic order must be positive", line, col);
        size_t n = exponent();
        comps.insert(comps.end(), n, Component{Kind::F, d});
      } else {
        comps.insert(comps.end(), exponent(), Component{Kind::Z});
      }
    } else {
      cur.fail("expected one of R, Z, T, Z/d, Qp(p), Zp(p), Pr(p), 0");
    }
  } while (cur.accept('+'));
  return LcaObject::from_components(comps);
}

LcaObject dual(const LcaObject& g) {
  std::vector<Component> comps;
  for (const auto& c : g.components()) {
    switch (c.kind) {
      case Kind::Z: comps.push_back({Kind::T}); break;
      case Kind::T: comps.push_back({Kind::Z}); break;
      case Kind::Zp: comps.push_back({Kind::Pr, 0, c.prime}); break;
      case Kind::Pr: comps.push_back({Kind::Zp, 0, c.prime}); break;
      default: comps.push_back(c);
    }
  }
  return LcaObject::from_components(comps);
}

PredicateSet predicates(const LcaObject& g) {
  bool qp = false, zp = false, pr = false;
  for (const auto& [p, r] : g.padic_parts()) {
    qp |= r.qp > 0;
    zp |= r.zp > 0;
    pr |= r.pr > 0;
  }
  PredicateSet s;
  s.is_compact = g.real_rank() == 0 && g.lattice_rank() == 0 && !qp && !pr;
  s.is_discrete = g.real_rank() == 0 && g.torus_rank() == 0 && !qp && !zp;
  s.is_compactly_generated = !qp && !pr;
  s.is_nss = !qp && !zp;
  s.is_vector_module = g.lattice_rank() == 0 && g.torus_rank() == 0 && g.finite_part().empty() && g.padic_parts().empty();
  s.in_RC_class = g.lattice_rank() == 0 && !qp && !pr;
  s.in_RD_class = g.torus_rank() == 0 && !qp && !zp;
  return s;
}

ExactInvariants exact_invariants(const LcaObject& g) {
  ExactInvariants e;
  e.dim_inf = long(g.real_rank() + g.torus_rank());
  e.codim_inf = long(g.real_rank() + g.lattice_rank());
  for (const auto& [p, r] : g.padic_parts()) e.padic[p] = {long(r.qp + r.zp), long(r.qp + r.pr)};
  return e;
}

}  // namespace lca

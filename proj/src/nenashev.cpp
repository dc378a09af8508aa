#include "lcakit/nenashev.hpp"

#include <algorithm>
#include <sstream>

#include "lcakit/haar.hpp"

namespace lca {

namespace {

void check_chain(const Backend& be, const Path& p) {
  if (p.empty()) throw ShapeMismatch("empty path");
  for (const auto& a : p)
    if (!be.has_arrow(a)) throw ObjectMismatch("unknown arrow " + a);
  for (size_t k = 0; k + 1 < p.size(); ++k)
    if (be.target(p[k]) != be.source(p[k + 1]))
      throw ShapeMismatch("arrows " + p[k] + " and " + p[k + 1] + " do not compose");
}

bool is_identity(const LcaMorphism& f) {
  return f.source() == f.target() && f == LcaMorphism::identity(f.source());
}

}  // namespace

// ---- ComputedBackend

ComputedBackend::ComputedBackend() { objects_["0"] = LcaObject(); }

void ComputedBackend::add_object(const std::string& name, const LcaObject& g) {
  if (objects_.count(name)) throw Error("object " + name + " defined twice");
  objects_[name] = g;
}

void ComputedBackend::add_arrow(const std::string& name, const std::string& from, const std::string& to,
                                const LcaMorphism& f) {
  if (arrows_.count(name)) throw Error("arrow " + name + " defined twice");
  if (f.source() != object(from) || f.target() != object(to))
    throw ObjectMismatch("arrow " + name + " is " + f.source().str() + " -> " + f.target().str() + ", not " + from +
                         " -> " + to);
  arrows_[name] = Arrow{from, to, f};
}

const LcaObject& ComputedBackend::object(const std::string& x) const {
  auto it = objects_.find(x);
  if (it == objects_.end()) throw ObjectMismatch("unknown object " + x);
  return it->second;
}

const LcaMorphism& ComputedBackend::arrow(const std::string& a) const {
  auto it = arrows_.find(a);
  if (it == arrows_.end()) throw ObjectMismatch("unknown arrow " + a);
  return it->second.f;
}

bool ComputedBackend::is_zero_object(const std::string& x) const { return object(x).is_zero(); }

std::string ComputedBackend::source(const std::string& a) const {
  arrow(a);
  return arrows_.at(a).from;
}

std::string ComputedBackend::target(const std::string& a) const {
  arrow(a);
  return arrows_.at(a).to;
}

std::string ComputedBackend::identity(const std::string& x) {
  std::string h = "1:" + x;
  if (!arrows_.count(h)) arrows_[h] = Arrow{x, x, LcaMorphism::identity(object(x))};
  return h;
}

std::string ComputedBackend::zero(const std::string& x, const std::string& y) {
  std::string h = "0:" + x + ":" + y;
  if (!arrows_.count(h)) arrows_[h] = Arrow{x, y, LcaMorphism(object(x), object(y))};
  return h;
}

LcaMorphism ComputedBackend::compose_path(const Path& p) const {
  check_chain(*this, p);
  LcaMorphism f = arrow(p[0]);
  for (size_t k = 1; k < p.size(); ++k) f = compose(f, arrow(p[k]));
  return f;
}

bool ComputedBackend::equal(const Path& a, const Path& b) const {
  check_chain(*this, a);
  check_chain(*this, b);
  if (source(a.front()) != source(b.front()) || target(a.back()) != target(b.back())) return false;
  return compose_path(a) == compose_path(b);
}

bool ComputedBackend::is_isomorphism(const std::string& a) const {
  const LcaMorphism& f = arrow(a);
  if (f.source() == f.target() && is_automorphism(f)) return true;
  return classify(f) == Admissibility::Isomorphism;
}

Exactness ComputedBackend::exactness(const std::string& monic, const std::string& epic) const {
  check_chain(*this, {monic, epic});
  return check_exact(ExactSequenceSpec::of(arrow(monic), arrow(epic)));
}

std::string ComputedBackend::object_key(const std::string& x) const { return "o:" + object(x).str(); }
std::string ComputedBackend::arrow_key(const std::string& a) const { return "m:" + arrow(a).str(); }

std::optional<LcaObject> ComputedBackend::concrete_object(const std::string& x) const { return object(x); }
std::optional<LcaMorphism> ComputedBackend::concrete_arrow(const std::string& a) const { return arrow(a); }

// ---- DeclaredBackend

struct DeclaredBackend::Normal {
  struct Elem {
    std::string name;  // empty for a concrete morphism
    std::optional<LcaMorphism> f;
    bool operator==(const Elem& o) const { return name == o.name && f == o.f; }
  };
  bool zero = false;
  std::string from, to;
  std::vector<Elem> elems;
  bool operator==(const Normal& o) const {
    return zero == o.zero && from == o.from && to == o.to && (zero || elems == o.elems);
  }
};

void DeclaredBackend::add_object(const std::string& name, const LcaObject& g) {
  if (formal_objects_.count(name)) throw Error("object " + name + " defined twice");
  concrete_.add_object(name, g);
}

void DeclaredBackend::add_formal_object(const std::string& name) {
  if (has_object(name)) throw Error("object " + name + " defined twice");
  formal_objects_.insert(name);
}

void DeclaredBackend::add_arrow(const std::string& name, const std::string& from, const std::string& to,
                                const LcaMorphism& f) {
  if (formal_arrows_.count(name)) throw Error("arrow " + name + " defined twice");
  if (!is_concrete_object(from) || !is_concrete_object(to))
    throw ObjectMismatch("arrow " + name + " has a formal endpoint and cannot carry a morphism");
  concrete_.add_arrow(name, from, to, f);
}

void DeclaredBackend::add_formal_arrow(const std::string& name, const std::string& from, const std::string& to) {
  if (has_arrow(name)) throw Error("arrow " + name + " defined twice");
  if (!has_object(from)) throw ObjectMismatch("unknown object " + from);
  if (!has_object(to)) throw ObjectMismatch("unknown object " + to);
  formal_arrows_[name] = FormalArrow{from, to};
}

void DeclaredBackend::declare_composite(const std::string& f, const std::string& g, const std::string& h) {
  check_chain(*this, {f, g});
  if (h != "0") {
    check_chain(*this, {h});
    if (source(h) != source(f) || target(h) != target(g))
      throw ShapeMismatch("composite " + h + " does not run " + source(f) + " -> " + target(g));
  }
  composites_[{f, g}] = h;
}

void DeclaredBackend::declare_commutes(const Path& a, const Path& b) {
  check_chain(*this, a);
  check_chain(*this, b);
  if (source(a.front()) != source(b.front()) || target(a.back()) != target(b.back()))
    throw ShapeMismatch("commuting paths have different endpoints");
  commutes_.push_back({a, b});
}

void DeclaredBackend::declare_isomorphism(const std::string& a) {
  check_chain(*this, {a});
  isos_.insert(a);
}

void DeclaredBackend::declare_exact(const std::string& monic, const std::string& epic) {
  check_chain(*this, {monic, epic});
  exact_.insert({monic, epic});
}

bool DeclaredBackend::has_object(const std::string& x) const {
  return concrete_.has_object(x) || formal_objects_.count(x) > 0;
}

bool DeclaredBackend::has_arrow(const std::string& a) const {
  return concrete_.has_arrow(a) || formal_arrows_.count(a) > 0;
}

bool DeclaredBackend::is_zero_object(const std::string& x) const {
  return is_concrete_object(x) && concrete_.is_zero_object(x);
}

std::string DeclaredBackend::source(const std::string& a) const {
  if (concrete_.has_arrow(a)) return concrete_.source(a);
  auto it = formal_arrows_.find(a);
  if (it == formal_arrows_.end()) throw ObjectMismatch("unknown arrow " + a);
  return it->second.from;
}

std::string DeclaredBackend::target(const std::string& a) const {
  if (concrete_.has_arrow(a)) return concrete_.target(a);
  auto it = formal_arrows_.find(a);
  if (it == formal_arrows_.end()) throw ObjectMismatch("unknown arrow " + a);
  return it->second.to;
}

std::string DeclaredBackend::identity(const std::string& x) {
  if (is_concrete_object(x)) return concrete_.identity(x);
  if (!has_object(x)) throw ObjectMismatch("unknown object " + x);
  std::string h = "1:" + x;
  formal_arrows_.try_emplace(h, FormalArrow{x, x, FormalArrow::Identity});
  return h;
}

std::string DeclaredBackend::zero(const std::string& x, const std::string& y) {
  if (is_concrete_object(x) && is_concrete_object(y)) return concrete_.zero(x, y);
  if (!has_object(x)) throw ObjectMismatch("unknown object " + x);
  if (!has_object(y)) throw ObjectMismatch("unknown object " + y);
  std::string h = "0:" + x + ":" + y;
  formal_arrows_.try_emplace(h, FormalArrow{x, y, FormalArrow::Zero});
  return h;
}

DeclaredBackend::Normal DeclaredBackend::normalize(const Path& p) const {
  check_chain(*this, p);
  Normal n;
  n.from = source(p.front());
  n.to = target(p.back());
  for (const auto& a : p)
    if (is_zero_object(source(a)) || is_zero_object(target(a))) {
      n.zero = true;
      return n;
    }
  // expand one arrow; false when it is zero
  auto push = [&](std::vector<Normal::Elem>& out, const std::string& a) {
    if (concrete_.has_arrow(a)) {
      const LcaMorphism& f = concrete_.arrow(a);
      if (f.is_zero()) return false;
      if (!is_identity(f)) out.push_back({"", f});
      return true;
    }
    const FormalArrow& fa = formal_arrows_.at(a);
    if (fa.role == FormalArrow::Zero) return false;
    if (fa.role == FormalArrow::Plain) out.push_back({a, std::nullopt});
    return true;
  };
  for (const auto& a : p)
    if (!push(n.elems, a)) {
      n.zero = true;
      return n;
    }
  // saturate under concrete composition and the declared composition table
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t k = 0; k + 1 < n.elems.size() && !changed; ++k) {
      const auto& x = n.elems[k];
      const auto& y = n.elems[k + 1];
      std::vector<Normal::Elem> mid;
      if (x.f && y.f) {
        LcaMorphism g = compose(*x.f, *y.f);
        if (g.is_zero()) {
          n.zero = true;
          return n;
        }
        if (!is_identity(g)) mid.push_back({"", g});
      } else if (!x.f && !y.f && composites_.count({x.name, y.name})) {
        const std::string& h = composites_.at({x.name, y.name});
        if (h == "0" || !push(mid, h)) {
          n.zero = true;
          return n;
        }
      } else {
        continue;
      }
      n.elems.erase(n.elems.begin() + k, n.elems.begin() + k + 2);
      n.elems.insert(n.elems.begin() + k, mid.begin(), mid.end());
      changed = true;
    }
  }
  return n;
}

bool DeclaredBackend::equal(const Path& a, const Path& b) const {
  Normal na = normalize(a), nb = normalize(b);
  if (na.from != nb.from || na.to != nb.to) return false;
  if (na == nb) return true;
  for (const auto& [x, y] : commutes_) {
    Normal nx = normalize(x), ny = normalize(y);
    if ((na == nx && nb == ny) || (na == ny && nb == nx)) return true;
  }
  return false;
}

bool DeclaredBackend::is_isomorphism(const std::string& a) const {
  if (concrete_.has_arrow(a)) return concrete_.is_isomorphism(a);
  check_chain(*this, {a});
  return formal_arrows_.at(a).role == FormalArrow::Identity || isos_.count(a) > 0;
}

Exactness DeclaredBackend::exactness(const std::string& monic, const std::string& epic) const {
  check_chain(*this, {monic, epic});
  std::string a = source(monic), b = target(monic), c = target(epic);
  if (concrete_.has_arrow(monic) && concrete_.has_arrow(epic)) return concrete_.exactness(monic, epic);
  if (exact_.count({monic, epic})) return Exactness::Exact;
  if (is_zero_object(a) && is_isomorphism(epic)) return Exactness::Exact;
  if (is_zero_object(c) && is_isomorphism(monic)) return Exactness::Exact;
  if (is_zero_object(a) && is_zero_object(b) && is_zero_object(c)) return Exactness::Exact;
  return Exactness::NotExact;
}

std::string DeclaredBackend::object_key(const std::string& x) const {
  if (is_concrete_object(x)) return concrete_.object_key(x);
  if (!formal_objects_.count(x)) throw ObjectMismatch("unknown object " + x);
  return "x:" + x;
}

std::string DeclaredBackend::arrow_key(const std::string& a) const {
  if (concrete_.has_arrow(a)) return concrete_.arrow_key(a);
  check_chain(*this, {a});
  const FormalArrow& fa = formal_arrows_.at(a);
  switch (fa.role) {
    case FormalArrow::Identity: return "1:" + object_key(fa.from);
    case FormalArrow::Zero: return "0:" + object_key(fa.from) + ">" + object_key(fa.to);
    default: return "a:" + a;
  }
}

std::optional<LcaObject> DeclaredBackend::concrete_object(const std::string& x) const {
  if (is_concrete_object(x)) return concrete_.object(x);
  return std::nullopt;
}

std::optional<LcaMorphism> DeclaredBackend::concrete_arrow(const std::string& a) const {
  if (concrete_.has_arrow(a)) return concrete_.arrow(a);
  return std::nullopt;
}

// ---- double sequences

std::string DoubleSes::label() const {
  auto shown = [](const std::string& h) {
    if (h.rfind("0:", 0) == 0) return std::string("0");
    if (h.rfind("1:", 0) == 0) return std::string("1");
    return h;
  };
  return "(" + a + " => " + b + " => " + c + "; " + shown(p) + ", " + shown(r) + " | " + shown(q) + ", " +
         shown(s) + ")";
}

void validate(const Backend& be, const DoubleSes& d) {
  for (const auto* x : {&d.a, &d.b, &d.c})
    if (!be.has_object(*x)) throw ObjectMismatch("unknown object " + *x);
  auto runs = [&](const std::string& f, const std::string& from, const std::string& to, const char* role) {
    if (!be.has_arrow(f)) throw ObjectMismatch(std::string("unknown ") + role + " " + f);
    if (be.source(f) != from || be.target(f) != to)
      throw ObjectMismatch(std::string(role) + " " + f + " runs " + be.source(f) + " -> " + be.target(f) +
                           ", expected " + from + " -> " + to);
  };
  runs(d.p, d.a, d.b, "yin monic");
  runs(d.r, d.b, d.c, "yin epic");
  runs(d.q, d.a, d.b, "yang monic");
  runs(d.s, d.b, d.c, "yang epic");
  for (const auto& [side, m, e] : {std::tuple{"yin", d.p, d.r}, std::tuple{"yang", d.q, d.s}}) {
    Exactness x = be.exactness(m, e);
    if (x == Exactness::Unknown)
      throw Undecided(std::string(side) + " sequence (" + m + ", " + e + ") mixes places; exactness undecided");
    if (x != Exactness::Exact) throw NotExact(std::string(side) + " sequence (" + m + ", " + e + ") is not exact");
  }
}

bool yin_is_yang(const Backend& be, const DoubleSes& d) { return be.equal({d.p}, {d.q}) && be.equal({d.r}, {d.s}); }

std::string generator_key(const Backend& be, const DoubleSes& d) {
  return be.object_key(d.a) + "|" + be.object_key(d.b) + "|" + be.object_key(d.c) + "|" + be.arrow_key(d.p) + "|" +
         be.arrow_key(d.r) + "|" + be.arrow_key(d.q) + "|" + be.arrow_key(d.s);
}

// ---- expressions

Integer K1Expression::coefficient(const std::string& key) const {
  auto it = terms.find(key);
  return it == terms.end() ? Integer(0) : it->second;
}

K1Expression& K1Expression::operator+=(const K1Expression& o) {
  for (const auto& [k, c] : o.terms) {
    Integer v = coefficient(k) + c;
    if (v == 0)
      terms.erase(k);
    else
      terms[k] = v;
  }
  for (const auto& [k, l] : o.labels) labels.emplace(k, l);
  return *this;
}

K1Expression K1Expression::operator+(const K1Expression& o) const {
  K1Expression out = *this;
  out += o;
  return out;
}

K1Expression K1Expression::operator*(const Integer& k) const {
  K1Expression out;
  out.labels = labels;
  if (k == 0) return out;
  for (const auto& [key, c] : terms) out.terms[key] = c * k;
  return out;
}

K1Expression K1Expression::operator-(const K1Expression& o) const { return *this + o * Integer(-1); }

std::string K1Expression::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms) {
    auto it = labels.find(k);
    std::string name = "[" + (it == labels.end() ? k : it->second) + "]";
    Integer a = abs(c);
    std::string term = (a == 1 ? "" : a.get_str() + " ") + name;
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

K1Expression dses_generator(const Backend& be, const DoubleSes& d) {
  validate(be, d);
  K1Expression e;
  if (yin_is_yang(be, d)) return e;
  std::string key = generator_key(be, d);
  e.terms[key] = 1;
  e.labels[key] = d.label();
  return e;
}

DoubleSes class_of_automorphism(Backend& be, const std::string& x, const std::string& phi) {
  if (!be.has_arrow(phi)) throw ObjectMismatch("unknown arrow " + phi);
  if (be.source(phi) != x || be.target(phi) != x) throw NotAnAutomorphism(phi + " is not an endomorphism of " + x);
  if (!be.is_isomorphism(phi)) throw NotAnAutomorphism(phi + " is not an automorphism");
  std::string z = be.zero("0", x);
  return DoubleSes{"0", x, x, z, phi, z, be.identity(x)};
}

// ---- 3x3 diagrams

void check_diagram(const Backend& be, const ThreeByThree& d) {
  for (size_t i = 0; i < 3; ++i) {
    const DoubleSes& row = d.rows[i];
    const DoubleSes& col = d.cols[i];
    if (row.a != d.objects[i][0] || row.b != d.objects[i][1] || row.c != d.objects[i][2])
      throw ObjectMismatch("row " + std::to_string(i + 1) + " does not run through the diagram's objects");
    if (col.a != d.objects[0][i] || col.b != d.objects[1][i] || col.c != d.objects[2][i])
      throw ObjectMismatch("column " + std::to_string(i + 1) + " does not run through the diagram's objects");
  }
  for (size_t i = 0; i < 3; ++i)
    for (const auto& [what, seq] : {std::pair{"row ", &d.rows[i]}, std::pair{"column ", &d.cols[i]}}) {
      try {
        validate(be, *seq);
      } catch (const NotExact& e) {
        throw RowOrColumnNotExact(what + std::to_string(i + 1) + ": " + e.what());
      } catch (const Undecided& e) {
        throw RowOrColumnNotExact(what + std::to_string(i + 1) + ": " + e.what());
      }
    }
  for (bool yin : {true, false}) {
    // arrow leaving cell (i, j) to the right, and downwards
    auto right = [&](size_t i, size_t j) {
      const DoubleSes& r = d.rows[i];
      return j == 0 ? (yin ? r.p : r.q) : (yin ? r.r : r.s);
    };
    auto down = [&](size_t i, size_t j) {
      const DoubleSes& c = d.cols[j];
      return i == 0 ? (yin ? c.p : c.q) : (yin ? c.r : c.s);
    };
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        if (!be.equal({right(i, j), down(i, j + 1)}, {down(i, j), right(i + 1, j)}))
          throw DiagramNotCommutative(std::string(yin ? "yin" : "yang") + " square at (" + std::to_string(i + 1) +
                                      ", " + std::to_string(j + 1) + ") does not commute: " + right(i, j) + " then " +
                                      down(i, j + 1) + " differs from " + down(i, j) + " then " + right(i + 1, j));
  }
}

namespace {

K1Expression alternating(const Backend& be, const std::array<DoubleSes, 3>& s) {
  return dses_generator(be, s[0]) - dses_generator(be, s[1]) + dses_generator(be, s[2]);
}

}  // namespace

Relation relation_from_3x3(std::shared_ptr<const Backend> be, const ThreeByThree& d, const std::string& name) {
  check_diagram(*be, d);
  Relation r;
  r.name = name;
  r.lhs = alternating(*be, d.rows);
  r.rhs = alternating(*be, d.cols);
  r.diagram = d;
  r.backend = std::move(be);
  return r;
}

std::string Relation::str() const { return (name.empty() ? "" : name + ": ") + lhs.str() + " = " + rhs.str(); }

bool replays(const Relation& r) {
  try {
    check_diagram(*r.backend, r.diagram);
    return alternating(*r.backend, r.diagram.rows) == r.lhs && alternating(*r.backend, r.diagram.cols) == r.rhs;
  } catch (const Error&) {
    return false;
  }
}

void RelationStore::add(Relation r) {
  std::lock_guard<std::mutex> lock(mu_);
  rels_.push_back(std::move(r));
}

std::vector<Relation> RelationStore::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rels_;
}

size_t RelationStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rels_.size();
}

// ---- reduction

bool Reduction::is_zero() const {
  return std::all_of(coordinates.begin(), coordinates.end(), [](const Integer& c) { return c == 0; });
}

std::string Reduction::str() const {
  std::ostringstream os;
  os << "group ";
  if (invariants.empty()) os << "0";
  for (size_t i = 0; i < invariants.size(); ++i)
    os << (i ? " + " : "") << (invariants[i] == 0 ? std::string("Z") : "Z/" + invariants[i].get_str());
  os << "\ncoordinates (";
  for (size_t i = 0; i < coordinates.size(); ++i) os << (i ? ", " : "") << coordinates[i].get_str();
  os << ")\nnormal form " << normal_form.str() << "\ncertificate (";
  for (size_t i = 0; i < certificate.size(); ++i) os << (i ? ", " : "") << certificate[i].get_str();
  os << ")";
  return os.str();
}

Reduction reduce(const K1Expression& expr, const std::vector<Relation>& relations) {
  std::vector<K1Expression> diffs;
  std::map<std::string, std::string> labels = expr.labels;
  std::set<std::string> keys;
  for (const auto& [k, c] : expr.terms) keys.insert(k);
  for (const auto& r : relations) {
    diffs.push_back(r.difference());
    for (const auto& [k, c] : diffs.back().terms) keys.insert(k);
    for (const auto& [k, l] : diffs.back().labels) labels.emplace(k, l);
  }
  Reduction red;
  red.generators.assign(keys.begin(), keys.end());
  size_t m = keys.size(), n = relations.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < m; ++i) index[red.generators[i]] = i;
  ZMatrix rel(m, n), e(m, 1);
  for (size_t j = 0; j < n; ++j)
    for (const auto& [k, c] : diffs[j].terms) rel(index[k], j) = c;
  for (const auto& [k, c] : expr.terms) e(index[k], 0) = c;

  SmithForm sf = smith(rel);
  ZMatrix y = sf.u * e, reduced(m, 1), z(n, 1);
  for (size_t i = 0; i < m; ++i) {
    Integer d = sf.diag(i);
    if (d == 0) {
      reduced(i, 0) = y(i, 0);
    } else {
      reduced(i, 0) = mod(y(i, 0), d);
      z(i, 0) = (y(i, 0) - reduced(i, 0)) / d;
    }
    if (d != 1) {
      red.invariants.push_back(d);
      red.coordinates.push_back(reduced(i, 0));
    }
  }
  ZMatrix rep = sf.uinv * reduced, cert = sf.v * z;
  for (size_t i = 0; i < m; ++i)
    if (rep(i, 0) != 0) {
      red.normal_form.terms[red.generators[i]] = rep(i, 0);
      red.normal_form.labels[red.generators[i]] = labels[red.generators[i]];
    }
  for (size_t j = 0; j < n; ++j) red.certificate.push_back(cert(j, 0));
  return red;
}

bool check_certificate(const K1Expression& expr, const std::vector<Relation>& relations, const Reduction& red) {
  if (red.certificate.size() != relations.size()) return false;
  K1Expression combo;
  for (size_t j = 0; j < relations.size(); ++j) combo += relations[j].difference() * red.certificate[j];
  return expr - red.normal_form == combo;
}

// ---- the modulus on generators

std::optional<PositiveRational> dses_modulus(const Backend& be, const DoubleSes& d) {
  auto p = be.concrete_arrow(d.p), r = be.concrete_arrow(d.r), q = be.concrete_arrow(d.q), s = be.concrete_arrow(d.s);
  if (!p || !r || !q || !s) return std::nullopt;
  return seq_factor(ExactSequenceSpec::of(*q, *s)) / seq_factor(ExactSequenceSpec::of(*p, *r));
}

std::optional<bool> modulus_identity_holds(const Relation& r) {
  auto side = [&](const std::array<DoubleSes, 3>& s) -> std::optional<PositiveRational> {
    auto a = dses_modulus(*r.backend, s[0]), b = dses_modulus(*r.backend, s[1]), c = dses_modulus(*r.backend, s[2]);
    if (!a || !b || !c) return std::nullopt;
    return *a * *c / *b;
  };
  auto rows = side(r.diagram.rows), cols = side(r.diagram.cols);
  if (!rows || !cols) return std::nullopt;
  return *rows == *cols;
}

// ---- the swindle

namespace {

// 0 => x => x (phi, 1) over big => big (Phi, 1) twice, joined by the first-coordinate
// inclusion and the shift.
ThreeByThree swindle_diagram(DeclaredBackend& be, const std::string& x, const std::string& phi,
                             const std::string& big) {
  std::string Phi = "prod_" + phi, inc = "in_" + x, shift = "shift_" + big;
  be.add_formal_object(big);
  be.add_formal_arrow(Phi, big, big);
  be.add_formal_arrow(inc, x, big);
  be.add_formal_arrow(shift, big, big);
  be.declare_isomorphism(Phi);
  be.declare_exact(inc, shift);
  be.declare_commutes({phi, inc}, {inc, Phi});
  be.declare_commutes({Phi, shift}, {shift, Phi});
  ThreeByThree d;
  d.objects = {{{"0", x, x}, {"0", big, big}, {"0", big, big}}};
  d.rows = {class_of_automorphism(be, x, phi), class_of_automorphism(be, big, Phi),
            class_of_automorphism(be, big, Phi)};
  std::string z = be.zero("0", "0");
  DoubleSes zeros{"0", "0", "0", z, z, z, z};
  DoubleSes col{x, big, big, inc, shift, inc, shift};
  d.cols = {zeros, col, col};
  return d;
}

}  // namespace

SwindleReplay swindle_replay(const ZMatrix& phi) {
  size_t n = phi.rows();
  if (phi.cols() != n || abs(det(phi)) != 1) throw NotAnAutomorphism("phi is not in GL_n(Z)");
  QMatrix m = to_rational(phi), one = QMatrix::identity(n);
  LcaObject lat = LcaObject::lattice(n), vec = LcaObject::real(n), tor = LcaObject::torus(n);

  SwindleReplay out;
  auto c = std::make_shared<ComputedBackend>();
  c->add_object("X", lat);
  c->add_object("XR", vec);
  c->add_object("T", tor);
  c->add_arrow("phi", "X", "X", LcaMorphism(lat, lat, m));
  c->add_arrow("phiR", "XR", "XR", LcaMorphism(vec, vec, m));
  c->add_arrow("phiT", "T", "T", LcaMorphism(tor, tor, m));
  c->add_arrow("incl", "X", "XR", LcaMorphism(lat, vec, one));
  c->add_arrow("proj", "XR", "T", LcaMorphism(vec, tor, one));
  ThreeByThree d;
  d.objects = {{{"0", "X", "X"}, {"0", "XR", "XR"}, {"0", "T", "T"}}};
  d.rows = {class_of_automorphism(*c, "X", "phi"), class_of_automorphism(*c, "XR", "phiR"),
            class_of_automorphism(*c, "T", "phiT")};
  std::string z = c->zero("0", "0");
  DoubleSes col{"X", "XR", "T", "incl", "proj", "incl", "proj"};
  d.cols = {DoubleSes{"0", "0", "0", z, z, z, z}, col, col};
  out.computed = c;
  out.lattice_torus = relation_from_3x3(c, d, "lattice-torus");
  out.target = dses_generator(*c, d.rows[1]);

  auto disc = std::make_shared<DeclaredBackend>();
  disc->add_object("X", lat);
  disc->add_arrow("phi", "X", "X", LcaMorphism(lat, lat, m));
  ThreeByThree dd = swindle_diagram(*disc, "X", "phi", "coprod_N_X");
  out.discrete = disc;
  out.discrete_swindle = relation_from_3x3(disc, dd, "discrete-swindle");

  auto comp = std::make_shared<DeclaredBackend>();
  comp->add_object("T", tor);
  comp->add_arrow("phiT", "T", "T", LcaMorphism(tor, tor, m));
  ThreeByThree dc = swindle_diagram(*comp, "T", "phiT", "prod_N_T");
  out.compact = comp;
  out.compact_swindle = relation_from_3x3(comp, dc, "compact-swindle");

  out.reduction = reduce(out.target, out.relations());
  return out;
}

}  // namespace lca

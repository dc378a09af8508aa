#include "lcakit/order.hpp"

#include <filesystem>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>


namespace lca {

Order::Order(std::string name, std::vector<std::string> labels, std::vector<Integer> constants,
             std::vector<Integer> unit)
    : name_(std::move(name)), labels_(std::move(labels)), c_(std::move(constants)), unit_(std::move(unit)) {
  size_t n = labels_.size();
  if (c_.size() != n * n * n) throw Error("order: need rank^3 structure constants");
  if (unit_.size() != n) throw Error("order: unit vector has the wrong length");
}

size_t Order::index(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw Error("order " + name_ + " has no basis element " + label);
}

bool Order::is_integers() const { return rank() == 1 && c_[0] == 1 && unit_[0] == 1; }

std::vector<Integer> Order::multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
  size_t n = rank();
  std::vector<Integer> out(n, Integer(0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      for (size_t k = 0; k < n; ++k) out[k] += a[i] * b[j] * c(i, j, k);
    }
  }
  return out;
}

QMatrix Order::right_mult(const std::vector<Integer>& a) const {
  size_t n = rank();
  QMatrix m(n, n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<Integer> e(n, Integer(0));
    e[j] = 1;
    auto col = multiply(e, a);
    for (size_t k = 0; k < n; ++k) m(k, j) = Rational(col[k]);
  }
  return m;
}

QMatrix Order::left_mult(const std::vector<Integer>& a) const {
  size_t n = rank();
  QMatrix m(n, n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<Integer> e(n, Integer(0));
    e[j] = 1;
    auto col = multiply(a, e);
    for (size_t k = 0; k < n; ++k) m(k, j) = Rational(col[k]);
  }
  return m;
}

Order Order::group_ring(const std::string& name, const std::vector<std::string>& labels,
                        const GroupTable& table) {
  size_t n = labels.size();
  if (table.size() != n) throw Error("group table has the wrong size");
  std::vector<Integer> c(n * n * n, Integer(0)), unit(n, Integer(0));
  for (size_t g = 0; g < n; ++g) {
    if (table[g].size() != n) throw Error("group table has the wrong size");
    for (size_t h = 0; h < n; ++h) {
      if (table[g][h] >= n) throw Error("group table entry out of range");
      c[(g * n + h) * n + table[g][h]] = 1;
    }
  }
  size_t e = n;
  for (size_t g = 0; g < n && e == n; ++g) {
    bool id = true;
    for (size_t h = 0; h < n; ++h) id = id && table[g][h] == h && table[h][g] == h;
    if (id) e = g;
  }
  if (e == n) throw Error("group table has no identity");
  unit[e] = 1;
  return Order(name, labels, c, unit);
}

GroupTable cyclic_table(size_t n) {
  GroupTable t(n, std::vector<size_t>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

GroupTable dihedral_table(size_t n) {
  size_t m = 2 * n;
  GroupTable t(m, std::vector<size_t>(m));
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      size_t i = a % n, j = a / n, k = b % n, l = b / n;
      // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
      size_t r = j ? (i + n - k) % n : (i + k) % n;
      t[a][b] = r + n * ((j + l) % 2);
    }
  return t;
}

Order Order::cyclic_group_ring(size_t n) {
  if (n == 0) throw Error("cyclic group of order 0");
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "t" : "t" + std::to_string(i));
  return group_ring("Z[C" + std::to_string(n) + "]", labels, cyclic_table(n));
}

Order Order::dihedral_group_ring(size_t n) {
  if (n == 0) throw Error("dihedral group needs n >= 1");
  std::vector<std::string> labels;
  for (size_t a = 0; a < 2 * n; ++a) {
    size_t i = a % n, j = a / n;
    std::string s = i == 0 ? "" : i == 1 ? "r" : "r" + std::to_string(i);
    if (j) s += "s";
    labels.push_back(s.empty() ? "1" : s);
  }
  return group_ring("Z[D" + std::to_string(2 * n) + "]", labels, dihedral_table(n));
}

Order Order::gamma3() {
  // basis 5^max(0, i-j) e_ij inside M_3(Q)
  auto scale = [](size_t i, size_t j) { return i > j ? pow(5, i - j) : Integer(1); };
  std::vector<std::string> labels;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<Integer> c(729, Integer(0)), unit(9, Integer(0));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      for (size_t l = 0; l < 3; ++l) {
        // (s_ij e_ij)(s_jl e_jl) = (s_ij s_jl / s_il) s_il e_il
        Integer v = scale(i, j) * scale(j, l) / scale(i, l);
        c[((i * 3 + j) * 9 + (j * 3 + l)) * 9 + (i * 3 + l)] = v;
      }
  for (size_t i = 0; i < 3; ++i) unit[i * 3 + i] = 1;
  return Order("Gamma3", labels, c, unit);
}

Order Order::integers() { return Order("Z", {"1"}, {Integer(1)}, {Integer(1)}); }

Order Order::named(const std::string& name) {
  if (name == "Z") return integers();
  if (name == "Gamma3") return gamma3();
  if (name == "Z[x]/(x^2)") {
    std::vector<Integer> c(8, Integer(0));
    c[0 * 4 + 0 * 2 + 0] = 1;  // 1 1 = 1
    c[0 * 4 + 1 * 2 + 1] = 1;  // 1 x = x
    c[1 * 4 + 0 * 2 + 1] = 1;  // x 1 = x
    return Order(name, {"1", "x"}, c, {Integer(1), Integer(0)});
  }
  auto number = [&](size_t from) -> size_t {
    std::string digits = name.substr(from, name.size() - from - 1);
    if (digits.empty() || name.back() != ']' || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("unknown order " + name);
    return std::stoul(digits);
  };
  if (name.rfind("Z[C", 0) == 0) return cyclic_group_ring(number(3));
  if (name.rfind("Z[D", 0) == 0) {
    size_t m = number(3);
    if (m < 2 || m % 2) throw Error("dihedral group order must be even: " + name);
    return dihedral_group_ring(m / 2);
  }
  throw Error("unknown order " + name);
}

Order Order::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line, name = "order";
  std::vector<std::string> labels;
  std::vector<Integer> unit;
  std::vector<std::tuple<size_t, size_t, size_t, Integer, int>> triples;
  size_t rank = 0;
  bool have_rank = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, lineno, 1); };
    if (key == "name") {
      std::getline(ls >> std::ws, name);
    } else if (key == "rank") {
      if (!(ls >> rank)) fail("expected the rank");
      have_rank = true;
    } else if (key == "basis") {
      for (std::string w; ls >> w;) labels.push_back(w);
    } else if (key == "unit") {
      for (std::string w; ls >> w;) {
        Integer v;
        if (v.set_str(w, 10) != 0) fail("bad unit coordinate " + w);
        unit.push_back(v);
      }
    } else if (key[0] == '(') {
      std::string rest = line.substr(line.find('(') + 1);
      auto close = rest.find(')');
      if (close == std::string::npos) fail("expected ')'");
      std::istringstream ts(rest.substr(0, close));
      size_t i, j, k;
      std::string cs;
      if (!(ts >> i >> j >> k >> cs)) fail("expected (i j k c)");
      Integer v;
      if (v.set_str(cs, 10) != 0) fail("bad structure constant " + cs);
      triples.emplace_back(i, j, k, v, lineno);
    } else {
      fail("unknown key " + key);
    }
  }
  if (!have_rank) throw ParseError("missing rank", lineno, 1);
  if (labels.empty())
    for (size_t i = 1; i <= rank; ++i) labels.push_back("b" + std::to_string(i));
  if (labels.size() != rank) throw ParseError("basis needs " + std::to_string(rank) + " labels", lineno, 1);
  if (unit.size() != rank) throw ParseError("unit needs " + std::to_string(rank) + " coordinates", lineno, 1);
  std::vector<Integer> c(rank * rank * rank, Integer(0));
  for (const auto& [i, j, k, v, ln] : triples) {
    if (i < 1 || j < 1 || k < 1 || i > rank || j > rank || k > rank) throw ParseError("index out of range", ln, 1);
    c[((i - 1) * rank + (j - 1)) * rank + (k - 1)] += v;
  }
  return Order(name, labels, c, unit);
}

std::string Order::str() const {
  std::ostringstream out;
  size_t n = rank();
  out << "name " << name_ << "\nrank " << n << "\nbasis";
  for (const auto& l : labels_) out << ' ' << l;
  out << "\nunit";
  for (const auto& u : unit_) out << ' ' << u;
  out << '\n';
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (c(i, j, k) != 0) out << '(' << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << c(i, j, k) << ")\n";
  return out.str();
}

OrderReport validate_order(const Order& o) {
  OrderReport r;
  size_t n = o.rank();
  auto basis = [&](size_t i) {
    std::vector<Integer> e(n, Integer(0));
    e[i] = 1;
    return e;
  };
  for (size_t i = 0; i < n && r.associative; ++i)
    for (size_t j = 0; j < n && r.associative; ++j)
      for (size_t k = 0; k < n && r.associative; ++k)
        if (o.multiply(o.multiply(basis(i), basis(j)), basis(k)) != o.multiply(basis(i), o.multiply(basis(j), basis(k)))) {
          r.associative = false;
          r.detail = "(" + o.labels()[i] + " " + o.labels()[j] + ") " + o.labels()[k] + " differs from " + o.labels()[i] +
                     " (" + o.labels()[j] + " " + o.labels()[k] + ")";
        }
  for (size_t i = 0; i < n && r.unital; ++i)
    if (o.multiply(o.unit(), basis(i)) != basis(i) || o.multiply(basis(i), o.unit()) != basis(i)) {
      r.unital = false;
      if (r.detail.empty()) r.detail = "unit law fails on " + o.labels()[i];
    }
  // regular trace form Tr(b_i b_j), Tr(x) = trace of left multiplication
  std::vector<Integer> tr(n, Integer(0));
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l) tr[k] += o.c(k, l, l);
  QMatrix gram(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer t = 0;
      for (size_t k = 0; k < n; ++k) t += o.c(i, j, k) * tr[k];
      gram(i, j) = Rational(t);
    }
  r.gram_det = n ? det(gram).get_num() : Integer(1);
  r.semisimple = r.gram_det != 0;
  if (!r.semisimple && r.detail.empty()) r.detail = "trace form is degenerate";
  return r;
}

Order opposite_order(const Order& o) {
  size_t n = o.rank();
  std::vector<Integer> c(n * n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = o.c(j, i, k);
  std::string name = o.name();
  const std::string suffix = "^op";
  if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    name.erase(name.size() - suffix.size());
  else
    name += suffix;
  return Order(name, o.labels(), c, o.unit());
}

LcaModule regular_module(const Order& o, const Component& x) {
  size_t n = o.rank();
  Layout l = Layout::of(std::vector<Component>(n, x));
  LcaModule m{l.canonical, o, {}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<Integer> e(n, Integer(0));
    e[i] = 1;
    m.action.push_back(canonical_morphism(l, l, o.right_mult(e)).matrix());
  }
  return m;
}

namespace {

LcaMorphism combination(const LcaModule& m, const std::vector<LcaMorphism>& acts, const std::vector<Integer>& coeffs) {
  LcaMorphism out(m.carrier, m.carrier);
  for (size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) out = out + compose(acts[k], LcaMorphism::scalar(m.carrier, Rational(coeffs[k])));
  return out;
}

}  // namespace

ModuleReport validate_module(const LcaModule& m) {
  ModuleReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.detail = std::move(msg);
    return r;
  };
  const Order& o = m.order;
  size_t n = o.rank(), d = m.carrier.dim();
  if (m.action.size() != n) return fail("need one action per basis element (" + std::to_string(n) + ")");
  std::vector<LcaMorphism> acts;
  for (size_t i = 0; i < n; ++i) {
    if (m.action[i].rows() != d || m.action[i].cols() != d) return fail("act(" + o.labels()[i] + ") has the wrong shape");
    try {
      acts.push_back(m.act(i));
    } catch (const InvalidMorphism& e) {
      return fail("act(" + o.labels()[i] + "): " + e.what());
    }
  }
  if (combination(m, acts, o.unit()) != LcaMorphism::identity(m.carrier)) return fail("the unit does not act as the identity");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Integer> cij(n);
      for (size_t k = 0; k < n; ++k) cij[k] = o.c(i, j, k);
      // acting by b_i and then by b_j is acting by b_i b_j
      if (compose(acts[i], acts[j]) != combination(m, acts, cij))
        return fail("relation (" + o.labels()[i] + ", " + o.labels()[j] + ") fails: act(" + o.labels()[i] +
                    ") then act(" + o.labels()[j] + ") is not act(" + o.labels()[i] + " " + o.labels()[j] + ")");
    }
  return r;
}

LcaModule module_dual(const LcaModule& m) {
  LcaModule out{dual(m.carrier), opposite_order(m.order), {}};
  for (size_t i = 0; i < m.action.size(); ++i) out.action.push_back(dual_morphism(m.act(i)).matrix());
  return out;
}

const char* to_string(ProjInj c) {
  switch (c) {
    case ProjInj::Projective: return "Projective";
    case ProjInj::Injective: return "Injective";
    case ProjInj::Both: return "Both";
    case ProjInj::Neither: return "Neither";
    case ProjInj::NeedsCertificate: return "NeedsCertificate";
  }
  return "?";
}

namespace {

std::vector<QMatrix> block_action(const LcaModule& m, Kind k) {
  std::vector<QMatrix> out;
  for (size_t i = 0; i < m.action.size(); ++i) out.push_back(m.act(i).block({k}, {k}));
  return out;
}

bool only_kinds(const LcaObject& g, Kind extra) {
  for (const auto& c : g.components())
    if (c.kind != Kind::R && c.kind != extra) return false;
  return true;
}

}  // namespace

std::vector<QMatrix> lattice_action(const LcaModule& m) {
  if (!only_kinds(m.carrier, Kind::Z)) throw ShapeMismatch("carrier " + m.carrier.str() + " is not R^n + Z^m");
  return block_action(m, Kind::Z);
}

bool check_certificate(const Order& o, const std::vector<QMatrix>& action, const SummandCertificate& cert) {
  size_t n = o.rank(), k = cert.copies, rows = action.empty() ? 0 : action[0].rows();
  if (action.size() != n) return false;
  const QMatrix &s = cert.section, &r = cert.retraction;
  if (s.rows() != k * n || s.cols() != rows || r.rows() != rows || r.cols() != k * n) return false;
  for (const QMatrix* x : {&s, &r})
    for (size_t i = 0; i < x->rows(); ++i)
      for (size_t j = 0; j < x->cols(); ++j)
        if (!is_integer((*x)(i, j))) return false;
  if (r * s != QMatrix::identity(rows)) return false;
  for (size_t i = 0; i < n; ++i) {
    std::vector<Integer> e(n, Integer(0));
    e[i] = 1;
    QMatrix one = o.right_mult(e), free(k * n, k * n);
    for (size_t c = 0; c < k; ++c) free.set_block(c * n, c * n, one);
    if (s * action[i] != free * s || r * free != action[i] * r) return false;
  }
  return true;
}

ProjInj classify_proj_inj(const LcaModule& m, bool hereditary, const SummandCertificate* cert) {
  const LcaObject& g = m.carrier;
  bool vector = only_kinds(g, Kind::R);
  if (vector) return ProjInj::Both;
  bool lattice = only_kinds(g, Kind::Z), torus = only_kinds(g, Kind::T);
  if (!lattice && !torus) return ProjInj::Neither;
  ProjInj yes = lattice ? ProjInj::Projective : ProjInj::Injective;
  if (m.order.is_integers() || hereditary) return yes;
  if (cert) {
    // the torus part is injective exactly when its dual lattice, over the opposite order, is projective
    std::vector<QMatrix> action = lattice ? block_action(m, Kind::Z) : block_action(m, Kind::T);
    if (torus)
      for (auto& a : action) a = a.transpose();
    if (check_certificate(lattice ? m.order : opposite_order(m.order), action, *cert)) return yes;
  }
  return ProjInj::NeedsCertificate;
}

LcaModule LcaModule::parse(const std::string& text, const std::string& base_dir) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<Order> order;
  std::optional<LcaObject> carrier;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> acts;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls >> std::ws, rest);
    if (key == "order") {
      try {
        order = Order::named(rest);
      } catch (const Error&) {
        std::filesystem::path p = std::filesystem::path(base_dir) / rest;
        std::ifstream f(p);
        if (!f) throw ParseError("unknown order " + rest, lineno, 1);
        std::stringstream buf;
        buf << f.rdbuf();
        order = Order::parse(buf.str());
      }
    } else if (key == "carrier") {
      carrier = LcaObject::parse(rest);
    } else if (key == "act") {
      std::istringstream as(rest);
      std::string label;
      as >> label;
      std::string body;
      std::getline(as >> std::ws, body);
      int start = lineno;
      // a morphism may continue over several lines until its braces close
      auto balance = [](const std::string& t) { return std::count(t.begin(), t.end(), '{') - std::count(t.begin(), t.end(), '}'); };
      while (balance(body) > 0 || body.find('{') == std::string::npos) {
        if (!std::getline(in, line)) throw ParseError("unterminated morphism for act " + label, start, 1);
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        body += "\n" + line;
      }
      acts.push_back({label, {body, start}});
    } else {
      throw ParseError("unknown key " + key, lineno, 1);
    }
  }
  if (!order) throw ParseError("missing order line", lineno, 1);
  if (!carrier) throw ParseError("missing carrier line", lineno, 1);
  LcaModule m{*carrier, *order, std::vector<QMatrix>(order->rank())};
  std::vector<bool> seen(order->rank(), false);
  for (const auto& [label, src] : acts) {
    size_t i;
    try {
      i = order->index(label);
    } catch (const Error& e) {
      throw ParseError(e.what(), src.second, 1);
    }
    if (seen[i]) throw ParseError("duplicate act " + label, src.second, 1);
    seen[i] = true;
    LcaMorphism f;
    try {
      f = LcaMorphism::parse(src.first);
    } catch (const ParseError& e) {
      throw ParseError(std::string("act ") + label + ": " + e.what(), src.second + e.line() - 1, e.column());
    }
    if (f.source() != m.carrier || f.target() != m.carrier) throw ParseError("act " + label + " is not an endomorphism of the carrier", src.second, 1);
    m.action[i] = f.matrix();
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError("missing act for " + order->labels()[i], lineno, 1);
  return m;
}

}  // namespace lca

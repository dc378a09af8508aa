#include <algorithm>
#include <sstream>

#include "lcakit/nenashev.hpp"

namespace lca {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Message of a nested parse error without its position prefix.
std::string bare_message(const ParseError& e) {
  std::string w = e.what();
  auto pos = w.find(": ");
  return pos == std::string::npos ? w : w.substr(pos + 2);
}

long brace_balance(const std::string& t) { return std::count(t.begin(), t.end(), '{') - std::count(t.begin(), t.end(), '}'); }

}  // namespace

K1Expression DiagramFile::expression(const Target& t) const {
  K1Expression e;
  for (const auto& [c, name] : t.terms) e += dses_generator(*backend, sequences.at(name)) * c;
  return e;
}

DiagramFile parse_diagram_file(const std::string& text) {
  std::istringstream in(text);
  DiagramFile file;
  ComputedBackend* computed = nullptr;
  DeclaredBackend* declared = nullptr;
  std::string line;
  int lineno = 0;

  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, lineno, 1); };
  auto need_backend = [&] {
    if (!file.backend) fail("the first statement must be 'backend computed' or 'backend declared'");
  };
  auto need_declared = [&](const std::string& what) {
    if (!declared) fail(what + " is only available in the declared backend");
  };
  // "0" and "1" stand for the zero arrow and the identity between the given objects
  auto resolve = [&](const std::string& h, const std::string& from, const std::string& to) {
    if (h == "0") return file.backend->zero(from, to);
    if (h == "1") {
      if (from != to) fail("identity requested between " + from + " and " + to);
      return file.backend->identity(from);
    }
    if (!file.backend->has_arrow(h)) fail("unknown arrow " + h);
    return h;
  };
  auto path = [&](const std::vector<std::string>& t, size_t from, size_t to) {
    Path p(t.begin() + static_cast<long>(from), t.begin() + static_cast<long>(to));
    if (p.empty()) fail("empty path");
    for (const auto& a : p)
      if (!file.backend->has_arrow(a)) fail("unknown arrow " + a);
    return p;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto t = tokens(line);
    if (t.empty()) continue;
    const std::string& key = t[0];
    try {
      if (key == "backend") {
        if (file.backend) fail("backend declared twice");
        if (t.size() != 2) fail("expected 'backend computed' or 'backend declared'");
        if (t[1] == "computed") {
          auto b = std::make_shared<ComputedBackend>();
          computed = b.get();
          file.backend = b;
        } else if (t[1] == "declared") {
          auto b = std::make_shared<DeclaredBackend>();
          declared = b.get();
          file.backend = b;
        } else {
          fail("unknown backend " + t[1]);
        }
      } else if (key == "object") {
        need_backend();
        if (t.size() == 3 && t[2] == "formal") {
          need_declared("a formal object");
          declared->add_formal_object(t[1]);
          continue;
        }
        if (t.size() < 4 || t[2] != "=") fail("expected 'object NAME = OBJECT' or 'object NAME formal'");
        std::string rest = line.substr(line.find('=') + 1);
        LcaObject g;
        try {
          g = LcaObject::parse(rest);
        } catch (const ParseError& e) {
          throw ParseError(bare_message(e), lineno, e.column());
        }
        if (computed) computed->add_object(t[1], g);
        else declared->add_object(t[1], g);
      } else if (key == "arrow") {
        need_backend();
        if (t.size() < 6 || t[2] != ":" || t[4] != "->") fail("expected 'arrow NAME : SRC -> TGT [= MORPHISM]'");
        if (t.size() == 6) {
          need_declared("a formal arrow");
          declared->add_formal_arrow(t[1], t[3], t[5]);
          continue;
        }
        if (t[6] != "=") fail("expected '=' before the morphism");
        std::string body = line.substr(line.find('=') + 1);
        int start = lineno;
        while (brace_balance(body) > 0 || body.find('{') == std::string::npos) {
          if (!std::getline(in, line)) throw ParseError("unterminated morphism for arrow " + t[1], start, 1);
          ++lineno;
          if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
          body += "\n" + line;
        }
        LcaMorphism f;
        try {
          f = LcaMorphism::parse(body);
        } catch (const ParseError& e) {
          throw ParseError(bare_message(e), start + e.line() - 1, e.column());
        }
        if (computed) computed->add_arrow(t[1], t[3], t[5], f);
        else declared->add_arrow(t[1], t[3], t[5], f);
      } else if (key == "iso") {
        need_backend();
        need_declared("'iso'");
        if (t.size() != 2) fail("expected 'iso ARROW'");
        declared->declare_isomorphism(t[1]);
      } else if (key == "composite") {
        need_backend();
        need_declared("'composite'");
        if (t.size() != 5 || t[3] != "=") fail("expected 'composite F G = H'");
        declared->declare_composite(t[1], t[2], t[4]);
      } else if (key == "commutes") {
        need_backend();
        need_declared("'commutes'");
        auto eq = std::find(t.begin(), t.end(), "=");
        if (eq == t.end()) fail("expected 'commutes PATH = PATH'");
        size_t k = static_cast<size_t>(eq - t.begin());
        declared->declare_commutes(path(t, 1, k), path(t, k + 1, t.size()));
      } else if (key == "exact") {
        need_backend();
        need_declared("'exact'");
        if (t.size() != 3) fail("expected 'exact MONIC EPIC'");
        declared->declare_exact(t[1], t[2]);
      } else if (key == "dses") {
        need_backend();
        // dses NAME : A B C yin P R yang Q S
        if (t.size() != 12 || t[2] != ":" || t[6] != "yin" || t[9] != "yang")
          fail("expected 'dses NAME : A B C yin P R yang Q S'");
        if (file.sequences.count(t[1])) fail("double sequence " + t[1] + " defined twice");
        for (size_t i = 3; i < 6; ++i)
          if (!file.backend->has_object(t[i])) fail("unknown object " + t[i]);
        DoubleSes d{t[3], t[4], t[5], resolve(t[7], t[3], t[4]), resolve(t[8], t[4], t[5]),
                    resolve(t[10], t[3], t[4]), resolve(t[11], t[4], t[5])};
        file.sequences[t[1]] = d;
      } else if (key == "automorphism") {
        need_backend();
        // automorphism NAME : X PHI
        if (t.size() != 5 || t[2] != ":") fail("expected 'automorphism NAME : OBJECT ARROW'");
        if (file.sequences.count(t[1])) fail("double sequence " + t[1] + " defined twice");
        file.sequences[t[1]] = class_of_automorphism(*file.backend, t[3], t[4]);
      } else if (key == "diagram") {
        need_backend();
        // diagram NAME rows R1 R2 R3 cols C1 C2 C3
        if (t.size() != 10 || t[2] != "rows" || t[6] != "cols")
          fail("expected 'diagram NAME rows R1 R2 R3 cols C1 C2 C3'");
        ThreeByThree d;
        for (size_t i = 0; i < 3; ++i) {
          for (const auto& [slot, name] : {std::pair{&d.rows[i], t[3 + i]}, std::pair{&d.cols[i], t[7 + i]}}) {
            if (!file.sequences.count(name)) fail("unknown double sequence " + name);
            *slot = file.sequences.at(name);
          }
          d.objects[i] = {d.rows[i].a, d.rows[i].b, d.rows[i].c};
        }
        file.diagrams.push_back({t[1], d});
      } else if (key == "reduce") {
        need_backend();
        DiagramFile::Target target;
        target.text = line.substr(line.find("reduce") + 6);
        Integer sign = 1, coeff = 1;
        bool have_coeff = false;
        for (size_t i = 1; i < t.size(); ++i) {
          const std::string& w = t[i];
          if (w == "+" || w == "-") {
            if (w == "-") sign = -sign;
          } else if (std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            if (have_coeff) fail("two coefficients in a row");
            coeff = Integer(w);
            have_coeff = true;
          } else {
            if (!file.sequences.count(w)) fail("unknown double sequence " + w);
            target.terms.push_back({sign * coeff, w});
            sign = coeff = 1;
            have_coeff = false;
          }
        }
        if (target.terms.empty() || have_coeff) fail("expected 'reduce [COEFF] NAME [+|- [COEFF] NAME ...]'");
        file.targets.push_back(target);
      } else {
        fail("unknown statement " + key);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno, 1);
    }
  }
  if (!file.backend) throw ParseError("missing backend statement", lineno, 1);
  return file;
}

}  // namespace lca

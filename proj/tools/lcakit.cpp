#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "demos.hpp"
#include "lcakit/adele.hpp"
#include "lcakit/haar.hpp"
#include "lcakit/homological.hpp"
#include "lcakit/nenashev.hpp"
#include "lcakit/order.hpp"

using namespace lca;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path, 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string shape(const ExactSequenceSpec& s) { return s.sub.str() + " -> " + s.mid.str() + " -> " + s.quot.str(); }

std::string yes(bool b) { return b ? "true" : "false"; }

bool looks_like_morphism(const std::string& s) { return s.find('[') != std::string::npos; }

int cmd_dual(const std::string& arg) {
  if (looks_like_morphism(arg))
    std::cout << dual_morphism(LcaMorphism::parse(arg)).str() << "\n";
  else
    std::cout << dual(LcaObject::parse(arg)).str() << "\n";
  return kOk;
}

int cmd_decompose(const std::string& arg) {
  LcaObject g = LcaObject::parse(arg);
  std::cout << "cg/discrete: " << shape(decompose_cg_discrete(g)) << "\n";
  if (predicates(g).is_compactly_generated)
    std::cout << "compact part: " << shape(compact_part(g)) << "\n";
  else
    std::cout << "compact part: not compactly generated\n";
  auto [v, rest] = split_vector_summand(g);
  std::cout << "vector summand: " << v.str() << " | " << rest.str() << "\n";
  return kOk;
}

int cmd_modulus(const std::string& arg, const std::string& scalar) {
  LcaMorphism f = scalar.empty() ? LcaMorphism::parse(arg) : LcaMorphism::scalar(LcaObject::parse(arg), parse_rational(scalar));
  std::cout << modulus(f).str() << "\n";
  return kOk;
}

int cmd_seq_factor(const std::string& monic, const std::string& epic) {
  std::cout << seq_factor(ExactSequenceSpec::of(LcaMorphism::parse(monic), LcaMorphism::parse(epic))).str() << "\n";
  return kOk;
}

int cmd_det_check(const std::string& m1, const std::string& m2) {
  DetSquare d = det_square(LcaMorphism::parse(m1), LcaMorphism::parse(m2));
  std::cout << "G1 -> G3 -> G3/G1: " << shape(d.g1_g3) << "  c = " << d.c13.str() << "\n"
            << "G2/G1 -> G3/G1 -> G3/G2: " << shape(d.q21_q31) << "  c = " << d.c_quot.str() << "\n"
            << "G2 -> G3 -> G3/G2: " << shape(d.g2_g3) << "  c = " << d.c23.str() << "\n"
            << "G1 -> G2 -> G2/G1: " << shape(d.g1_g2) << "  c = " << d.c12.str() << "\n"
            << (d.holds() ? "holds" : "fails") << "\n";
  return d.holds() ? kOk : kFailed;
}

int cmd_product_formula(const std::string& arg, const std::vector<Prime>& extra) {
  Rational x = parse_rational(arg);
  std::set<Prime> places = support(x);
  places.insert(extra.begin(), extra.end());
  Rational product = 1;
  for (const auto& f : local_factors(x, places)) {
    std::cout << "place " << (f.place ? std::to_string(f.place) : std::string("inf")) << ": " << to_string(f.value)
              << "\n";
    product *= f.value;
  }
  std::cout << "product = " << to_string(product) << "\n";
  return product == 1 && product_formula_check(x) ? kOk : kFailed;
}

int cmd_cohomology(size_t n, size_t k, bool dihedral) {
  if (n == 0) throw ParseError("n must be positive", 0, 0);
  std::cout << (dihedral ? bar_cohomology(dihedral_table(n), k) : cyclic_cohomology(n, k)).str() << "\n";
  return kOk;
}

int cmd_m_alpha(size_t n, const std::string& alpha, bool check_split) {
  if (n < 2) throw ParseError("n must be at least 2", 0, 0);
  ExtensionPresentation e = build_M_alpha(n, Integer(alpha));
  std::cout << "alpha = " << e.alpha.get_str() << " mod " << n << "\n"
            << "sequence: " << shape(e.sequence) << "\n"
            << "exact: " << to_string(check_exact(e.sequence)) << "\n";
  if (check_split) std::cout << "splits: " << yes(splits_algebraically(e)) << "\n";
  return kOk;
}

Order load_order(const std::string& arg) {
  try {
    return Order::named(arg);
  } catch (const ParseError&) {
    throw;
  } catch (const Error&) {
    return Order::parse(read_file(arg));
  }
}

int cmd_order_validate(const std::string& arg, const std::string& module_path, bool hereditary) {
  Order o = load_order(arg);
  OrderReport r = validate_order(o);
  std::cout << "order " << o.name() << " of rank " << o.rank() << "\n"
            << "associative: " << yes(r.associative) << "\n"
            << "unital: " << yes(r.unital) << "\n"
            << "semisimple: " << yes(r.semisimple) << "\n"
            << "trace form determinant: " << r.gram_det.get_str() << "\n";
  if (!r.ok()) std::cout << "detail: " << r.detail << "\n";
  bool ok = r.ok();
  if (!module_path.empty()) {
    std::string dir = module_path.substr(0, module_path.find_last_of('/') + 1);
    LcaModule m = LcaModule::parse(read_file(module_path), dir.empty() ? "." : dir);
    ModuleReport mr = validate_module(m);
    std::cout << "module on " << m.carrier.str() << ": " << (mr.ok ? "valid" : "invalid: " + mr.detail) << "\n";
    if (mr.ok) std::cout << "class: " << to_string(classify_proj_inj(m, hereditary)) << "\n";
    ok = ok && mr.ok;
  }
  return ok ? kOk : kFailed;
}

int cmd_nenashev_verify(const std::string& path) {
  DiagramFile f = parse_diagram_file(read_file(path));
  bool ok = true;
  for (const auto& [name, d] : f.diagrams) {
    try {
      Relation r = relation_from_3x3(f.backend, d, name);
      std::cout << r.str() << "\n";
      if (auto m = modulus_identity_holds(r)) {
        std::cout << "  modulus identity: " << yes(*m) << "\n";
        ok = ok && *m;
      }
    } catch (const Error& e) {
      std::cout << name << ": FAILED: " << e.what() << "\n";
      ok = false;
    }
  }
  return ok ? kOk : kFailed;
}

int cmd_nenashev_reduce(const std::string& path) {
  DiagramFile f = parse_diagram_file(read_file(path));
  std::vector<Relation> rels;
  for (const auto& [name, d] : f.diagrams) rels.push_back(relation_from_3x3(f.backend, d, name));
  for (const auto& r : rels) std::cout << "relation " << r.str() << "\n";
  for (const auto& t : f.targets) {
    K1Expression e = f.expression(t);
    Reduction red = reduce(e, rels);
    std::cout << "reduce" << t.text << "\n" << red.str() << "\n";
    if (!check_certificate(e, rels, red)) return kFailed;
  }
  return kOk;
}

int cmd_nenashev_replay(size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k(-3, 3), pick(0, 3);
  bool ok = true;
  for (size_t trial = 0; trial < count; ++trial) {
    ZMatrix phi = ZMatrix::identity(2);
    for (int step = 0; step < 6; ++step) {
      int move = pick(rng);
      size_t i = move % 2, j = 1 - i;
      if (move < 2) {
        Integer c = k(rng);
        for (size_t col = 0; col < 2; ++col) phi(i, col) += c * phi(j, col);
      } else {
        for (size_t col = 0; col < 2; ++col) phi(i, col) = -phi(i, col);
      }
    }
    SwindleReplay s = swindle_replay(phi);
    bool good = s.reduction.is_zero() && check_certificate(s.target, s.relations(), s.reduction);
    std::cout << "phi = [[" << phi(0, 0).get_str() << ", " << phi(0, 1).get_str() << "], [" << phi(1, 0).get_str()
              << ", " << phi(1, 1).get_str() << "]]: " << (s.target.is_zero() ? "trivial" : "reduces to ")
              << s.reduction.normal_form.str() << ", certificate (";
    for (size_t i = 0; i < s.reduction.certificate.size(); ++i)
      std::cout << (i ? ", " : "") << s.reduction.certificate[i].get_str();
    std::cout << ")" << (good ? "" : " FAILED") << "\n";
    ok = ok && good;
  }
  return ok ? kOk : kFailed;
}

int cmd_demo(const std::string& id, bool all, bool list) {
  const auto& reg = cli::demo_registry();
  if (list) {
    for (const auto& s : reg) std::cout << s.id << "\t" << s.description << "\n";
    return kOk;
  }
  if (!all && id.empty()) throw ParseError("demo needs a scenario id, --all or --list", 0, 0);
  bool pass = true;
  bool found = false;
  for (const auto& s : reg) {
    if (!all && s.id != id) continue;
    found = true;
    for (const auto& line : cli::run_scenario(s, pass)) std::cout << line << "\n";
  }
  if (!found) throw ParseError("unknown scenario " + id, 0, 0);
  return pass ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with finitely structured LCA groups and modules"};
  app.require_subcommand(1);
  std::string a1, a2, path, module_path, id;
  size_t n = 0, k = 0, count = 20;
  unsigned seed = 1;
  bool flag = false, all = false, list = false;
  std::vector<Prime> places;
  std::function<int()> action;

  auto* dual_cmd = app.add_subcommand("dual", "Pontryagin dual of an object or morphism");
  dual_cmd->add_option("value", a1, "object or morphism")->required();
  dual_cmd->callback([&] { action = [&] { return cmd_dual(a1); }; });

  auto* pred = app.add_subcommand("predicates", "topological predicates of an object");
  pred->add_option("object", a1)->required();
  pred->callback([&] { action = [&] { std::cout << predicates(LcaObject::parse(a1)).str() << "\n"; return kOk; }; });

  auto* dec = app.add_subcommand("decompose", "cg/discrete sequence, compact part and vector summand");
  dec->add_option("object", a1)->required();
  dec->callback([&] { action = [&] { return cmd_decompose(a1); }; });

  auto* mod = app.add_subcommand("modulus", "modulus of an automorphism, or of a scalar on an object");
  mod->add_option("value", a1, "morphism, or object when a scalar follows")->required();
  mod->add_option("scalar", a2, "rational scalar");
  mod->callback([&] { action = [&] { return cmd_modulus(a1, a2); }; });

  auto* sf = app.add_subcommand("seq-factor", "Haar measure factor of an exact sequence");
  sf->add_option("monic", a1)->required();
  sf->add_option("epic", a2)->required();
  sf->callback([&] { action = [&] { return cmd_seq_factor(a1, a2); }; });

  auto* dc = app.add_subcommand("det-check", "determinant square of two admissible monics G1 -> G2 -> G3");
  dc->add_option("m1", a1)->required();
  dc->add_option("m2", a2)->required();
  dc->callback([&] { action = [&] { return cmd_det_check(a1, a2); }; });

  auto* pf = app.add_subcommand("product-formula", "local factors of a nonzero rational");
  pf->add_option("x", a1)->required();
  pf->add_option("--places", places, "extra primes to include")->delimiter(',');
  pf->callback([&] { action = [&] { return cmd_product_formula(a1, places); }; });

  auto* co = app.add_subcommand("cohomology", "H^k(G, Z) for G cyclic of order n, or dihedral of order 2n");
  co->add_option("n", n)->required();
  co->add_option("k", k)->required();
  co->add_flag("--dihedral", flag, "use the dihedral group of order 2n");
  co->callback([&] { action = [&] { return cmd_cohomology(n, k, flag); }; });

  auto* ma = app.add_subcommand("m-alpha", "the extension M_alpha of Z by R[C_n]/N");
  ma->add_option("n", n)->required();
  ma->add_option("alpha", a1)->required();
  ma->add_flag("--check-split", flag, "decide whether the extension splits");
  ma->callback([&] { action = [&] { return cmd_m_alpha(n, a1, flag); }; });

  auto* ov = app.add_subcommand("order-validate", "check the order axioms (built-in name or order file)");
  ov->add_option("order", a1)->required();
  ov->add_option("--module", module_path, "module file to validate and classify");
  ov->add_flag("--hereditary", flag, "treat the order as hereditary when classifying");
  ov->callback([&] { action = [&] { return cmd_order_validate(a1, module_path, flag); }; });

  auto* ne = app.add_subcommand("nenashev", "double exact sequences and 3x3 relations");
  ne->require_subcommand(1);
  auto* nv = ne->add_subcommand("verify", "check every diagram of a file");
  nv->add_option("file", path)->required();
  nv->callback([&] { action = [&] { return cmd_nenashev_verify(path); }; });
  auto* nr = ne->add_subcommand("reduce", "reduce the file's expressions modulo its relations");
  nr->add_option("file", path)->required();
  nr->callback([&] { action = [&] { return cmd_nenashev_reduce(path); }; });
  auto* np = ne->add_subcommand("replay", "the swindle for random automorphisms of Z^2");
  np->add_option("--count", count);
  np->add_option("--seed", seed);
  np->callback([&] { action = [&] { return cmd_nenashev_replay(count, seed); }; });

  auto* de = app.add_subcommand("demo", "replay the worked examples");
  de->add_option("id", id);
  de->add_flag("--all", all);
  de->add_flag("--list", list);
  de->callback([&] { action = [&] { return cmd_demo(id, all, list); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

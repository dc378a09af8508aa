#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcakit/exact.hpp"
#include "lcakit/rational.hpp"

namespace lca {

// Arrow handles composed left to right: {f, g} is "f then g".
using Path = std::vector<std::string>;

// A category in which double exact sequences and 3x3 diagrams are checked. Objects and
// arrows are named handles; "0" is always the zero object.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual const char* kind() const = 0;

  virtual bool has_object(const std::string& x) const = 0;
  virtual bool has_arrow(const std::string& a) const = 0;
  virtual bool is_zero_object(const std::string& x) const = 0;
  virtual std::string source(const std::string& a) const = 0;
  virtual std::string target(const std::string& a) const = 0;

  // Handles of the identity of x and of the zero arrow x -> y, registered on demand.
  virtual std::string identity(const std::string& x) = 0;
  virtual std::string zero(const std::string& x, const std::string& y) = 0;

  // Whether two chains of arrows with the same endpoints are equal.
  virtual bool equal(const Path& a, const Path& b) const = 0;
  virtual bool is_isomorphism(const std::string& a) const = 0;
  virtual Exactness exactness(const std::string& monic, const std::string& epic) const = 0;

  // Keys with equal values exactly for equal objects (arrows); concrete data gets the same
  // key in every backend.
  virtual std::string object_key(const std::string& x) const = 0;
  virtual std::string arrow_key(const std::string& a) const = 0;
  // The LCA group or morphism behind a handle, when it has one.
  virtual std::optional<LcaObject> concrete_object(const std::string& x) const = 0;
  virtual std::optional<LcaMorphism> concrete_arrow(const std::string& a) const = 0;
};

// Objects are LcaObjects and arrows LcaMorphisms; every question is decided by block
// arithmetic.
class ComputedBackend : public Backend {
 public:
  ComputedBackend();
  const char* kind() const override { return "computed"; }

  void add_object(const std::string& name, const LcaObject& g);
  void add_arrow(const std::string& name, const std::string& from, const std::string& to, const LcaMorphism& f);
  const LcaObject& object(const std::string& x) const;
  const LcaMorphism& arrow(const std::string& a) const;

  bool has_object(const std::string& x) const override { return objects_.count(x) > 0; }
  bool has_arrow(const std::string& a) const override { return arrows_.count(a) > 0; }
  bool is_zero_object(const std::string& x) const override;
  std::string source(const std::string& a) const override;
  std::string target(const std::string& a) const override;
  std::string identity(const std::string& x) override;
  std::string zero(const std::string& x, const std::string& y) override;
  bool equal(const Path& a, const Path& b) const override;
  bool is_isomorphism(const std::string& a) const override;
  Exactness exactness(const std::string& monic, const std::string& epic) const override;
  std::string object_key(const std::string& x) const override;
  std::string arrow_key(const std::string& a) const override;
  std::optional<LcaObject> concrete_object(const std::string& x) const override;
  std::optional<LcaMorphism> concrete_arrow(const std::string& a) const override;

  LcaMorphism compose_path(const Path& p) const;

 private:
  struct Arrow {
    std::string from, to;
    LcaMorphism f;
  };
  std::map<std::string, LcaObject> objects_;
  std::map<std::string, Arrow> arrows_;
};

// A finite formal category for objects that are not LcaObjects, such as the swindle
// objects coproduct_N X and product_N T. Formal arrows, their composites, isomorphisms,
// commuting squares and exact sequences must all be declared. Concrete objects and arrows
// may be mixed in and are decided by arithmetic.
class DeclaredBackend : public Backend {
 public:
  DeclaredBackend() = default;
  const char* kind() const override { return "declared"; }

  void add_object(const std::string& name, const LcaObject& g);
  void add_formal_object(const std::string& name);
  void add_arrow(const std::string& name, const std::string& from, const std::string& to, const LcaMorphism& f);
  void add_formal_arrow(const std::string& name, const std::string& from, const std::string& to);
  // f then g equals h; h = "0" declares the composite zero.
  void declare_composite(const std::string& f, const std::string& g, const std::string& h);
  void declare_commutes(const Path& a, const Path& b);
  void declare_isomorphism(const std::string& a);
  void declare_exact(const std::string& monic, const std::string& epic);

  bool has_object(const std::string& x) const override;
  bool has_arrow(const std::string& a) const override;
  bool is_zero_object(const std::string& x) const override;
  std::string source(const std::string& a) const override;
  std::string target(const std::string& a) const override;
  std::string identity(const std::string& x) override;
  std::string zero(const std::string& x, const std::string& y) override;
  bool equal(const Path& a, const Path& b) const override;
  bool is_isomorphism(const std::string& a) const override;
  Exactness exactness(const std::string& monic, const std::string& epic) const override;
  std::string object_key(const std::string& x) const override;
  std::string arrow_key(const std::string& a) const override;
  std::optional<LcaObject> concrete_object(const std::string& x) const override;
  std::optional<LcaMorphism> concrete_arrow(const std::string& a) const override;

 private:
  struct FormalArrow {
    std::string from, to;
    enum { Plain, Identity, Zero } role = Plain;
  };
  struct Normal;
  Normal normalize(const Path& p) const;
  bool is_concrete_object(const std::string& x) const { return concrete_.has_object(x); }

  ComputedBackend concrete_;
  std::set<std::string> formal_objects_;
  std::map<std::string, FormalArrow> formal_arrows_;
  std::map<std::pair<std::string, std::string>, std::string> composites_;
  std::vector<std::pair<Path, Path>> commutes_;
  std::set<std::string> isos_;
  std::set<std::pair<std::string, std::string>> exact_;
};

// a -p-> b -r-> c (yin) and a -q-> b -s-> c (yang).
struct DoubleSes {
  std::string a, b, c;
  std::string p, r;
  std::string q, s;
  std::string label() const;
};

// Throws ObjectMismatch, NotExact or Undecided unless both sequences are exact.
void validate(const Backend& be, const DoubleSes& d);
// Same arrows in yin and yang.
bool yin_is_yang(const Backend& be, const DoubleSes& d);
std::string generator_key(const Backend& be, const DoubleSes& d);

// Formal integer combination of generators, keyed by generator_key.
struct K1Expression {
  std::map<std::string, Integer> terms;
  std::map<std::string, std::string> labels;

  bool is_zero() const { return terms.empty(); }
  Integer coefficient(const std::string& key) const;
  std::string str() const;
  K1Expression& operator+=(const K1Expression& o);
  K1Expression operator+(const K1Expression& o) const;
  K1Expression operator-(const K1Expression& o) const;
  K1Expression operator*(const Integer& k) const;
  bool operator==(const K1Expression& o) const { return terms == o.terms; }
};

// The generator of d, or 0 when yin = yang.
K1Expression dses_generator(const Backend& be, const DoubleSes& d);
// (0 => x => x) with yin epic phi and yang epic the identity.
DoubleSes class_of_automorphism(Backend& be, const std::string& x, const std::string& phi);

// objects[i][j] sits in row i and column j; rows run left to right, columns top to bottom.
struct ThreeByThree {
  std::array<std::array<std::string, 3>, 3> objects;
  std::array<DoubleSes, 3> rows, cols;
};

struct Relation {
  std::string name;
  K1Expression lhs, rhs;  // Row1 - Row2 + Row3 and Col1 - Col2 + Col3
  ThreeByThree diagram;
  std::shared_ptr<const Backend> backend;
  K1Expression difference() const { return lhs - rhs; }
  std::string str() const;
};

// Throws RowOrColumnNotExact, DiagramNotCommutative or ObjectMismatch naming the
// offending part of the diagram.
void check_diagram(const Backend& be, const ThreeByThree& d);
Relation relation_from_3x3(std::shared_ptr<const Backend> be, const ThreeByThree& d, const std::string& name = "");
// Rerun every check on the stored diagram.
bool replays(const Relation& r);

// Append-only store; snapshot() copies a consistent prefix.
class RelationStore {
 public:
  void add(Relation r);
  std::vector<Relation> snapshot() const;
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::vector<Relation> rels_;
};

// expr modulo the relations. With the generators in `generators` order:
//   expr - normal_form = sum_k certificate[k] * relations[k].difference()
// and coordinates are the class of expr in Z/invariants[0] + ... (0 for a free factor).
struct Reduction {
  std::vector<std::string> generators;
  std::vector<Integer> invariants;
  std::vector<Integer> coordinates;
  K1Expression normal_form;
  std::vector<Integer> certificate;
  bool is_zero() const;
  std::string str() const;
};
Reduction reduce(const K1Expression& expr, const std::vector<Relation>& relations);
bool check_certificate(const K1Expression& expr, const std::vector<Relation>& relations, const Reduction& red);

// seq_factor(yang) / seq_factor(yin); sends (0 => X => X; phi, 1) to |phi|. Empty when an
// object or arrow is formal.
std::optional<PositiveRational> dses_modulus(const Backend& be, const DoubleSes& d);
// Whether Row1 Row3 / Row2 = Col1 Col3 / Col2 under dses_modulus; empty for formal data.
std::optional<bool> modulus_identity_holds(const Relation& r);

// The swindle computation for an automorphism phi of the lattice Z^n: the 3x3 diagrams
// relating Z^n, R^n and T^n, the swindles on coproduct_N Z^n and product_N T^n, and the
// reduction of [(0 => R^n => R^n; phi x R, 1)] to zero.
struct SwindleReplay {
  std::shared_ptr<ComputedBackend> computed;
  std::shared_ptr<DeclaredBackend> discrete, compact;
  Relation lattice_torus, discrete_swindle, compact_swindle;
  K1Expression target;
  Reduction reduction;
  std::vector<Relation> relations() const { return {lattice_torus, discrete_swindle, compact_swindle}; }
};
SwindleReplay swindle_replay(const ZMatrix& phi);

// Diagram file: a backend, objects, arrows, named double sequences, 3x3 diagrams and
// expressions to reduce. Parsing checks names and shapes only; the mathematics is checked
// by relation_from_3x3 and dses_generator.
struct DiagramFile {
  struct Target {
    std::string text;
    std::vector<std::pair<Integer, std::string>> terms;  // coefficient, sequence name
  };
  std::shared_ptr<Backend> backend;
  std::map<std::string, DoubleSes> sequences;
  std::vector<std::pair<std::string, ThreeByThree>> diagrams;
  std::vector<Target> targets;

  K1Expression expression(const Target& t) const;
};
DiagramFile parse_diagram_file(const std::string& text);

}  // namespace lca

#pragma once

#include <string>
#include <vector>

#include "lcakit/morphism.hpp"

namespace lca {

// Multiplication tables table[g][h] = index of gh, identity at index 0.
using GroupTable = std::vector<std::vector<size_t>>;
GroupTable cyclic_table(size_t n);
GroupTable dihedral_table(size_t n);  // order 2n: r^i s^j at index i + n j

// A Z-order with basis b_1..b_n and b_i b_j = sum_k c(i, j, k) b_k (indices 0-based in code).
class Order {
 public:
  Order() = default;
  Order(std::string name, std::vector<std::string> labels, std::vector<Integer> constants, std::vector<Integer> unit);

  // Built-in orders: Z, Z[Cn], Z[D2n] (dihedral of order 2n), Gamma3, Z[x]/(x^2).
  static Order named(const std::string& name);
  // Group ring from a multiplication table table[g][h] = index of gh.
  static Order group_ring(const std::string& name, const std::vector<std::string>& labels,
                          const GroupTable& table);
  static Order cyclic_group_ring(size_t n);
  static Order dihedral_group_ring(size_t n);  // order 2n: r^i s^j at index i + n j
  static Order gamma3();
  static Order integers();
  // Order file: "name", "rank", "basis", "unit" lines and 1-based "(i j k c)" triples.
  static Order parse(const std::string& text);
  std::string str() const;

  const std::string& name() const { return name_; }
  size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  size_t index(const std::string& label) const;
  const Integer& c(size_t i, size_t j, size_t k) const { return c_[(i * rank() + j) * rank() + k]; }
  const std::vector<Integer>& unit() const { return unit_; }
  bool is_integers() const;

  std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b) const;
  // Matrix of x |-> x a (right multiplication) and x |-> a x in the basis, column convention.
  QMatrix right_mult(const std::vector<Integer>& a) const;
  QMatrix left_mult(const std::vector<Integer>& a) const;

  bool operator==(const Order& o) const { return labels_ == o.labels_ && c_ == o.c_ && unit_ == o.unit_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Integer> c_, unit_;
};

struct OrderReport {
  bool associative = true, unital = true, semisimple = true;
  Integer gram_det;
  std::string detail;  // first failure, if any
  bool ok() const { return associative && unital && semisimple; }
};
OrderReport validate_order(const Order& o);

// c'(i, j, k) = c(j, i, k).
Order opposite_order(const Order& o);

// Right module: act[i] is the raw entry matrix of right multiplication by b_i on the carrier.
struct LcaModule {
  LcaObject carrier;
  Order order;
  std::vector<QMatrix> action;
  // Throws InvalidMorphism when the entries leave the Hom-table.
  LcaMorphism act(size_t i) const { return LcaMorphism(carrier, carrier, action.at(i)); }
  // Module file: "order <name or path>", "carrier <object>", one "act <label> <morphism>" per basis element.
  static LcaModule parse(const std::string& text, const std::string& base_dir = ".");
};

// The regular module on X^n: x . b_i is right multiplication, for X one of Z, R, T, Z/m, Z_p, Q_p, Q_p/Z_p.
LcaModule regular_module(const Order& o, const Component& x);

struct ModuleReport {
  bool ok = true;
  std::string detail;
};
ModuleReport validate_module(const LcaModule& m);

// Pontryagin dual with (a . phi)(m) = phi(m . a), a right module over the opposite order.
LcaModule module_dual(const LcaModule& m);

enum class ProjInj { Projective, Injective, Both, Neither, NeedsCertificate };
const char* to_string(ProjInj c);

// The lattice P = Z^m with a split embedding into the free module of rank k:
// section: P -> A^k, retraction: A^k -> P, both module maps with retraction o section = id.
struct SummandCertificate {
  size_t copies = 0;
  QMatrix section, retraction;
};

// Discrete part Z^m of a carrier R^n + Z^m, as a module over the order (the Z -> Z blocks).
std::vector<QMatrix> lattice_action(const LcaModule& m);
bool check_certificate(const Order& o, const std::vector<QMatrix>& action, const SummandCertificate& cert);

// hereditary: the caller asserts the order is hereditary, so every lattice is projective.
// A certificate settles the lattice (or, for R^n + T^m, the dual lattice) case for general orders.
ProjInj classify_proj_inj(const LcaModule& m, bool hereditary = false, const SummandCertificate* cert = nullptr);

}  // namespace lca

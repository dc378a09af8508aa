#pragma once

#include <map>
#include <string>
#include <vector>

#include "lcakit/rational.hpp"

namespace lca {

// Component kinds of the canonical form, in canonical order.
enum class Kind { R, Z, T, F, Qp, Zp, Pr };

const char* kind_name(Kind k);

// One expanded summand: a copy of R, Z, T, Z/order, Q_p, Z_p or Q_p/Z_p.
struct Component {
  Kind kind;
  Integer order = 0;  // F only
  Prime prime = 0;    // p-adic kinds only
  bool operator==(const Component& o) const { return kind == o.kind && order == o.order && prime == o.prime; }
};

// A block groups all components of one kind (and prime); the finite part is a single block.
struct BlockLabel {
  Kind kind;
  Prime prime = 0;
  std::string str() const;
  bool operator==(const BlockLabel& o) const { return kind == o.kind && prime == o.prime; }
  bool operator<(const BlockLabel& o) const;
};

struct BlockRange {
  BlockLabel label;
  size_t offset = 0;
  size_t size = 0;
};

struct PadicRanks {
  size_t qp = 0, zp = 0, pr = 0;
  bool operator==(const PadicRanks& o) const { return qp == o.qp && zp == o.zp && pr == o.pr; }
  bool zero() const { return qp == 0 && zp == 0 && pr == 0; }
};

struct PredicateSet {
  bool is_compact = false;
  bool is_discrete = false;
  bool is_compactly_generated = false;
  bool is_nss = false;
  bool is_vector_module = false;
  bool in_RC_class = false;
  bool in_RD_class = false;
  std::string str() const;
};

// Finitely structured LCA group
//   R^real + Z^lattice + T^torus + (finite group) + sum_p (Q_p^a + Z_p^b + (Q_p/Z_p)^c)
// kept in canonical form, so structural equality is isomorphism.
class LcaObject {
 public:
  LcaObject() = default;

  static LcaObject real(size_t n = 1);
  static LcaObject lattice(size_t n = 1);
  static LcaObject torus(size_t n = 1);
  static LcaObject finite(const std::vector<Integer>& orders);
  static LcaObject cyclic(const Integer& order) { return finite({order}); }
  static LcaObject qp(Prime p, size_t n = 1);
  static LcaObject zp(Prime p, size_t n = 1);
  static LcaObject pruefer(Prime p, size_t n = 1);
  static LcaObject from_components(const std::vector<Component>& comps);
  static LcaObject parse(const std::string& text);

  size_t real_rank() const { return real_; }
  size_t lattice_rank() const { return lattice_; }
  size_t torus_rank() const { return torus_; }
  const std::vector<Integer>& finite_part() const { return finite_; }
  const std::map<Prime, PadicRanks>& padic_parts() const { return padic_; }
  PadicRanks padic(Prime p) const;

  // Direct sum.
  LcaObject operator+(const LcaObject& o) const;
  bool operator==(const LcaObject& o) const;
  bool operator!=(const LcaObject& o) const { return !(*this == o); }

  bool is_zero() const { return dim() == 0; }
  // Number of expanded components.
  size_t dim() const;
  std::vector<Component> components() const;
  std::vector<BlockRange> blocks() const;
  // Block with the given label; size 0 if absent.
  BlockRange block(const BlockLabel& label) const;
  Integer finite_order() const;

  std::string str() const;

 private:
  void normalize();

  size_t real_ = 0, lattice_ = 0, torus_ = 0;
  std::vector<Integer> finite_;
  std::map<Prime, PadicRanks> padic_;
};

LcaObject dual(const LcaObject& g);
PredicateSet predicates(const LcaObject& g);

// Ranks that add up along every exact sequence. The raw fields do not: Z -> R -> T
// moves a lattice rank into a torus rank.
struct ExactInvariants {
  long dim_inf = 0;      // real + torus
  long codim_inf = 0;    // real + lattice
  std::map<Prime, std::pair<long, long>> padic;  // (qp + zp, qp + pr)
};
ExactInvariants exact_invariants(const LcaObject& g);

}  // namespace lca

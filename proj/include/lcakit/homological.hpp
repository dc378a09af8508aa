#pragma once

#include "lcakit/exact.hpp"
#include "lcakit/order.hpp"

namespace lca {

// Highest resolution degree built; LCAKIT_MAX_DEGREE overrides the default 10.
size_t max_degree();

// Matrix of x |-> x r on Z[C_n] in the group basis.
ZMatrix circulant(size_t n, const std::vector<Integer>& r);

// ... -N-> Z[G] -(1-t)-> Z[G] -N-> Z[G] -(1-t)-> Z[G] -> Z, for G = C_n.
struct CyclicResolution {
  size_t n = 0;
  std::vector<ZMatrix> maps;  // maps[i]: P_{i+1} -> P_i; 1 - t for even i, N for odd i
};
CyclicResolution cyclic_resolution(size_t n, size_t length);

// H^k(C_n, Z) from Hom_G(resolution, Z); throws if k exceeds max_degree().
AbelianGroup cyclic_cohomology(size_t n, size_t k);

// H^k(G, Z) from normalized bar cochains; sizes grow like |G|^(k+1).
AbelianGroup bar_cohomology(const GroupTable& table, size_t k);

// Ext^1(Z, R[G]/N_G) for G = C_n: chain maps from the resolution to R[G]/N_G[1] modulo homotopy.
AbelianGroup ext1_classes(size_t n);

// M_alpha = (Z[G] + R[G]) / <(x(1-t), x alpha), (0, N)>, an extension of Z by R[G]/N_G.
struct ExtensionPresentation {
  size_t n = 0;
  Integer alpha;
  QMatrix relations;  // columns generate the relation lattice inside Z^n + R^n
  QMatrix action;     // right multiplication by t on Z^n + R^n
  LcaMorphism relation_map;  // Z^n -> Z^n + R^n onto a basis of the relations
  // R[G]/N_G -> M_alpha -> Z on the underlying LCA groups
  ExactSequenceSpec sequence;
};
ExtensionPresentation build_M_alpha(size_t n, const Integer& alpha);

// Whether M_alpha -> Z has a Z[G]-linear section; decided as an integer-linear system.
bool splits_algebraically(const ExtensionPresentation& ext);

}  // namespace lca

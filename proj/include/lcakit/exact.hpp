#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lcakit/morphism.hpp"

namespace lca {

enum class Admissibility { AdmissibleMonic, AdmissibleEpic, Isomorphism, Neither, Unknown };
enum class Exactness { Exact, NotExact, Unknown };

const char* to_string(Admissibility a);
const char* to_string(Exactness e);

// sub --monic--> mid --epic--> quot
struct ExactSequenceSpec {
  LcaObject sub, mid, quot;
  LcaMorphism monic, epic;
  // The sequence with both maps given; objects are read off the maps.
  static ExactSequenceSpec of(const LcaMorphism& monic, const LcaMorphism& epic);
};

// Unknown only when a morphism ties summands at different places (R, Z, T versus
// p-adic summands) in a way the place-by-place decision cannot separate.
Admissibility classify(const LcaMorphism& f);
Exactness check_exact(const ExactSequenceSpec& seq);
ExactSequenceSpec dual_sequence(const ExactSequenceSpec& seq);

// Whether f is an automorphism; complete, by block-triangularity of endomorphisms.
bool is_automorphism(const LcaMorphism& f);

// Cokernel of an admissible monic.
class Cokernel {
 public:
  explicit Cokernel(const LcaMorphism& monic);
  const LcaObject& object() const { return object_; }
  const LcaMorphism& projection() const { return projection_; }
  // The map out of the cokernel through which h factors; h must vanish on the image.
  LcaMorphism descend(const LcaMorphism& h) const;

 private:
  LcaMorphism monic_;
  LcaObject object_;
  LcaMorphism projection_;
  Layout mid_, quot_;
  std::vector<Prime> quot_place_;
  QMatrix section_;  // mid atoms x quotient components, cover level
};

// H -> g -> D with H compactly generated (Z_p in place of each Q_p) and D discrete.
ExactSequenceSpec decompose_cg_discrete(const LcaObject& g);
// C -> g -> W with C the maximal compact subgroup and W = R^n + Z^m; needs g compactly generated.
ExactSequenceSpec compact_part(const LcaObject& g);
// (R^real_rank, everything else)
std::pair<LcaObject, LcaObject> split_vector_summand(const LcaObject& g);

}  // namespace lca

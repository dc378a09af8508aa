#pragma once

#include "cursor.hpp"
#include "lcakit/morphism.hpp"
#include "lcakit/object.hpp"

namespace lca::detail {

// Parse an object starting at the cursor; stops at the first character that cannot
// continue the sum.
LcaObject parse_object(Cursor& cur);
LcaMorphism parse_morphism(Cursor& cur);

}  // namespace lca::detail

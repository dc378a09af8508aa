#pragma once

#include <stdexcept>
#include <string>

namespace lca {

// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

#define LCAKIT_ERROR(Name)          \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  };

LCAKIT_ERROR(InvalidMorphism)        // entry outside the Hom-table
LCAKIT_ERROR(SourceTargetMismatch)
LCAKIT_ERROR(ShapeMismatch)
LCAKIT_ERROR(NotCompactlyGenerated)
LCAKIT_ERROR(NotAnAutomorphism)
LCAKIT_ERROR(NotExact)
LCAKIT_ERROR(NotCommutative)
LCAKIT_ERROR(NotAFiltration)
LCAKIT_ERROR(SupportNotCovered)
LCAKIT_ERROR(ObjectMismatch)
LCAKIT_ERROR(DiagramNotCommutative)
LCAKIT_ERROR(RowOrColumnNotExact)
// The place-by-place engine cannot decide a morphism that mixes places.
LCAKIT_ERROR(Undecided)

#undef LCAKIT_ERROR

}  // namespace lca

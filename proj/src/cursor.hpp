#pragma once

#include <cctype>
#include <string>

#include "lcakit/rational.hpp"

namespace lca::detail {

// Character cursor with line/column tracking, shared by the text grammars.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }
  bool accept(const std::string& word) {
    skip_ws();
    if (s_.compare(pos_, word.size(), word) != 0) return false;
    for (size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(const std::string& word) {
    if (!accept(word)) fail("expected '" + word + "'");
  }

  Integer integer() {
    skip_ws();
    std::string digits;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) digits += take();
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += take();
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    if (digits[0] == '+') digits.erase(0, 1);
    return Integer(digits);
  }
  unsigned long natural() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') fail("expected a nonnegative integer");
    Integer n = integer();
    if (!n.fits_ulong_p()) fail("integer out of range");
    return n.get_ui();
  }
  Rational rational() {
    Integer num = integer();
    // a slash directly after the numerator belongs to the number
    if (pos_ < s_.size() && s_[pos_] == '/') {
      advance();
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      return make_rational(num, den);
    }
    return Rational(num);
  }
  std::string word() {
    skip_ws();
    std::string w;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '-' || s_[pos_] == '.'))
      w += take();
    if (w.empty()) fail("expected a name");
    return w;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  int line() const { return line_; }
  int column() const { return col_; }
  size_t pos() const { return pos_; }
  const std::string& text() const { return s_; }
  void seek(size_t p) {
    while (pos_ < p) advance();
  }

 private:
  char take() {
    char c = s_[pos_];
    advance();
    return c;
  }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace lca::detail

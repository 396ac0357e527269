#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "geo4/errors.hpp"

namespace geo4 {

/// Character cursor shared by the small DSL parsers. Tracks 1-based line and
/// column; `#` starts a comment running to end of line.
class Cursor {
public:
  explicit Cursor(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[nodiscard]] bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  /// Peek without skipping whitespace.
  [[nodiscard]] char peek_raw() const {
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  bool accept(std::string_view word) {
    skip_ws();
    if (s_.substr(pos_, word.size()) != word)
      return false;
    auto save = *this;
    for (std::size_t i = 0; i < word.size(); ++i)
      advance();
    if (is_ident_char(word.back()) && is_ident_char(peek_raw())) {
      *this = save;
      return false;
    }
    return true;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'" + found());
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  [[nodiscard]] bool at_ident() { return is_ident_start(peek()); }

  std::string ident() {
    if (!at_ident())
      fail("expected identifier" + found());
    std::string out;
    while (is_ident_char(peek_raw())) {
      out += peek_raw();
      advance();
    }
    return out;
  }

  [[nodiscard]] bool at_integer() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
      return true;
    if ((c == '-' || c == '+') && pos_ + 1 < s_.size())
      return std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) != 0;
    return false;
  }

  std::int64_t integer() {
    if (!at_integer())
      fail("expected integer" + found());
    std::string digits;
    if (peek_raw() == '-' || peek_raw() == '+') {
      digits += peek_raw();
      advance();
    }
    while (std::isdigit(static_cast<unsigned char>(peek_raw()))) {
      digits += peek_raw();
      advance();
    }
    try {
      return std::stoll(digits);
    } catch (const std::exception &) {
      fail("integer out of range");
    }
  }

  /// Double-quoted string with backslash escapes for '"' and '\\'.
  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size())
        advance();
      if (s_[pos_] == '\n')
        fail("newline in string");
      out += s_[pos_];
      advance();
    }
    if (pos_ >= s_.size())
      fail("unterminated string");
    advance();
    return out;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, line_, col_);
  }

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return col_; }

  std::string found() {
    skip_ws();
    if (pos_ >= s_.size())
      return ", found end of input";
    return std::string(", found '") + s_[pos_] + "'";
  }

private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

} // namespace geo4

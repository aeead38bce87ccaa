#include "fblow/parse.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "fblow/errors.hpp"

namespace fblow {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    try {
      return run_unchecked();
    } catch (const std::overflow_error&) {
      throw ParseError(ParseError::Kind::ExponentOverflow, pos_, "exponent overflow");
    }
  }

 private:
  Polynomial run_unchecked() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (!at_end()) {
      if (starts_operand()) fail("missing operator (juxtaposition is not multiplication)");
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return p;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      skip_space();
      if (at_end()) return acc;
      char c = text_[pos_];
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_space();
      if (at_end()) return acc;
      if (text_[pos_] == '*') {
        ++pos_;
        acc *= unary();
      } else if (starts_operand()) {
        fail("missing operator (juxtaposition is not multiplication)");
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    skip_space();
    if (!at_end() && text_[pos_] == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  Polynomial power() {
    std::size_t start = pos_;
    Polynomial base = atom();
    skip_space();
    if (at_end() || text_[pos_] != '^') return base;
    ++pos_;
    skip_space();
    std::size_t epos = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("exponent must be a non-negative integer literal");
    }
    uint64_t e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + static_cast<uint64_t>(text_[pos_] - '0');
      if (e > std::numeric_limits<Monomial::Exponent>::max()) {
        throw ParseError(ParseError::Kind::ExponentOverflow, epos, "exponent overflow");
      }
      ++pos_;
    }
    try {
      return base.pow(e);
    } catch (const std::overflow_error&) {
      throw ParseError(ParseError::Kind::ExponentOverflow, start, "exponent overflow");
    }
  }

  Polynomial atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // reduce as we go so arbitrarily long literals are fine
      const uint64_t p = ring_->characteristic();
      uint64_t v = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = (v * 10 + static_cast<uint64_t>(text_[pos_] - '0')) % p;
        ++pos_;
      }
      return Polynomial::constant(ring_, static_cast<int64_t>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError(ParseError::Kind::UnknownVariable, start, "unknown variable '" + name + "'");
      return Polynomial::variable(ring_, *idx);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  bool starts_operand() const {
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, pos_, msg);
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace fblow

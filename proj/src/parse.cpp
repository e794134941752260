#include "artin/parse.hpp"

#include <cctype>
#include <string>

#include "artin/errors.hpp"

namespace artin {

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring, int line, int column)
      : text_(text), ring_(ring), line_(line), column_(column) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    Polynomial p = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + static_cast<int>(pos_));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    skip_space();
    Polynomial acc(ring_);
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial t = product();
    acc += negate ? -t : t;
    while (true) {
      skip_space();
      if (peek() == '+' || peek() == '-') {
        const bool minus = peek() == '-';
        ++pos_;
        Polynomial u = product();
        if (minus) {
          acc -= u;
        } else {
          acc += u;
        }
      } else {
        return acc;
      }
    }
  }

  bool starts_factor() {
    skip_space();
    const char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial product() {
    Polynomial acc = power();
    while (true) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        acc *= power();
      } else if (starts_factor()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  unsigned long integer() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) fail("exponent too large");
    return std::stoul(digits);
  }

  Polynomial power() {
    Polynomial base = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      unsigned long e;
      if (accept('(')) {
        e = integer();
        if (!accept(')')) fail("expected ')'");
      } else {
        e = integer();
      }
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      mpz_class num(std::string(text_.substr(start, pos_ - start)));
      mpz_class den = 1;
      skip_space();
      if (peek() == '/') {
        ++pos_;
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        const std::size_t ds = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        den = mpz_class(std::string(text_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
      }
      try {
        return Polynomial::constant(ring_, Scalar(ring_->field(), mpq_class(num, den)));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto v = ring_->find(name);
      if (!v) {
        pos_ = start;
        fail("undeclared variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *v);
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, int line, int column) {
  return PolyParser(text, ring, line, column).parse();
}

std::vector<Polynomial> parse_polynomial_list(std::string_view text, const RingPtr& ring,
                                              int line, int column) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  int depth = 0;
  bool any = false;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(c))) any = true;
    if (c == ',' && depth == 0) {
      const auto piece = text.substr(start, i - start);
      if (i == text.size() && !any) break;
      out.push_back(parse_polynomial(piece, ring, line, column + static_cast<int>(start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace artin

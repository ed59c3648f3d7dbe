#include "qdet/quaternion.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace qdet {
namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  bool digit() const { return !done() && std::isdigit(static_cast<unsigned char>(text[pos])); }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("malformed quaternion literal '" + std::string(text) + "': " + what, 0, pos + 1);
  }
};

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

struct Number {
  Rational exact;
  double approx = 0.0;
  bool decimal = false;
  bool fraction = false;
};

// digits ['/' digits] | digits? '.' digits* [exp] | digits exp
Number read_number(Cursor& c) {
  const std::size_t start = c.pos;
  std::string mantissa;
  while (c.digit()) mantissa += c.text[c.pos++];
  Number n;
  if (c.peek() == '/') {
    if (mantissa.empty()) c.fail("fraction without numerator");
    ++c.pos;
    std::string den;
    while (c.digit()) den += c.text[c.pos++];
    if (den.empty()) c.fail("fraction without denominator");
    mpz_class d(den, 10);
    if (d == 0) c.fail("zero denominator");
    n.exact = Rational(mpz_class(mantissa, 10), d);
    n.exact.canonicalize();
    n.approx = n.exact.get_d();
    n.fraction = true;
    return n;
  }
  long frac_digits = 0;
  if (c.peek() == '.') {
    n.decimal = true;
    ++c.pos;
    while (c.digit()) {
      mantissa += c.text[c.pos++];
      ++frac_digits;
    }
  }
  if (mantissa.empty()) c.fail("expected a number");
  long exponent = 0;
  if (c.peek() == 'e' || c.peek() == 'E') {
    n.decimal = true;
    ++c.pos;
    bool negative = false;
    if (c.peek() == '+' || c.peek() == '-') negative = c.text[c.pos++] == '-';
    if (!c.digit()) c.fail("exponent without digits");
    std::string ed;
    while (c.digit()) ed += c.text[c.pos++];
    if (ed.size() > 6) c.fail("exponent out of range");
    exponent = std::stol(ed) * (negative ? -1 : 1);
  }
  n.exact = Rational(mpz_class(mantissa, 10)) * pow10(exponent - frac_digits);
  if (n.decimal) {
    const char* first = c.text.data() + start;
    const char* last = c.text.data() + c.pos;
    auto [ptr, ec] = std::from_chars(first, last, n.approx);
    if (ec != std::errc() || ptr != last) c.fail("decimal out of range");
  } else {
    n.approx = n.exact.get_d();
  }
  return n;
}

std::string format_component(const Rational& x) { return x.get_str(); }

std::string format_component(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

template <typename T>
std::string format(const Quaternion<T>& q, bool elide_unit_one) {
  static constexpr const char* units[4] = {"", "i", "j", "k"};
  std::string out;
  for (std::size_t p = 0; p < 4; ++p) {
    if (ScalarTraits<T>::is_zero(q[p])) continue;
    T mag = q[p];
    bool negative = mag < 0;
    if (negative) mag = -mag;
    if (negative)
      out += '-';
    else if (!out.empty())
      out += '+';
    if (!(p > 0 && elide_unit_one && mag == 1)) out += format_component(mag);
    out += units[p];
  }
  if (out.empty()) out = format_component(T(0));
  return out;
}

}  // namespace

ParsedLiteral parse_literal(std::string_view text) {
  Cursor c{text};
  if (text.empty()) c.fail("empty literal");
  ParsedLiteral lit;
  bool first = true;
  while (!c.done()) {
    bool negative = false;
    if (c.peek() == '+' || c.peek() == '-') {
      negative = c.text[c.pos++] == '-';
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    first = false;
    Number coeff;
    bool has_coeff = false;
    if (c.digit() || c.peek() == '.') {
      coeff = read_number(c);
      has_coeff = true;
    }
    std::size_t unit = 0;
    switch (c.peek()) {
      case 'i': unit = 1; ++c.pos; break;
      case 'j': unit = 2; ++c.pos; break;
      case 'k': unit = 3; ++c.pos; break;
      default:
        if (!has_coeff) c.fail(c.done() ? "dangling sign" : std::string("unexpected character '") + c.peek() + "'");
    }
    if (!has_coeff) {
      coeff.exact = 1;
      coeff.approx = 1.0;
    }
    if (negative) {
      coeff.exact = -coeff.exact;
      coeff.approx = -coeff.approx;
    }
    lit.exact[unit] += coeff.exact;
    lit.approx[unit] += coeff.approx;
    lit.has_decimal |= coeff.decimal;
    lit.has_fraction |= coeff.fraction;
  }
  return lit;
}

template <>
QuaternionQ parse_quaternion<Rational>(std::string_view text) {
  ParsedLiteral lit = parse_literal(text);
  if (lit.has_decimal)
    throw ParseError("decimal literal '" + std::string(text) + "' is not allowed in exact mode", 0, 0);
  return {lit.exact[0], lit.exact[1], lit.exact[2], lit.exact[3]};
}

template <>
QuaternionD parse_quaternion<double>(std::string_view text) {
  ParsedLiteral lit = parse_literal(text);
  return {lit.approx[0], lit.approx[1], lit.approx[2], lit.approx[3]};
}

std::string to_literal(const QuaternionQ& q) { return format(q, true); }
std::string to_literal(const QuaternionD& q) { return format(q, false); }

}  // namespace qdet

#include "nct/rational.hpp"

#include <cctype>
#include <cstdio>

#include "nct/error.hpp"

namespace nct {

namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not an exact rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad(text);
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) bad(text);

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) bad(text);
    BigInt d{std::string(den), 10};
    if (d == 0) bad(text);
    out = Rational(BigInt(std::string(num), 10), d);
  } else {
    auto dot = body.find('.');
    auto int_part = body.substr(0, dot);
    std::string_view frac_part;
    if (dot != std::string_view::npos) frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(text);
    if (!all_digits(int_part) || !all_digits(frac_part)) bad(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    out = Rational(BigInt(digits.empty() ? std::string("0") : digits, 10), scale);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational inverse_power(std::uint32_t radix, std::uint64_t exponent) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), radix, exponent);
  return Rational(BigInt(1), den);
}

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

}  // namespace nct

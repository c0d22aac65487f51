#include "rpmc/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rpmc {
namespace {

constexpr std::size_t kMaxFractionDigits = 18;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class parse_integer(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string shown(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + shown + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in '" + shown + "'");
    }
    Rational r(parse_integer(num), d);
    r.canonicalize();
    return r;
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) {
      throw std::invalid_argument("malformed number '" + shown + "'");
    }
    return Rational(parse_integer(text));
  }

  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac) || (whole.empty() && frac.empty())) {
    throw std::invalid_argument("malformed decimal '" + shown + "'");
  }
  if (frac.size() > kMaxFractionDigits) {
    throw std::invalid_argument("more than 18 fraction digits in '" + shown + "'");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  mpz_class numerator = (whole.empty() ? mpz_class(0) : parse_integer(whole)) * scale + parse_integer(frac);
  Rational r(numerator, scale);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) {
    return value.get_num().get_str();
  }
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::size_t encoding_length(const Rational& value) {
  const mpz_class& num = value.get_num();
  std::size_t num_bits = num == 0 ? 1 : mpz_sizeinbase(num.get_mpz_t(), 2);
  return num_bits + mpz_sizeinbase(value.get_den().get_mpz_t(), 2);
}

}  // namespace rpmc

// Copyright 2026 The pbwelfare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbwelfare/rational.h"

#include <cctype>
#include <stdexcept>
#include <string>

namespace pbwelfare {

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer PowerOfTen(unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

[[noreturn]] void Malformed(std::string_view text) {
  throw std::invalid_argument("malformed rational literal '" +
                              std::string(text) + "'");
}

// Parses an unsigned decimal "ddd", "ddd.ddd", ".ddd" or "ddd.".
Rational ParseUnsignedDecimal(std::string_view body, std::string_view text) {
  const auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view() : body.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) Malformed(text);
  if (!int_part.empty() && !AllDigits(int_part)) Malformed(text);
  if (!frac_part.empty() && !AllDigits(frac_part)) Malformed(text);
  const std::string digits = std::string(int_part) + std::string(frac_part);
  Rational result(Integer(digits.empty() ? "0" : digits),
                  PowerOfTen(frac_part.size()));
  result.canonicalize();
  return result;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  if (s.empty()) Malformed(text);

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational result;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) Malformed(text);
    const Integer denominator{std::string(den)};
    if (denominator == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                  "'");
    }
    result = Rational(Integer(std::string(num)), denominator);
    result.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
        exp_negative = exp_text[0] == '-';
        exp_text.remove_prefix(1);
      }
      if (!AllDigits(exp_text) || exp_text.size() > 6) Malformed(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    result = ParseUnsignedDecimal(mantissa, text);
    if (exponent > 0) {
      result *= PowerOfTen(static_cast<unsigned long>(exponent));
    } else if (exponent < 0) {
      result /= PowerOfTen(static_cast<unsigned long>(-exponent));
    }
  }
  if (negative) result = -result;
  return result;
}

std::string ToString(const Rational& value) { return value.get_str(); }

std::string ToDecimal(const Rational& value, int places) {
  const bool negative = sgn(value) < 0;
  const Integer scale = PowerOfTen(static_cast<unsigned long>(places));
  const Rational magnitude = abs(value) * scale;
  // Round half away from zero.
  const Integer scaled = Floor(magnitude + Rational(1, 2));
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (digits.size() <= static_cast<size_t>(places)) {
      digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(places), ".");
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

Integer Floor(const Rational& value) {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

Integer Ceil(const Rational& value) {
  Integer result;
  mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

bool IsPerfectSquare(const Rational& value, Rational* root) {
  if (sgn(value) < 0) return false;
  if (mpz_perfect_square_p(value.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(value.get_den_mpz_t()) == 0) {
    return false;
  }
  if (root != nullptr) {
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), value.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), value.get_den_mpz_t());
    *root = Rational(num, den);
    root->canonicalize();
  }
  return true;
}

Rational SqrtRoundDown(const Rational& value, const Integer& precision) {
  if (sgn(value) < 0) throw std::domain_error("square root of negative value");
  if (precision <= 0) throw std::invalid_argument("precision must be positive");
  // floor(sqrt(x) * P) = floor(sqrt(floor(x * P^2))).
  const Integer radicand = Floor(value * precision * precision);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Rational result(root, precision);
  result.canonicalize();
  return result;
}

RationalInterval SqrtBracket(const Rational& value, const Rational& max_width) {
  if (sgn(value) < 0) throw std::domain_error("square root of negative value");
  if (sgn(max_width) <= 0) {
    throw std::invalid_argument("bracket width must be positive");
  }
  Rational root;
  if (IsPerfectSquare(value, &root)) return {root, root};
  // Power-of-two grid fine enough for the requested width.
  Integer grid = 1;
  while (Rational(1, 1) / grid > max_width) grid *= 2;
  const Rational lo = SqrtRoundDown(value, grid);
  return {lo, lo + Rational(1) / grid};
}

}  // namespace pbwelfare

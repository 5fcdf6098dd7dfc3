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

#ifndef PBWELFARE_RATIONAL_H_
#define PBWELFARE_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pbwelfare {

// Every monetary and satisfaction quantity in the library is an exact,
// canonically reduced GMP rational. Beware of `auto` with gmpxx expression
// templates: always bind results to a named Rational.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "13", "-13/2", "12.50" or "1e-3" into an exact rational.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical literal: "13/2", "-4", "0".
std::string ToString(const Rational& value);

// Decimal rendering rounded half away from zero to `places` digits.
std::string ToDecimal(const Rational& value, int places = 12);

Integer Floor(const Rational& value);
Integer Ceil(const Rational& value);

// True iff value = q^2 for some rational q; writes q when non-null.
bool IsPerfectSquare(const Rational& value, Rational* root = nullptr);

// floor(sqrt(value) * precision) / precision, for value >= 0.
Rational SqrtRoundDown(const Rational& value, const Integer& precision);

// A closed rational interval [lo, hi] with lo <= hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
};

// Brackets sqrt(value) by an interval of width at most `max_width`. The
// interval collapses to a point when value is a perfect rational square.
RationalInterval SqrtBracket(const Rational& value, const Rational& max_width);

}  // namespace pbwelfare

#endif  // PBWELFARE_RATIONAL_H_

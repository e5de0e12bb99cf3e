// Copyright 2026 The bnbptas Authors
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

#ifndef BNBPTAS_RATIONAL_HPP_
#define BNBPTAS_RATIONAL_HPP_

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bnbptas {

// Exact fraction in canonical form: denominator > 0 and gcd(num, den) == 1.
//
// Values whose numerator and denominator both fit in a signed 64-bit word
// (excluding INT64_MIN) are stored inline and combined with 128-bit
// intermediates; anything larger is promoted to a shared, immutable GMP
// rational and demoted again as soon as a result fits. A given value always
// has exactly one representation, so equality and hashing never need to
// look at which form is active. When both operands are integers the
// arithmetic skips every gcd.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      assign_integer(static_cast<std::int64_t>(value));
    } else {
      if (static_cast<std::uint64_t>(value) >
          static_cast<std::uint64_t>(INT64_MAX)) {
        set_big(mpq_class(mpz_class(std::to_string(value))));
      } else {
        assign_integer(static_cast<std::int64_t>(value));
      }
    }
  }

  // Throws std::domain_error when den == 0.
  Rational(std::int64_t num, std::int64_t den);

  explicit Rational(const mpq_class& value);

  // Accepts "a/b", "a" and an optional leading sign. Throws
  // std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  // "num/den", always with an explicit denominator.
  std::string str() const;
  std::string numerator_str() const;
  std::string denominator_str() const;

  mpq_class to_mpq() const;
  double to_double() const;

  bool is_small() const noexcept { return big_ == nullptr; }
  bool is_integer() const noexcept;
  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  int sign() const noexcept;

  Rational floor() const;
  Rational ceil() const;
  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(unsigned exponent) const;

  // Denominator as an integer-valued Rational.
  Rational denominator() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

  std::size_t hash() const noexcept;

 private:
  void assign_integer(std::int64_t value);
  void set_big(mpq_class value);
  // Takes a canonical pair; keeps it inline when it fits, else promotes.
  static Rational from_canonical(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

// Three-way comparison without rounding; the operation behind every bound
// test in the solvers.
std::strong_ordering ratio_compare(const Rational& a, const Rational& b);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// floor(a / b) for b != 0.
Rational floor_div(const Rational& a, const Rational& b);

// Least common multiple of all denominators (1 for an empty span).
Rational common_denominator(std::span<const Rational> values);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace bnbptas

template <>
struct std::hash<bnbptas::Rational> {
  std::size_t operator()(const bnbptas::Rational& r) const noexcept {
    return r.hash();
  }
};

#endif  // BNBPTAS_RATIONAL_HPP_

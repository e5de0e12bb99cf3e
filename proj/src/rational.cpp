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

#include "bnbptas/rational.hpp"

#include <climits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace bnbptas {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = static_cast<i128>(INT64_MIN);
constexpr i128 kMax64 = static_cast<i128>(INT64_MAX);

bool fits(i128 v) { return v > kMin64 && v <= kMax64; }

mpz_class mpz_from(i128 v) {
  const bool negative = v < 0;
  const u128 magnitude = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class result(static_cast<unsigned long>(magnitude >> 64));
  result <<= 64;
  result += static_cast<unsigned long>(magnitude & 0xFFFFFFFFFFFFFFFFULL);
  if (negative) result = -result;
  return result;
}

bool mpz_fits_inline(const mpz_class& z) {
  return z.fits_slong_p() && mpz_cmp_si(z.get_mpz_t(), LONG_MIN) != 0;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(std::gcd(a, b));
}

}  // namespace

void Rational::assign_integer(std::int64_t value) {
  if (value == INT64_MIN) {
    set_big(mpq_class(mpz_from(static_cast<i128>(value))));
    return;
  }
  num_ = value;
  den_ = 1;
  big_.reset();
}

void Rational::set_big(mpq_class value) {
  value.canonicalize();
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(value));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) {
    *this = Rational(mpq_class(mpz_from(num), mpz_from(den)));
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = gcd64(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational::Rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  if (mpz_fits_inline(q.get_num()) && mpz_fits_inline(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
  } else {
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

Rational Rational::from_canonical(i128 num, i128 den) {
  Rational r;
  if (num == 0) return r;
  if (fits(num) && fits(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from(num), mpz_from(den));
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const std::string_view digits = (!s.empty() && s.front() == '-') ? s.substr(1) : s;
    if (digits.empty()) throw std::invalid_argument("Rational: empty integer");
    for (char c : digits) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("Rational: malformed number '" + std::string(s) + "'");
      }
    }
    return mpz_class(std::string(s), 10);
  };
  text = trim(text);
  const auto slash = text.find('/');
  const mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = 1;
  if (slash != std::string_view::npos) den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  return Rational(mpq_class(num, den));
}

std::string Rational::str() const { return numerator_str() + "/" + denominator_str(); }

std::string Rational::numerator_str() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Rational::is_integer() const noexcept {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational Rational::floor() const {
  if (big_) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(mpq_class(q));
  }
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return Rational(q);
}

Rational Rational::ceil() const {
  if (big_) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(mpq_class(q));
  }
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return Rational(q);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const { return Rational(1) / *this; }

Rational Rational::pow(unsigned exponent) const {
  Rational result(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rational Rational::denominator() const {
  if (big_) return Rational(mpq_class(big_->get_den()));
  return Rational(den_);
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  if (a.den_ == 1 && b.den_ == 1) {
    return Rational::from_canonical(static_cast<i128>(a.num_) + b.num_, 1);
  }
  const std::int64_t g = gcd64(a.den_, b.den_);
  if (g == 1) {
    const i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    return Rational::from_canonical(num, static_cast<i128>(a.den_) * b.den_);
  }
  const i128 t =
      static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
  if (t == 0) return Rational();
  const std::int64_t g2 = gcd64(static_cast<std::int64_t>(t % g), g);
  return Rational::from_canonical(t / g2, static_cast<i128>(a.den_ / g) * (b.den_ / g2));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  if (a.den_ == 1 && b.den_ == 1) {
    return Rational::from_canonical(static_cast<i128>(a.num_) * b.num_, 1);
  }
  const std::int64_t g1 = gcd64(a.num_, b.den_);
  const std::int64_t g2 = gcd64(b.num_, a.den_);
  const i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
  const i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
  return Rational::from_canonical(num, den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.sign() == 0) throw std::domain_error("Rational: division by zero");
  if (a.big_ || b.big_) return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  Rational inv;
  inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
  inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
  return a * inv;
}

Rational& Rational::operator+=(const Rational& rhs) { return *this = *this + rhs; }
Rational& Rational::operator-=(const Rational& rhs) { return *this = *this - rhs; }
Rational& Rational::operator*=(const Rational& rhs) { return *this = *this * rhs; }
Rational& Rational::operator/=(const Rational& rhs) { return *this = *this / rhs; }

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::size_t Rational::hash() const noexcept {
  if (big_) return std::hash<std::string>{}(str());
  const auto n = static_cast<std::uint64_t>(num_);
  const auto d = static_cast<std::uint64_t>(den_);
  return static_cast<std::size_t>(n * 0x9E3779B97F4A7C15ULL ^ (d + 0x7F4A7C159E3779B9ULL + (n << 6) + (n >> 2)));
}

std::strong_ordering ratio_compare(const Rational& a, const Rational& b) { return a <=> b; }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational floor_div(const Rational& a, const Rational& b) { return (a / b).floor(); }

Rational common_denominator(std::span<const Rational> values) {
  mpz_class acc = 1;
  for (const Rational& v : values) {
    if (v.is_small() && v.denominator() == Rational(1)) continue;
    const mpq_class q = v.to_mpq();
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), q.get_den_mpz_t());
  }
  return Rational(mpq_class(acc));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace bnbptas

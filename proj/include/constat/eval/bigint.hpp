// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_EVAL_BIGINT_HPP
#define CONSTAT_EVAL_BIGINT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace constat::eval {

// Arbitrary-precision signed integer. Constant evaluation uses exact
// arithmetic so folded results never depend on a host integer width.
// Magnitude is stored little-endian in base 10^9 limbs; zero has no limbs
// and is never negative.
class BigInt {
 public:
  BigInt() = default;
  explicit BigInt(long long value);

  // Parses an integer literal: decimal, 0x/0X hex, 0b/0B binary, 0o/0O
  // octal, with embedded underscores and trailing l/L/u/U suffixes.
  // Returns nullopt for anything else (floats, malformed digits).
  static std::optional<BigInt> parse_literal(std::string_view lexeme);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& rhs) const;
  BigInt operator-(const BigInt& rhs) const;
  BigInt operator*(const BigInt& rhs) const;

  // Floor division/modulo (Python `//` and `%`): quotient rounds toward
  // negative infinity, remainder takes the divisor's sign.
  // Returns nullopt when the divisor is zero.
  static std::optional<BigInt> div_floor(const BigInt& a, const BigInt& b);
  static std::optional<BigInt> mod_floor(const BigInt& a, const BigInt& b);

  // Truncating division/remainder (Kotlin `/` and `%`): quotient rounds
  // toward zero, remainder takes the dividend's sign.
  static std::optional<BigInt> div_trunc(const BigInt& a, const BigInt& b);
  static std::optional<BigInt> rem_trunc(const BigInt& a, const BigInt& b);

  // -1, 0, or 1.
  int compare(const BigInt& rhs) const;

  bool operator==(const BigInt& rhs) const { return compare(rhs) == 0; }
  bool operator!=(const BigInt& rhs) const { return compare(rhs) != 0; }
  bool operator<(const BigInt& rhs) const { return compare(rhs) < 0; }
  bool operator<=(const BigInt& rhs) const { return compare(rhs) <= 0; }
  bool operator>(const BigInt& rhs) const { return compare(rhs) > 0; }
  bool operator>=(const BigInt& rhs) const { return compare(rhs) >= 0; }

  std::string to_string() const;

 private:
  static constexpr std::uint32_t kBase = 1000000000;

  // Magnitude-only helpers; signs handled by the public operators.
  static std::vector<std::uint32_t> mag_add(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> mag_sub(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mag_mul(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static int mag_compare(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static void mag_divmod(const std::vector<std::uint32_t>& u,
                         const std::vector<std::uint32_t>& v,
                         std::vector<std::uint32_t>* quotient,
                         std::vector<std::uint32_t>* remainder);
  static void trim(std::vector<std::uint32_t>* mag);

  void mul_small_add(std::uint32_t factor, std::uint32_t addend);
  void normalize();

  bool negative_ = false;
  std::vector<std::uint32_t> limbs_;
};

}  // namespace constat::eval

#endif  // CONSTAT_EVAL_BIGINT_HPP

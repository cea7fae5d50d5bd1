// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/eval/bigint.hpp"

#include <algorithm>
#include <cctype>

namespace constat::eval {

BigInt::BigInt(long long value) {
  negative_ = value < 0;
  // Avoids overflow on LLONG_MIN by widening before negation.
  unsigned long long mag =
      negative_ ? -(static_cast<unsigned long long>(value))
                : static_cast<unsigned long long>(value);
  while (mag > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag % kBase));
    mag /= kBase;
  }
  normalize();
}

void BigInt::normalize() {
  trim(&limbs_);
  if (limbs_.empty()) negative_ = false;
}

void BigInt::trim(std::vector<std::uint32_t>* mag) {
  while (!mag->empty() && mag->back() == 0) mag->pop_back();
}

void BigInt::mul_small_add(std::uint32_t factor, std::uint32_t addend) {
  std::uint64_t carry = addend;
  for (auto& limb : limbs_) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
    limb = static_cast<std::uint32_t>(cur % kBase);
    carry = cur / kBase;
  }
  while (carry > 0) {
    limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
    carry /= kBase;
  }
}

std::optional<BigInt> BigInt::parse_literal(std::string_view lexeme) {
  // Trailing integer-literal suffixes (Kotlin 1L, 2u, 3UL).
  while (!lexeme.empty()) {
    char c = lexeme.back();
    if (c == 'l' || c == 'L' || c == 'u' || c == 'U') {
      lexeme.remove_suffix(1);
    } else {
      break;
    }
  }
  int base = 10;
  if (lexeme.size() >= 2 && lexeme[0] == '0') {
    char p = lexeme[1];
    if (p == 'x' || p == 'X') {
      base = 16;
      lexeme.remove_prefix(2);
    } else if (p == 'b' || p == 'B') {
      base = 2;
      lexeme.remove_prefix(2);
    } else if (p == 'o' || p == 'O') {
      base = 8;
      lexeme.remove_prefix(2);
    }
  }
  if (lexeme.empty()) return std::nullopt;

  BigInt result;
  bool any_digit = false;
  for (char c : lexeme) {
    if (c == '_') continue;
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    if (digit >= base) return std::nullopt;
    result.mul_small_add(static_cast<std::uint32_t>(base),
                         static_cast<std::uint32_t>(digit));
    any_digit = true;
  }
  if (!any_digit) return std::nullopt;
  result.normalize();
  return result;
}

int BigInt::mag_compare(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::mag_add(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint32_t sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    if (sum >= kBase) {
      sum -= kBase;
      carry = 1;
    } else {
      carry = 0;
    }
    out.push_back(sum);
  }
  if (carry) out.push_back(carry);
  return out;
}

std::vector<std::uint32_t> BigInt::mag_sub(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                       (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (cur < 0) {
      cur += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(cur));
  }
  trim(&out);
  return out;
}

std::vector<std::uint32_t> BigInt::mag_mul(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur =
          acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
      acc[i + j] = cur % kBase;
      carry = cur / kBase;
    }
    std::size_t k = i + b.size();
    while (carry > 0) {
      std::uint64_t cur = acc[k] + carry;
      acc[k] = cur % kBase;
      carry = cur / kBase;
      ++k;
    }
  }
  std::vector<std::uint32_t> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(acc[i]);
  }
  trim(&out);
  return out;
}

void BigInt::mag_divmod(const std::vector<std::uint32_t>& u,
                        const std::vector<std::uint32_t>& v,
                        std::vector<std::uint32_t>* quotient,
                        std::vector<std::uint32_t>* remainder) {
  quotient->clear();
  remainder->clear();
  if (mag_compare(u, v) < 0) {
    *remainder = u;
    return;
  }
  // Schoolbook long division in base 10^9; each quotient limb is found by
  // binary search, which keeps the helper small at the cost of a log factor.
  std::vector<std::uint32_t> rem;
  std::vector<std::uint32_t> quot(u.size(), 0);
  for (std::size_t i = u.size(); i-- > 0;) {
    rem.insert(rem.begin(), u[i]);
    trim(&rem);
    std::uint32_t lo = 0;
    std::uint32_t hi = kBase - 1;
    std::uint32_t digit = 0;
    while (lo <= hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      std::vector<std::uint32_t> probe = mag_mul(v, {mid});
      if (mag_compare(probe, rem) <= 0) {
        digit = mid;
        if (mid == kBase - 1) break;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    if (digit > 0) {
      rem = mag_sub(rem, mag_mul(v, {digit}));
    }
    quot[i] = digit;
  }
  trim(&quot);
  *quotient = std::move(quot);
  *remainder = std::move(rem);
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  if (!out.is_zero()) out.negative_ = !out.negative_;
  return out;
}

BigInt BigInt::operator+(const BigInt& rhs) const {
  BigInt out;
  if (negative_ == rhs.negative_) {
    out.limbs_ = mag_add(limbs_, rhs.limbs_);
    out.negative_ = negative_;
  } else {
    int cmp = mag_compare(limbs_, rhs.limbs_);
    if (cmp == 0) return BigInt();
    if (cmp > 0) {
      out.limbs_ = mag_sub(limbs_, rhs.limbs_);
      out.negative_ = negative_;
    } else {
      out.limbs_ = mag_sub(rhs.limbs_, limbs_);
      out.negative_ = rhs.negative_;
    }
  }
  out.normalize();
  return out;
}

BigInt BigInt::operator-(const BigInt& rhs) const { return *this + (-rhs); }

BigInt BigInt::operator*(const BigInt& rhs) const {
  BigInt out;
  out.limbs_ = mag_mul(limbs_, rhs.limbs_);
  out.negative_ = !out.limbs_.empty() && (negative_ != rhs.negative_);
  return out;
}

std::optional<BigInt> BigInt::div_trunc(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) return std::nullopt;
  BigInt q;
  std::vector<std::uint32_t> rem;
  mag_divmod(a.limbs_, b.limbs_, &q.limbs_, &rem);
  q.negative_ = !q.limbs_.empty() && (a.negative_ != b.negative_);
  q.normalize();
  return q;
}

std::optional<BigInt> BigInt::rem_trunc(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) return std::nullopt;
  BigInt r;
  std::vector<std::uint32_t> quot;
  mag_divmod(a.limbs_, b.limbs_, &quot, &r.limbs_);
  r.negative_ = !r.limbs_.empty() && a.negative_;
  r.normalize();
  return r;
}

std::optional<BigInt> BigInt::div_floor(const BigInt& a, const BigInt& b) {
  auto q = div_trunc(a, b);
  if (!q) return std::nullopt;
  auto r = rem_trunc(a, b);
  // Truncation equals floor unless signs differ and division is inexact.
  if (!r->is_zero() && (a.negative_ != b.negative_)) {
    return *q - BigInt(1);
  }
  return q;
}

std::optional<BigInt> BigInt::mod_floor(const BigInt& a, const BigInt& b) {
  auto q = div_floor(a, b);
  if (!q) return std::nullopt;
  return a - *q * b;
}

int BigInt::compare(const BigInt& rhs) const {
  if (negative_ != rhs.negative_) return negative_ ? -1 : 1;
  int mag = mag_compare(limbs_, rhs.limbs_);
  return negative_ ? -mag : mag;
}

std::string BigInt::to_string() const {
  if (limbs_.empty()) return "0";
  std::string out;
  if (negative_) out.push_back('-');
  out += std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs_[i]);
    out.append(9 - part.size(), '0');
    out += part;
  }
  return out;
}

}  // namespace constat::eval

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fopw {

using BigInt = boost::multiprecision::cpp_int;

/// Nonnegative integer of the form
///   constant + sum_t coeff_t * 2^(exponent_t)
/// where constant and coefficients are exact and every exponent is itself a
/// TowerInt larger than kExactBits. Powers of two with smaller exponents are
/// folded into the constant, so small values are always exact.
///
/// Comparison works on leading terms and logarithmic upper bounds without
/// materializing towers. If two values are too close to separate that way,
/// compare() throws std::domain_error.
class TowerInt {
 public:
  static constexpr unsigned kExactBits = 4096;

  TowerInt() = default;
  TowerInt(std::uint64_t value) : constant_(value) {}  // NOLINT: implicit by design
  explicit TowerInt(BigInt value);

  bool is_exact() const { return terms_.empty(); }
  /// The exact value; throws std::domain_error for symbolic values.
  const BigInt& exact() const;
  std::optional<std::uint64_t> to_u64() const;

  /// 2^x.
  static TowerInt pow2(const TowerInt& x);

  friend TowerInt operator+(const TowerInt& a, const TowerInt& b);
  friend TowerInt operator*(const TowerInt& a, const TowerInt& b);

  /// -1, 0 or 1.
  friend int compare(const TowerInt& a, const TowerInt& b);
  friend bool operator<(const TowerInt& a, const TowerInt& b) { return compare(a, b) < 0; }
  friend bool operator<=(const TowerInt& a, const TowerInt& b) { return compare(a, b) <= 0; }
  friend bool operator>(const TowerInt& a, const TowerInt& b) { return compare(a, b) > 0; }
  friend bool operator>=(const TowerInt& a, const TowerInt& b) { return compare(a, b) >= 0; }
  friend bool operator==(const TowerInt& a, const TowerInt& b) { return compare(a, b) == 0; }

  /// Decimal for exact values up to a few hundred digits, otherwise a
  /// nested "2^(...)" expression.
  std::string to_string() const;

  /// Number of nested exponent levels (0 for exact values).
  int height() const;

 private:
  struct Term {
    BigInt coeff;
    std::shared_ptr<const TowerInt> exponent;
  };

  friend int compare_materialized(const TowerInt& a, const TowerInt& b);

  void normalize();
  /// Exact value when every exponent is small enough to expand.
  std::optional<BigInt> materialize() const;
  TowerInt upper_log() const;
  const TowerInt& top_exponent() const { return *terms_.front().exponent; }
  TowerInt without_top() const;

  BigInt constant_;
  std::vector<Term> terms_;  // exponents strictly decreasing
};

/// tow(0, n) = n, tow(i + 1, n) = 2^tow(i, n).
TowerInt tow(int i, const TowerInt& n);

/// Delta(1) = 3p and Delta(i + 1) = 2^2^(Delta(i) * 2^(20 q p^2)).
TowerInt delta(int p, int q, int i);

}  // namespace fopw

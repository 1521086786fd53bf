// SPDX-License-Identifier: Apache-2.0

#include "fopw/tower_int.hpp"

#include <algorithm>
#include <stdexcept>

namespace fopw {
namespace {

std::uint64_t bit_length(const BigInt& x) {
  return x == 0 ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(x)) + 1;
}

constexpr std::uint64_t kMaterializeBits = std::uint64_t{1} << 22;

}  // namespace

TowerInt::TowerInt(BigInt value) : constant_(std::move(value)) {
  if (constant_ < 0) throw std::domain_error("TowerInt is nonnegative");
}

const BigInt& TowerInt::exact() const {
  if (!is_exact()) throw std::domain_error("value is symbolic");
  return constant_;
}

std::optional<std::uint64_t> TowerInt::to_u64() const {
  if (!is_exact() || bit_length(constant_) > 64) return std::nullopt;
  return static_cast<std::uint64_t>(constant_);
}

void TowerInt::normalize() {
  std::vector<Term> kept;
  for (auto& t : terms_) {
    if (t.coeff == 0) continue;
    const TowerInt& e = *t.exponent;
    if (e.is_exact() && e.constant_ <= kExactBits) {
      constant_ += t.coeff << static_cast<unsigned>(e.constant_);
    } else {
      kept.push_back(std::move(t));
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const Term& a, const Term& b) { return compare(*a.exponent, *b.exponent) > 0; });
  terms_.clear();
  for (auto& t : kept) {
    if (!terms_.empty() && compare(*terms_.back().exponent, *t.exponent) == 0) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

TowerInt TowerInt::pow2(const TowerInt& x) {
  TowerInt out;
  out.terms_.push_back({BigInt(1), std::make_shared<const TowerInt>(x)});
  out.normalize();
  return out;
}

TowerInt operator+(const TowerInt& a, const TowerInt& b) {
  TowerInt out;
  out.constant_ = a.constant_ + b.constant_;
  out.terms_ = a.terms_;
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  out.normalize();
  return out;
}

TowerInt operator*(const TowerInt& a, const TowerInt& b) {
  TowerInt out;
  out.constant_ = a.constant_ * b.constant_;
  for (const auto& t : a.terms_) {
    if (b.constant_ != 0) out.terms_.push_back({t.coeff * b.constant_, t.exponent});
  }
  for (const auto& t : b.terms_) {
    if (a.constant_ != 0) out.terms_.push_back({t.coeff * a.constant_, t.exponent});
  }
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      out.terms_.push_back(
          {ta.coeff * tb.coeff, std::make_shared<const TowerInt>(*ta.exponent + *tb.exponent)});
    }
  }
  out.normalize();
  return out;
}

TowerInt TowerInt::without_top() const {
  TowerInt out;
  out.constant_ = constant_;
  out.terms_.assign(terms_.begin() + 1, terms_.end());
  return out;
}

// U with value < 2^U.
TowerInt TowerInt::upper_log() const {
  if (is_exact()) return TowerInt(bit_length(constant_));
  BigInt coeff_sum = 1;
  for (const auto& t : terms_) coeff_sum += t.coeff;
  TowerInt constant_bits(bit_length(constant_));
  const TowerInt& top = top_exponent();
  const TowerInt& base = compare(top, constant_bits) >= 0 ? top : constant_bits;
  return base + TowerInt(bit_length(coeff_sum));
}

std::optional<BigInt> TowerInt::materialize() const {
  BigInt out = constant_;
  for (const auto& t : terms_) {
    auto e = t.exponent->to_u64();
    if (!e || *e > kMaterializeBits) return std::nullopt;
    out += t.coeff << static_cast<unsigned>(*e);
  }
  return out;
}

int compare_materialized(const TowerInt& a, const TowerInt& b) {
  auto x = a.materialize();
  auto y = b.materialize();
  if (!x || !y) throw std::domain_error("cannot separate symbolic values");
  return *x < *y ? -1 : (*x > *y ? 1 : 0);
}

int compare(const TowerInt& a, const TowerInt& b) {
  if (a.is_exact() && b.is_exact()) {
    return a.constant_ < b.constant_ ? -1 : (a.constant_ > b.constant_ ? 1 : 0);
  }
  if (a.is_exact()) return -compare(b, a);

  // a is symbolic: a >= coeff * 2^E.
  const TowerInt& ea = a.top_exponent();
  const BigInt& ca = a.terms_.front().coeff;
  if (b.is_exact()) {
    // b < 2^bits(b) <= 2^E <= a when E >= bits(b).
    if (compare(ea, TowerInt(bit_length(b.constant_))) >= 0) return 1;
    if (bit_length(b.constant_) > 0 &&
        compare(a.upper_log(), TowerInt(bit_length(b.constant_) - 1)) <= 0) {
      return -1;
    }
    return compare_materialized(a, b);
  }

  const TowerInt& eb = b.top_exponent();
  const BigInt& cb = b.terms_.front().coeff;
  int top = compare(ea, eb);
  if (top == 0) {
    if (ca == cb) return compare(a.without_top(), b.without_top());
    // The larger coefficient wins once the remainder of the other side is
    // below 2^E.
    const TowerInt& smaller = ca > cb ? b : a;
    if (compare(smaller.without_top().upper_log(), ea) <= 0) return ca > cb ? 1 : -1;
    return compare_materialized(a, b);
  }
  const TowerInt& hi = top > 0 ? a : b;
  const TowerInt& lo = top > 0 ? b : a;
  // hi >= 2^(E + bits(coeff) - 1) and lo < 2^U.
  TowerInt floor_log = hi.top_exponent() + TowerInt(bit_length(hi.terms_.front().coeff) - 1);
  if (compare(lo.upper_log(), floor_log) <= 0) return top;
  return compare_materialized(a, b);
}

std::string TowerInt::to_string() const {
  auto exact_text = [](const BigInt& x) {
    if (bit_length(x) <= 1024) return x.str();
    return "<" + std::to_string(bit_length(x)) + "-bit integer>";
  };
  if (is_exact()) return exact_text(constant_);
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.coeff != 1) out += t.coeff.str() + "*";
    out += "2^(" + t.exponent->to_string() + ")";
  }
  if (constant_ != 0) out += " + " + exact_text(constant_);
  return out;
}

int TowerInt::height() const {
  int h = 0;
  for (const auto& t : terms_) h = std::max(h, 1 + t.exponent->height());
  return h;
}

TowerInt tow(int i, const TowerInt& n) {
  if (i < 0) throw std::domain_error("negative tower height");
  TowerInt x = n;
  for (int level = 0; level < i; ++level) x = TowerInt::pow2(x);
  return x;
}

TowerInt delta(int p, int q, int i) {
  if (p < 1 || q < 1 || i < 1) throw std::domain_error("delta needs p, q, i >= 1");
  TowerInt value(static_cast<std::uint64_t>(3 * p));
  const TowerInt scale = TowerInt::pow2(TowerInt(static_cast<std::uint64_t>(20 * q * p * p)));
  for (int level = 1; level < i; ++level) {
    value = TowerInt::pow2(TowerInt::pow2(value * scale));
  }
  return value;
}

}  // namespace fopw

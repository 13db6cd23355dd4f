#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ratshare/error.hpp"

namespace ratshare {

/// GF(p) for a prime p small enough that p*p fits in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::numeric_limits<std::uint32_t>::max();

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p > kMaxModulus)
      throw Error(ErrorCode::FieldTooLarge, "modulus " + std::to_string(p) + " exceeds 2^32-1");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const noexcept { return p_; }

  static constexpr bool is_prime(std::uint64_t v) noexcept {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint64_t d = 3; d * d <= v; d += 2)
      if (v % d == 0) return false;
    return true;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

class FieldElement {
 public:
  FieldElement(const PrimeField& field, std::uint64_t value)
      : p_(field.modulus()), value_(value % field.modulus()) {}

  /// Signed convenience constructor; negative values wrap.
  static FieldElement from_signed(const PrimeField& field, std::int64_t value) {
    const auto p = static_cast<std::int64_t>(field.modulus());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return FieldElement(field, static_cast<std::uint64_t>(r));
  }

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const {
    check_same(o);
    std::uint64_t s = value_ + o.value_;
    if (s >= p_) s -= p_;
    return raw(s);
  }
  FieldElement operator-(const FieldElement& o) const {
    check_same(o);
    return raw(value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_);
  }
  FieldElement operator-() const { return raw(value_ == 0 ? 0 : p_ - value_); }
  FieldElement operator*(const FieldElement& o) const {
    check_same(o);
    return raw((value_ * o.value_) % p_);
  }
  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement pow(std::uint64_t e) const {
    FieldElement base = *this;
    FieldElement acc = raw(1 % p_);
    while (e > 0) {
      if (e & 1U) acc = acc * base;
      base = base * base;
      e >>= 1U;
    }
    return acc;
  }

  /// Multiplicative inverse via Fermat's little theorem.
  FieldElement inv() const {
    if (value_ == 0) throw Error(ErrorCode::ZeroInverse, "0 has no inverse mod " + std::to_string(p_));
    return pow(p_ - 2);
  }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.value_; }

 private:
  FieldElement(std::uint64_t p, std::uint64_t v, int) : p_(p), value_(v) {}
  FieldElement raw(std::uint64_t v) const { return FieldElement(p_, v, 0); }

  void check_same(const FieldElement& o) const {
    if (p_ != o.p_)
      throw Error(ErrorCode::MixedFields,
                  "GF(" + std::to_string(p_) + ") and GF(" + std::to_string(o.p_) + ")");
  }

  std::uint64_t p_;
  std::uint64_t value_;
};

inline FieldElement inv(const FieldElement& a) { return a.inv(); }

struct Point {
  FieldElement x;
  FieldElement y;
};

/// Horner evaluation; coeffs[0] is the constant term.
inline FieldElement poly_eval(std::span<const FieldElement> coeffs, const FieldElement& x) {
  if (coeffs.empty()) throw Error(ErrorCode::EmptyInput, "polynomial has no coefficients");
  FieldElement acc = coeffs.back();
  if (acc.modulus() != x.modulus())
    throw Error(ErrorCode::MixedFields, "evaluation point lives in a different field");
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Value at 0 of the unique polynomial of degree < points.size() through
/// the points.
inline FieldElement interpolate_at_zero(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no interpolation points");
  const std::uint64_t p = points.front().x.modulus();
  for (const auto& pt : points)
    if (pt.x.modulus() != p || pt.y.modulus() != p)
      throw Error(ErrorCode::MixedFields, "interpolation points span several fields");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].x == points[j].x)
        throw Error(ErrorCode::DuplicateX, "x = " + std::to_string(points[i].x.value()) + " repeats");

  const PrimeField field(p);
  FieldElement secret(field, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElement num(field, 1);
    FieldElement den(field, 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      num *= points[j].x;
      den *= points[j].x - points[i].x;
    }
    secret += points[i].y * num / den;
  }
  return secret;
}

}  // namespace ratshare

#pragma once

#include <cstdint>
#include <ostream>

#include "frobent/error.hpp"

namespace frobent {

/// Residue modulo a runtime prime.
///
/// A value built from a bare integer has modulus 0 ("untyped") and takes the modulus of the
/// other operand in mixed expressions, which is what Eigen's Zero()/Identity() produce.
class ModP {
 public:
  ModP() = default;
  ModP(long long v) : value_(v) {}  // NOLINT: literal promotion
  ModP(long long v, std::uint32_t p) : value_(reduce(v, p)), modulus_(p) {}

  std::int64_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return modulus_ == 0 ? value_ == 0 : value_ == 0; }

  ModP inverse() const {
    if (modulus_ == 0) {
      if (value_ == 1 || value_ == -1) return *this;
      throw DomainError("untyped residue has no inverse");
    }
    if (value_ == 0) throw DomainError("division by zero mod " + std::to_string(modulus_));
    std::int64_t r = 1;
    std::int64_t b = value_;
    std::uint64_t n = modulus_ - 2;
    while (n > 0) {
      if (n & 1U) r = r * b % modulus_;
      b = b * b % modulus_;
      n >>= 1U;
    }
    return {r, modulus_};
  }

  ModP operator-() const { return modulus_ == 0 ? ModP(-value_) : ModP(-value_, modulus_); }
  ModP& operator+=(const ModP& o) { return *this = combine(o, value_ + o.value_); }
  ModP& operator-=(const ModP& o) { return *this = combine(o, value_ - o.value_); }
  ModP& operator*=(const ModP& o) {
    const std::uint32_t p = common(o);
    if (p == 0) return *this = ModP(value_ * o.value_);
    return *this = ModP(reduce(value_, p) * reduce(o.value_, p), p);
  }
  ModP& operator/=(const ModP& o) {
    const std::uint32_t p = common(o);
    if (p == 0) return *this *= o.inverse();
    return *this *= ModP(o.value_, p).inverse();
  }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) {
    const std::uint32_t p = a.modulus_ ? a.modulus_ : b.modulus_;
    if (p == 0) return a.value_ == b.value_;
    return reduce(a.value_, p) == reduce(b.value_, p);
  }
  friend std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.value_; }

 private:
  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }
  std::uint32_t common(const ModP& o) const {
    if (modulus_ && o.modulus_ && modulus_ != o.modulus_) {
      throw DomainError("mixed moduli " + std::to_string(modulus_) + " and " + std::to_string(o.modulus_));
    }
    return modulus_ ? modulus_ : o.modulus_;
  }
  ModP combine(const ModP& o, std::int64_t raw) const {
    const std::uint32_t p = common(o);
    return p == 0 ? ModP(raw) : ModP(raw, p);
  }

  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

}  // namespace frobent

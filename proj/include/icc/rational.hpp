#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "icc/errors.hpp"

namespace icc {

// Small exact rational on 64-bit integers, always stored reduced with a
// positive denominator. Used for majority levels (alpha) and exact
// probabilities, where numerators and denominators stay modest; comparisons
// cross-multiply in 128-bit so no intermediate can overflow.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    reduce();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p/q", an integer, or a plain decimal such as "0.55" (parsed as
  // digits over a power of ten, exactly).
  static Rational parse(const std::string& text);

 private:
  void reduce() {
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

// Majority level in [0, 1]. The test "count >= alpha * n" is always carried
// out as the exact integer comparison count * den >= num * n.
class Alpha {
 public:
  Alpha() : value_(0, 1) {}
  explicit Alpha(Rational value) : value_(value) {
    if (value_ < Rational(0, 1) || value_ > Rational(1, 1))
      throw Error::invalid_argument("alpha must lie in [0, 1], got " + value_.str());
  }
  Alpha(std::int64_t num, std::int64_t den) : Alpha(Rational(num, den)) {}

  const Rational& value() const { return value_; }
  std::int64_t num() const { return value_.num(); }
  std::int64_t den() const { return value_.den(); }

  // count >= alpha * n, exactly.
  bool meets(std::int64_t count, std::int64_t n) const {
    return static_cast<__int128>(count) * value_.den() >= static_cast<__int128>(value_.num()) * n;
  }

  std::string str() const { return value_.str(); }
  double to_double() const { return value_.to_double(); }

  static Alpha parse(const std::string& text) { return Alpha(Rational::parse(text)); }

 private:
  Rational value_;
};

}  // namespace icc

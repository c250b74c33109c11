#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "spg/errors.hpp"

namespace spg {

// Exact nonnegative fraction used for every threshold (eps, alpha, beta,
// gamma). All comparisons against integer-scaled quantities go through
// 128-bit products, so "deg <= eps*|S|" is decided exactly.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0 || num_ < 0) {
      throw ParameterError("rational must be nonnegative with positive denominator: " +
                           std::to_string(num) + "/" + std::to_string(den));
    }
    reduce();
  }

  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        return Rational(std::stoll(text), 1);
      }
      return Rational(std::stoll(text.substr(0, slash)),
                      std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw ParameterError("cannot parse rational: '" + text + "'");
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // count <= this * scale, exactly.
  bool le_scaled(std::int64_t count, std::int64_t scale) const {
    return static_cast<__int128>(count) * den_ <= static_cast<__int128>(num_) * scale;
  }
  // count >= this * scale, exactly.
  bool ge_scaled(std::int64_t count, std::int64_t scale) const {
    return static_cast<__int128>(count) * den_ >= static_cast<__int128>(num_) * scale;
  }
  bool lt_scaled(std::int64_t count, std::int64_t scale) const {
    return !ge_scaled(count, scale);
  }
  bool gt_scaled(std::int64_t count, std::int64_t scale) const {
    return !le_scaled(count, scale);
  }

  // ceil(this * n).
  std::int64_t ceil_mul(std::int64_t n) const {
    __int128 p = static_cast<__int128>(num_) * n;
    return static_cast<std::int64_t>((p + den_ - 1) / den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <= static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  // this / k.
  Rational div_int(std::int64_t k) const {
    auto d = checked_mul(den_, k);
    if (!d) throw ParameterError("rational denominator overflow dividing " + str());
    return Rational(num_, *d);
  }

  Rational times(const Rational& o) const {
    auto n = checked_mul(num_, o.num_);
    auto d = checked_mul(den_, o.den_);
    if (!n || !d) throw ParameterError("rational product overflow: " + str() + " * " + o.str());
    return Rational(*n, *d);
  }

  // this^e, or nullopt on int64 overflow.
  static std::optional<Rational> pow(const Rational& base, int e) {
    std::int64_t n = 1, d = 1;
    for (int i = 0; i < e; ++i) {
      auto nn = checked_mul(n, base.num_);
      auto dd = checked_mul(d, base.den_);
      if (!nn || !dd) return std::nullopt;
      n = *nn;
      d = *dd;
    }
    return Rational(n, d);
  }

  // floor((1/this)^e) for 0 < this <= 1, or nullopt on overflow.
  std::optional<std::int64_t> inverse_pow_floor(int e) const {
    if (num_ == 0) throw ParameterError("inverse of zero rational");
    std::int64_t n = 1, d = 1;
    for (int i = 0; i < e; ++i) {
      auto nn = checked_mul(n, den_);
      auto dd = checked_mul(d, num_);
      if (!nn || !dd) return std::nullopt;
      n = *nn;
      d = *dd;
    }
    return n / d;
  }

 private:
  void reduce() {
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  static std::optional<std::int64_t> checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) return std::nullopt;
    return static_cast<std::int64_t>(p);
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace spg

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dyadic {

/// Exact signed dyadic rational m * 2^e with an arbitrary-precision mantissa.
///
/// Normalised so that the mantissa is odd (or zero with e = 0), which makes
/// equality structural. Every binary64 value is representable, so doubles
/// convert in and out without loss as long as they stay in range.
class Dyadic {
 public:
  using Int = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(long long value);  // NOLINT(google-explicit-constructor)
  Dyadic(Int mantissa, std::int64_t exponent);

  static Dyadic pow2(std::int64_t exponent);
  /// Exact conversion; throws ParseError for NaN or infinity.
  static Dyadic from_double(double value);
  /// Accepts "n/2^q", "-n/2^q" or a plain integer.
  static Dyadic parse(std::string_view text);

  const Int& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return mantissa_.is_zero(); }
  int sign() const { return mantissa_.sign(); }

  /// Nearest binary64 (exact whenever the value is a double).
  double to_double() const;
  /// Canonical "n/2^q" with q >= 0; n odd unless q = 0.
  std::string str() const;

  /// Multiply by 2^shift exactly.
  Dyadic ldexp(std::int64_t shift) const;
  Dyadic abs() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }
  Dyadic& operator-=(const Dyadic& other) { return *this = *this - other; }
  Dyadic& operator*=(const Dyadic& other) { return *this = *this * other; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  Int mantissa_{0};
  std::int64_t exponent_ = 0;
};

}  // namespace dyadic

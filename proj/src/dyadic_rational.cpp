#include "dyadic/dyadic_rational.hpp"

#include "dyadic/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace dyadic {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(long long value) : mantissa_(value) { normalize(); }

Dyadic::Dyadic(Int mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const auto low = static_cast<std::int64_t>(mp::lsb(mp::abs(mantissa_)));
  if (low > 0) {
    mantissa_ >>= low;
    exponent_ += low;
  }
}

Dyadic Dyadic::pow2(std::int64_t exponent) { return Dyadic(Int(1), exponent); }

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite value has no dyadic form");
  if (value == 0.0) return {};
  int exp = 0;
  const double frac = std::frexp(value, &exp);  // |frac| in [0.5, 1)
  const auto scaled = static_cast<long long>(std::ldexp(frac, 53));
  return Dyadic(Int(scaled), static_cast<std::int64_t>(exp) - 53);
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto fail = [&] { return ParseError("malformed dyadic value: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  bool negative = false;
  if (text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text;
  std::int64_t scale = 0;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (den.size() < 3 || den.substr(0, 2) != "2^") throw fail();
    den.remove_prefix(2);
    const auto [ptr, ec] = std::from_chars(den.data(), den.data() + den.size(), scale);
    if (ec != std::errc{} || ptr != den.data() + den.size() || scale < 0) throw fail();
  }
  if (num.empty()) throw fail();
  for (const char c : num) {
    if (c < '0' || c > '9') throw fail();
  }
  Int mantissa{std::string(num)};
  if (negative) mantissa = -mantissa;
  return Dyadic(std::move(mantissa), -scale);
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  Int m = mantissa_;
  std::int64_t e = exponent_;
  const auto bits = static_cast<std::int64_t>(mp::msb(mp::abs(m)));
  if (bits > 512) {
    m >>= (bits - 512);
    e += bits - 512;
  }
  if (e > std::numeric_limits<int>::max()) return m.sign() * std::numeric_limits<double>::infinity();
  if (e < std::numeric_limits<int>::min()) return 0.0;
  return std::ldexp(m.convert_to<double>(), static_cast<int>(e));
}

std::string Dyadic::str() const {
  if (exponent_ >= 0) {
    const Int whole = mantissa_ << exponent_;
    return whole.str() + "/2^0";
  }
  return mantissa_.str() + "/2^" + std::to_string(-exponent_);
}

Dyadic Dyadic::ldexp(std::int64_t shift) const {
  if (is_zero()) return {};
  Dyadic out = *this;
  out.exponent_ += shift;
  return out;
}

Dyadic Dyadic::abs() const {
  Dyadic out = *this;
  if (out.mantissa_.sign() < 0) out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.mantissa_ = -out.mantissa_;
  return out;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  Dyadic::Int sum = (a.mantissa_ << (a.exponent_ - e)) + (b.mantissa_ << (b.exponent_ - e));
  return Dyadic(std::move(sum), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace dyadic

#include "dyadic/core.hpp"

#include "dyadic/errors.hpp"

#include <bit>
#include <charconv>
#include <cmath>

namespace dyadic {

namespace {

using u128 = unsigned __int128;

int bit_width128(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(v));
}

std::uint64_t checked_shift_left(std::uint64_t value, std::int64_t shift) {
  if (value == 0) return 0;
  if (shift >= 64 || std::bit_width(value) + shift > 64) {
    throw OverflowError("dyadic position exceeds 64 bits");
  }
  return value << shift;
}

}  // namespace

DyadicPoint::DyadicPoint(std::uint64_t numerator, unsigned scale) : numerator_(numerator), scale_(scale) {
  if (numerator_ == 0) {
    scale_ = 0;
  } else {
    const auto tz = static_cast<unsigned>(std::countr_zero(numerator_));
    const unsigned drop = tz < scale_ ? tz : scale_;
    numerator_ >>= drop;
    scale_ -= drop;
  }
  if (scale_ > kMaxScale) throw OverflowError("dyadic point scale exceeds 2^-" + std::to_string(kMaxScale));
}

DyadicPoint DyadicPoint::parse(std::string_view text) {
  const auto fail = [&] { return ParseError("malformed dyadic point: '" + std::string(text) + "'"); };
  std::string_view num = text;
  unsigned scale = 0;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (den.size() < 3 || den.substr(0, 2) != "2^") throw fail();
    den.remove_prefix(2);
    const auto [ptr, ec] = std::from_chars(den.data(), den.data() + den.size(), scale);
    if (ec != std::errc{} || ptr != den.data() + den.size()) throw fail();
  }
  std::uint64_t n = 0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size()) throw fail();
  return {n, scale};
}

double DyadicPoint::to_double() const {
  return std::ldexp(static_cast<double>(numerator_), -static_cast<int>(scale_));
}

std::string DyadicPoint::str() const { return std::to_string(numerator_) + "/2^" + std::to_string(scale_); }

DyadicPoint DyadicPoint::doubled() const {
  if (scale_ > 0) return {numerator_, scale_ - 1};
  return {checked_shift_left(numerator_, 1), 0};
}

DyadicPoint DyadicPoint::halved() const { return {numerator_, scale_ + 1}; }

std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b) {
  const u128 lhs = static_cast<u128>(a.numerator_) << b.scale_;
  const u128 rhs = static_cast<u128>(b.numerator_) << a.scale_;
  return lhs <=> rhs;
}

double DyadicInterval::measure_double() const { return std::ldexp(1.0, static_cast<int>(-level)); }

DyadicPoint DyadicInterval::left() const {
  if (level >= 0) {
    if (level > static_cast<std::int64_t>(DyadicPoint::kMaxScale)) {
      if (position == 0) return {};
      throw OverflowError("interval endpoint finer than the supported scale");
    }
    return {position, static_cast<unsigned>(level)};
  }
  return {checked_shift_left(position, -level), 0};
}

bool DyadicInterval::contains(const DyadicPoint& x) const { return cell_at(x, level).position == position; }

DyadicInterval DyadicInterval::left_half() const { return {level + 1, checked_shift_left(position, 1)}; }

DyadicInterval DyadicInterval::right_half() const { return {level + 1, checked_shift_left(position, 1) | 1U}; }

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.level < level) return false;
  const std::int64_t gap = other.level - level;
  const std::uint64_t up = gap >= 64 ? 0 : other.position >> gap;
  return up == position;
}

DyadicInterval cell_at(const DyadicPoint& x, std::int64_t level) {
  const std::int64_t shift = level - static_cast<std::int64_t>(x.scale());
  if (shift >= 0) return {level, checked_shift_left(x.numerator(), shift)};
  const std::int64_t down = -shift;
  return {level, down >= 64 ? 0 : x.numerator() >> down};
}

DyadicInterval ancestor(const DyadicInterval& interval, std::int64_t generations) {
  if (generations < 1) throw Error("ancestor generation must be >= 1");
  return {interval.level - generations, generations >= 64 ? 0 : interval.position >> generations};
}

DyadicInterval dilate(const DyadicInterval& interval, std::int64_t power) {
  return {interval.level - power, interval.position};
}

DyadicInterval min_common_interval(const DyadicPoint& x, const DyadicPoint& y) {
  if (x == y) throw EqualPoints();
  const unsigned q = x.scale() > y.scale() ? x.scale() : y.scale();
  const u128 a = static_cast<u128>(x.numerator()) << (q - x.scale());
  const u128 b = static_cast<u128>(y.numerator()) << (q - y.scale());
  const int t = bit_width128(a ^ b);
  const u128 pos = a >> t;
  if (pos >> 64) throw OverflowError("common interval position exceeds 64 bits");
  return {static_cast<std::int64_t>(q) - t, static_cast<std::uint64_t>(pos)};
}

DyadicInterval min_common_interval(std::int64_t level, std::uint64_t cell_a, std::uint64_t cell_b) {
  if (cell_a == cell_b) throw EqualPoints();
  const int t = std::bit_width(cell_a ^ cell_b);
  return {level - t, t >= 64 ? 0 : cell_a >> t};
}

Dyadic delta(const DyadicPoint& x, const DyadicPoint& y) {
  if (x == y) return {};
  return min_common_interval(x, y).measure();
}

ButterflyClass classify(const DyadicPoint& x, const DyadicPoint& y) {
  const auto common = min_common_interval(x, y);
  return {common.position, common.level};
}

}  // namespace dyadic

#include "mms/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace mms {

namespace {

auto gcd_wide(__int128 a, __int128 b) -> __int128 {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

auto fits(__int128 v) -> bool {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

auto parse_int(std::string_view text) -> std::int64_t {
  std::int64_t value = 0;
  auto const* first = text.data();
  auto const* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("malformed rational component '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

auto Rational::from_wide(__int128 num, __int128 den) -> Rational {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  auto g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

auto Rational::operator+=(Rational const& rhs) -> Rational& {
  if (den_ == 1 && rhs.den_ == 1) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(num_, rhs.num_, &out)) throw overflow_error("rational arithmetic overflow");
    num_ = out;
    return *this;
  }
  __int128 n = static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * rhs.den_;
  return *this = from_wide(n, d);
}

auto Rational::operator-=(Rational const& rhs) -> Rational& { return *this += -rhs; }

auto Rational::operator*=(Rational const& rhs) -> Rational& {
  __int128 n = static_cast<__int128>(num_) * rhs.num_;
  __int128 d = static_cast<__int128>(den_) * rhs.den_;
  return *this = from_wide(n, d);
}

auto Rational::operator/=(Rational const& rhs) -> Rational& {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  __int128 n = static_cast<__int128>(num_) * rhs.den_;
  __int128 d = static_cast<__int128>(den_) * rhs.num_;
  return *this = from_wide(n, d);
}

auto Rational::operator-() const -> Rational {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw overflow_error("rational arithmetic overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

auto operator<=>(Rational const& lhs, Rational const& rhs) noexcept -> std::strong_ordering {
  if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
  __int128 a = static_cast<__int128>(lhs.num_) * rhs.den_;
  __int128 b = static_cast<__int128>(rhs.num_) * lhs.den_;
  return a <=> b;
}

auto Rational::to_string() const -> std::string {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

auto Rational::parse(std::string_view text) -> Rational {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  auto num = parse_int(trim(text.substr(0, slash)));
  auto den = parse_int(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("rational '" + std::string(text) + "' has zero denominator");
  return {num, den};
}

auto operator<<(std::ostream& os, Rational const& r) -> std::ostream& { return os << r.to_string(); }

}  // namespace mms

#ifndef MMS_RATIONAL_HPP_
#define MMS_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mms {

/// Thrown when an exact rational operation leaves the 64-bit range.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational number with 64-bit numerator and denominator.
///
/// The representation is always canonical: the denominator is positive and
/// gcd(|num|, den) == 1, so equality is plain field comparison. Every
/// operation checks for overflow through 128-bit intermediates and throws
/// mms::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit by design of arithmetic types
  Rational(std::int64_t num, std::int64_t den);

  [[nodiscard]] constexpr auto num() const noexcept -> std::int64_t { return num_; }
  [[nodiscard]] constexpr auto den() const noexcept -> std::int64_t { return den_; }
  [[nodiscard]] constexpr auto is_integer() const noexcept -> bool { return den_ == 1; }
  [[nodiscard]] constexpr auto sign() const noexcept -> int { return (num_ > 0) - (num_ < 0); }

  auto operator+=(Rational const& rhs) -> Rational&;
  auto operator-=(Rational const& rhs) -> Rational&;
  auto operator*=(Rational const& rhs) -> Rational&;
  auto operator/=(Rational const& rhs) -> Rational&;

  friend auto operator+(Rational lhs, Rational const& rhs) -> Rational { return lhs += rhs; }
  friend auto operator-(Rational lhs, Rational const& rhs) -> Rational { return lhs -= rhs; }
  friend auto operator*(Rational lhs, Rational const& rhs) -> Rational { return lhs *= rhs; }
  friend auto operator/(Rational lhs, Rational const& rhs) -> Rational { return lhs /= rhs; }
  auto operator-() const -> Rational;

  friend constexpr auto operator==(Rational const&, Rational const&) noexcept -> bool = default;
  friend auto operator<=>(Rational const& lhs, Rational const& rhs) noexcept -> std::strong_ordering;

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] auto to_string() const -> std::string;

  /// Parses "p", "-p", "p/q" or "-p/q" (q may carry the sign; the result is
  /// normalized). Throws std::invalid_argument on malformed text or q == 0.
  static auto parse(std::string_view text) -> Rational;

 private:
  static auto from_wide(__int128 num, __int128 den) -> Rational;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

auto operator<<(std::ostream& os, Rational const& r) -> std::ostream&;

}  // namespace mms

#endif  // MMS_RATIONAL_HPP_

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cotton {

/// Exact arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);              // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses "p", "p/q" or a plain decimal such as "-1.25" (converted exactly).
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }

  double to_double() const { return value_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Uniform scalar helpers so templated code can run over Rational or double.
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(double d) { return d == 0.0; }
inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(double d) { return (d > 0) - (d < 0); }
inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double d) { return d; }
inline Rational abs_value(const Rational& r) { return r.abs(); }
inline double abs_value(double d) { return d < 0 ? -d : d; }

template <class S>
S scalar_from(const Rational& r);
template <>
inline Rational scalar_from<Rational>(const Rational& r) { return r; }
template <>
inline double scalar_from<double>(const Rational& r) { return r.to_double(); }

/// True for the exact scalar backend.
template <class S>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

}  // namespace cotton

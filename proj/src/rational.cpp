#include "cotton/rational.hpp"

#include <cctype>
#include <ostream>

#include "cotton/errors.hpp"

namespace cotton {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long value) : value_(std::to_string(value)) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw PreconditionError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw PreconditionError("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    const mpz_class d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw InputError("malformed decimal literal '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const std::string digits = std::string(whole) + std::string(frac);
    value = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(body)) throw InputError("malformed number '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace cotton

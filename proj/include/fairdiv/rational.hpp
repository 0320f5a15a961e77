#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace fairdiv {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(unsigned long value) : q_(value) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on anything
  /// else, including decimal notation and a zero denominator.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string str() const;
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  /// Decimal rendering with `digits` significant digits.
  [[nodiscard]] std::string decimal(int digits = 6) const;

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_negative() const { return sgn(q_) < 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] std::string numerator_str() const { return q_.get_num().get_str(); }
  [[nodiscard]] std::string denominator_str() const { return q_.get_den().get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  [[nodiscard]] const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

/// Exact test of `coef * sqrt(n) >= rhs` for coef >= 0, without radicals.
bool times_sqrt_at_least(const Rational& coef, std::uint64_t n, const Rational& rhs);

/// Exact test of `coef * sqrt(n) <= rhs` for coef >= 0.
bool times_sqrt_at_most(const Rational& coef, std::uint64_t n, const Rational& rhs);

/// floor(sqrt(n)) for integers.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace fairdiv

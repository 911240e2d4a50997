#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace flg {

/// Exact rational number: arbitrary-precision numerator over a positive
/// arbitrary-precision denominator, always in lowest terms. Every coordinate,
/// cost and ratio in this library is one of these; there is no floating-point
/// code path, so zone borders, ties and audit verdicts are reproducible
/// bit for bit.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long value) : v_(value) {}  // NOLINT: implicit by design, numeric literals
  Rational(long num, long den);

  /// Parses "p/q" (q != 0, sign on the numerator only), a plain integer,
  /// or a decimal string such as "-1.03" (converted exactly, never rounded).
  /// Throws std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  /// Canonical text form: lowest terms, "p/q", or just "p" when q == 1.
  std::string str() const { return v_.get_str(); }

  /// Nearest double, for human-readable annotations only.
  double approx() const { return v_.get_d(); }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const;
  Rational abs() const;
  Rational half() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  static Rational midpoint(const Rational& a, const Rational& b);

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// |a - b|, the workhorse of every cost formula.
Rational abs_diff(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace flg

#include "flg/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace flg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(std::string_view text) {
  throw std::invalid_argument("invalid rational \"" + std::string(text) + "\"");
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(mpz_class(num), mpz_class(den));
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) parse_fail(text);
    mpz_class d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("invalid rational \"" + std::string(text) +
                                            "\": zero denominator");
    value = mpq_class(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) parse_fail(text);
    mpz_class num{std::string(whole) + std::string(frac), 10};
    mpz_class den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = mpq_class(num, den);
    value.canonicalize();
  } else {
    if (!all_digits(body)) parse_fail(text);
    value = mpq_class(mpz_class(std::string(body), 10));
  }

  if (negative) value = -value;
  return Rational(std::move(value));
}

Rational Rational::operator-() const {
  mpq_class r;
  mpq_neg(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::abs() const {
  mpq_class r;
  mpq_abs(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::half() const {
  mpq_class r = v_ / 2;
  return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
  return (a + b).half();
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational abs_diff(const Rational& a, const Rational& b) { return (a - b).abs(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace flg

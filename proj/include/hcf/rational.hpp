#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hcf {

using Rational = mpq_class;

// Parses "p/q", integers, and finite decimals ("0.125", "1e-3") exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational from_double(double x);  // exact binary value of x

// a/b in canonical form. mpq_class(a, b) leaves the fraction unreduced and
// comparisons on unreduced values are wrong.
inline Rational frac(const mpz_class& a, const mpz_class& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Rational pow_int(const Rational& base, std::int64_t e);
Rational floor_q(const Rational& q);
Rational ceil_q(const Rational& q);
Rational abs_q(const Rational& q);
Rational min_q(const Rational& a, const Rational& b);
Rational max_q(const Rational& a, const Rational& b);

// True when m is an integer that can be used as an exact exponent.
bool is_integral_exponent(double m);

// A quantity that always has a floating value and, when the computation stayed
// in rational arithmetic, also the exact value.
struct Value {
  double approx = 0.0;
  std::optional<Rational> exact;

  static Value of(const Rational& q);
  static Value of(double x);
  bool is_exact() const { return exact.has_value(); }
};

Value operator+(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
// r^m, exact when m is integral.
Value power(const Rational& r, double m);
Value power(const Value& r, double m);

// a <= b, exactly when both are exact, else with relative tolerance tau.
bool leq(const Value& a, const Value& b, double tau = 1e-9);
std::string to_string(const Value& v);

}  // namespace hcf

#include "hcf/rational.hpp"

#include <cmath>
#include <sstream>

#include "hcf/errors.hpp"

namespace hcf {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
      eneg = es[0] == '-';
      es = es.substr(1);
    }
    if (!all_digits(es) || es.size() > 6) throw InputError("bad exponent in number '" + text + "'");
    exp10 = std::stol(es) * (eneg ? -1 : 1);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    digits = s;
  } else {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw InputError("bad number '" + text + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("bad number '" + text + "'");
    digits = ip + fp;
    exp10 -= static_cast<long>(fp.size());
  }
  if (!all_digits(digits)) throw InputError("bad number '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class ten = 10;
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(exp10)));
  Rational q = exp10 >= 0 ? Rational(num * scale) : frac(num, scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw InputError("empty rational");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string a = trim(text.substr(0, slash)), b = trim(text.substr(slash + 1));
    std::string ad = (!a.empty() && (a[0] == '-' || a[0] == '+')) ? a.substr(1) : a;
    if (!all_digits(ad) || !all_digits(b)) throw InputError("bad rational '" + raw + "'");
    mpz_class den(b, 10);
    if (den == 0) throw InputError("zero denominator in '" + raw + "'");
    Rational q(mpz_class(ad, 10), den);
    q.canonicalize();
    return (a[0] == '-') ? Rational(-q) : q;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite number");
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational pow_int(const Rational& base, std::int64_t e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / base;
    return pow_int(inv, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational floor_q(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

Rational ceil_q(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }
Rational min_q(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max_q(const Rational& a, const Rational& b) { return a < b ? b : a; }

bool is_integral_exponent(double m) {
  return std::isfinite(m) && m == std::floor(m) && m >= 0 && m <= 4096;
}

Value Value::of(const Rational& q) { return Value{to_double(q), q}; }
Value Value::of(double x) { return Value{x, std::nullopt}; }

Value operator+(const Value& a, const Value& b) {
  Value r{a.approx + b.approx, std::nullopt};
  if (a.exact && b.exact) {
    r.exact = *a.exact + *b.exact;
    r.approx = to_double(*r.exact);
  }
  return r;
}

Value operator*(const Value& a, const Value& b) {
  Value r{a.approx * b.approx, std::nullopt};
  if (a.exact && b.exact) {
    r.exact = *a.exact * *b.exact;
    r.approx = to_double(*r.exact);
  }
  return r;
}

Value power(const Rational& r, double m) {
  if (is_integral_exponent(m)) return Value::of(pow_int(r, static_cast<std::int64_t>(m)));
  return Value::of(std::pow(to_double(r), m));
}

Value power(const Value& r, double m) {
  if (r.exact) return power(*r.exact, m);
  return Value::of(std::pow(r.approx, m));
}

bool leq(const Value& a, const Value& b, double tau) {
  if (a.exact && b.exact) return *a.exact <= *b.exact;
  double scale = std::max({1.0, std::fabs(a.approx), std::fabs(b.approx)});
  return a.approx <= b.approx + tau * scale;
}

std::string to_string(const Value& v) {
  if (v.exact) return to_string(*v.exact);
  std::ostringstream os;
  os.precision(17);
  os << v.approx;
  return os.str();
}

}  // namespace hcf

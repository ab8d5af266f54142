#include "rmt/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace rmt {

namespace {

using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw std::overflow_error(std::string("rational overflow in ") + what);
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) { n = -n; d = -d; }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len > 15) throw std::invalid_argument("decimal too long for exact rational: " + s);
    long long n = std::stoll(digits);
    long long d = 1;
    for (size_t i = 0; i < frac_len; ++i) d *= 10;
    return Rational(n, d);
  }
  return Rational(std::stoll(s));
}

long long Rational::floor_ll() const {
  long long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor_ll()); }

Rational Rational::operator+(const Rational& o) const {
  i128 n = i128(num) * o.den + i128(o.num) * den;
  i128 d = i128(den) * o.den;
  return Rational(checked_ll(n, "+"), checked_ll(d, "+"));
}

Rational Rational::operator-(const Rational& o) const {
  i128 n = i128(num) * o.den - i128(o.num) * den;
  i128 d = i128(den) * o.den;
  return Rational(checked_ll(n, "-"), checked_ll(d, "-"));
}

Rational Rational::operator*(const Rational& o) const {
  long long g1 = std::gcd(num < 0 ? -num : num, o.den);
  long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
  i128 n = i128(num / (g1 ? g1 : 1)) * (o.num / (g2 ? g2 : 1));
  i128 d = i128(den / (g2 ? g2 : 1)) * (o.den / (g1 ? g1 : 1));
  return Rational(checked_ll(n, "*"), checked_ll(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("rational division by zero");
  return *this * Rational(o.den, o.num);
}

bool Rational::operator<(const Rational& o) const {
  return i128(num) * o.den < i128(o.num) * den;
}

Rational Rational::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative rational power");
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace rmt

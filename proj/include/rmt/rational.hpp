#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmt {

// Exact rational on 64-bit words with __int128 intermediates.
// Used for aspect ratios y (so floor(y) and y - floor(y) are exact) and for
// closed-form moment values.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  // Accepts "3", "-2", "1/2", "0.25".
  static Rational parse(const std::string& s);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  long long floor_ll() const;
  Rational frac() const;  // x - floor(x), in [0,1)

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;

  Rational pow(int e) const;  // e >= 0
  std::string str() const;
};

}  // namespace rmt

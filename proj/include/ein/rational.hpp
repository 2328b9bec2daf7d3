#pragma once

#include <numeric>
#include <string>

#include "ein/types.hpp"

namespace ein {

struct Rational {
  long num = 0, den = 1;

  Rational() = default;
  Rational(long n, long d) : num(n), den(d) {
    if (d == 0) throw UsageError("rational with zero denominator");
    if (den < 0) num = -num, den = -den;
    long g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// "m/n" or an integer; floats are rejected
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  auto to_long = [&](const std::string& x) {
    if (x.empty() || x.find_first_not_of("+-0123456789") != std::string::npos)
      throw UsageError("not a rational m/n: " + s);
    return std::stol(x);
  };
  if (slash == std::string::npos) return {to_long(s), 1};
  return {to_long(s.substr(0, slash)), to_long(s.substr(slash + 1))};
}

}  // namespace ein

#include "hx/bigint.hpp"

#include "hx/error.hpp"

namespace hx {

BigInt binomial_big(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

BigInt factorial_big(std::uint64_t n) {
  BigInt acc = 1;
  for (std::uint64_t i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
  BigInt acc = 1;
  BigInt b = base;
  while (exponent > 0) {
    if ((exponent & 1U) != 0) acc *= b;
    b *= b;
    exponent >>= 1;
  }
  return acc;
}

std::string to_fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      const BigInt num(text.substr(0, slash));
      const BigInt den(text.substr(slash + 1));
      require(den != 0, ErrorKind::BadParameters, "zero denominator in " + text);
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      const std::size_t decimals = text.size() - dot - 1;
      return Rational(BigInt(digits.empty() ? "0" : digits), pow_big(10, decimals));
    }
    return Rational(BigInt(text));
  } catch (const hx::Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::BadParameters, "not a rational number: " + text);
  }
}

}  // namespace hx

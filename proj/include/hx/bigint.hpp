#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial_big(std::uint64_t n, std::uint64_t k);
BigInt factorial_big(std::uint64_t n);
BigInt pow_big(const BigInt& base, std::uint64_t exponent);

/// "p/q" in lowest terms ("p" when q == 1).
std::string to_fraction_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace hx

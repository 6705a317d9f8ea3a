#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace repzeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt ipow(const BigInt& base, unsigned exp);
BigInt ipow(std::uint64_t base, unsigned exp);
Rational rpow(const Rational& base, long exp);

// Natural log of a positive integer of any size.
double log_big(const BigInt& x);
double to_double(const BigInt& x);
double to_double(const Rational& x);
long double to_long_double(const BigInt& x);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

BigInt factorial(unsigned n);
BigInt binomial(const BigInt& n, unsigned k);

// Largest value of the form round-down(x^(1/k)).
BigInt iroot(const BigInt& x, unsigned k);

bool fits_u64(const BigInt& x);

}  // namespace repzeta

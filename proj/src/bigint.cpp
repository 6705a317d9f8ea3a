#include "repzeta/bigint.hpp"
#include "repzeta/errors.hpp"

#include <cmath>
#include <limits>

namespace repzeta {

BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

BigInt ipow(std::uint64_t base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

Rational rpow(const Rational& base, long exp) {
    if (exp >= 0) {
        Rational r(boost::multiprecision::pow(numerator(base), static_cast<unsigned>(exp)),
                   boost::multiprecision::pow(denominator(base), static_cast<unsigned>(exp)));
        return r;
    }
    if (base == 0) throw DomainError("zero to a negative power");
    return Rational(1) / rpow(base, -exp);
}

double log_big(const BigInt& x) {
    if (x <= 0) throw DomainError("log of non-positive integer");
    std::size_t bits = boost::multiprecision::msb(x);
    if (bits < 960) return std::log(x.convert_to<double>());
    std::size_t shift = bits - 64;
    BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

double to_double(const Rational& x) {
    const BigInt& n = numerator(x);
    const BigInt& d = denominator(x);
    if (n == 0) return 0.0;
    std::size_t nb = boost::multiprecision::msb(n < 0 ? BigInt(-n) : n);
    std::size_t db = boost::multiprecision::msb(d);
    if (nb < 900 && db < 900) return n.convert_to<double>() / d.convert_to<double>();
    // Scale both to keep 64 significant bits.
    long shift_n = static_cast<long>(nb) - 64;
    long shift_d = static_cast<long>(db) - 64;
    BigInt nn = shift_n > 0 ? BigInt(n >> shift_n) : n;
    BigInt dd = shift_d > 0 ? BigInt(d >> shift_d) : d;
    long sn = shift_n > 0 ? shift_n : 0;
    long sd = shift_d > 0 ? shift_d : 0;
    return std::ldexp(nn.convert_to<double>() / dd.convert_to<double>(), static_cast<int>(sn - sd));
}

long double to_long_double(const BigInt& x) { return x.convert_to<long double>(); }

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt n(text.substr(0, slash));
        BigInt d(text.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw ParseError("not a rational number: '" + text + "'");
    }
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(const BigInt& n, unsigned k) {
    if (n < k) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

BigInt iroot(const BigInt& x, unsigned k) {
    if (x < 0) throw DomainError("iroot of negative value");
    if (x < 2 || k == 1) return x;
    std::size_t bits = boost::multiprecision::msb(x) + 1;
    BigInt lo = 1;
    BigInt hi = BigInt(1) << (bits / k + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, k) <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

bool fits_u64(const BigInt& x) {
    return x >= 0 && x <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

}  // namespace repzeta

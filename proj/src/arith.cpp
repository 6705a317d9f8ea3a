#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace repzeta {

namespace {

const std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kSmallPrimes) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kSmallPrimes) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

const std::vector<std::uint64_t>& trial_primes() {
    static const std::vector<std::uint64_t> primes = primes_up_to(1000);
    return primes;
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i <= limit / i) {
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    return out;
}

std::vector<PrimePower> sieve_prime_powers(std::uint64_t limit) {
    if (limit < 2) throw DomainError("sieve_prime_powers: limit must be at least 2");
    std::vector<PrimePower> out;
    for (std::uint64_t p : primes_up_to(limit)) {
        std::uint64_t q = p;
        unsigned k = 1;
        while (true) {
            out.push_back({q, p, k});
            if (q > limit / p) break;
            q *= p;
            ++k;
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
    return out;
}

bool is_prime(std::uint64_t n) { return miller_rabin_u64(n); }

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return miller_rabin_u64(n.convert_to<std::uint64_t>());
    for (std::uint64_t p : trial_primes()) {
        if (n % p == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 32);
}

std::optional<std::pair<BigInt, unsigned>> as_prime_power(const BigInt& n) {
    if (n < 2) return std::nullopt;
    for (std::uint64_t p : trial_primes()) {
        if (n % p == 0) {
            BigInt m = n;
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            if (m == 1) return std::make_pair(BigInt(p), k);
            return std::nullopt;
        }
    }
    // No factor below 1000, so any root has at least 10 bits.
    unsigned max_k = static_cast<unsigned>(boost::multiprecision::msb(n) / 9) + 1;
    for (unsigned k = max_k; k >= 2; --k) {
        BigInt r = iroot(n, k);
        if (boost::multiprecision::pow(r, k) == n) {
            if (is_prime(r)) return std::make_pair(r, k);
            return std::nullopt;
        }
    }
    if (is_prime(n)) return std::make_pair(n, 1u);
    return std::nullopt;
}

std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n) {
    auto r = as_prime_power(BigInt(n));
    if (!r) return std::nullopt;
    return std::make_pair(r->first.convert_to<std::uint64_t>(), r->second);
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    if (n < 2) return out;
    for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t p_part(std::uint64_t p, std::uint64_t m) {
    if (p < 2) throw DomainError("p_part: p must be prime");
    if (m == 0) return 0;
    std::uint64_t r = 1;
    while (m % p == 0) {
        m /= p;
        r *= p;
    }
    return r;
}

BigInt p_part(std::uint64_t p, const BigInt& m) {
    if (p < 2) throw DomainError("p_part: p must be prime");
    if (m == 0) return 0;
    BigInt x = m < 0 ? BigInt(-m) : m;
    BigInt r = 1;
    while (x % p == 0) {
        x /= p;
        r *= p;
    }
    return r;
}

unsigned p_adic_valuation(std::uint64_t p, const BigInt& m) {
    if (m == 0) throw DomainError("valuation of zero");
    BigInt x = m < 0 ? BigInt(-m) : m;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

int moebius(std::uint64_t n) {
    if (n == 0) throw DomainError("moebius(0)");
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (m == 0) throw DomainError("multiplicative_order: modulus must be positive");
    if (m == 1) return 1;
    if (std::gcd(a % m, m) != 1) throw NotAUnitError("multiplicative_order: a is not a unit mod m");
    // Order divides the Carmichael-type exponent phi(m); reduce over its prime factors.
    std::uint64_t phi = m;
    for (auto [p, e] : factorize(m)) phi = phi / p * (p - 1);
    std::uint64_t ord = phi;
    for (auto [p, e] : factorize(phi)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

BigInt least_prime_power_congruent(const BigInt& d, int sign, std::optional<BigInt> ceiling) {
    if (d < 1) throw ParameterError("d", "modulus must be positive");
    if (sign != 1 && sign != -1) throw ParameterError("sign", "must be +1 or -1");
    BigInt limit = ceiling ? *ceiling : boost::multiprecision::pow(d, 6);
    if (!ceiling && limit < 2) limit = 2;
    BigInt residue = sign == 1 ? BigInt(1 % d) : BigInt((d - 1) % d);
    BigInt q = residue;
    while (q < 2) q += d;
    if (d == 1) q = 2;
    for (; q <= limit; q += d) {
        if (as_prime_power(q)) return q;
    }
    throw SearchCeilingExceeded(limit);
}

std::vector<KPrimeRow> kprime_profile(std::uint64_t p, unsigned k_max) {
    if (!is_prime(p)) throw ParameterError("p", "must be prime");
    if (k_max < 1) throw ParameterError("k_max", "must be at least 1");
    std::vector<KPrimeRow> rows;
    double inf = std::numeric_limits<double>::infinity();
    double lp = std::log(static_cast<double>(p));
    for (unsigned k = 1; k <= k_max; ++k) {
        BigInt pk = ipow(p, k);
        BigInt q = least_prime_power_congruent(pk, 1);
        double v = log_big(q) / ((k + 1.0 / static_cast<double>(p - 1)) * lp);
        inf = std::min(inf, v);
        rows.push_back({k, q, v, inf});
    }
    return rows;
}

std::vector<KRow> k_profile(std::uint64_t p, unsigned k_max) {
    if (!is_prime(p)) throw ParameterError("p", "must be prime");
    if (k_max < 1) throw ParameterError("k_max", "must be at least 1");
    std::vector<KRow> rows;
    double lp = std::log(static_cast<double>(p));
    for (unsigned k = 1; k <= k_max; ++k) {
        BigInt q = least_prime_power_congruent(ipow(p, k), 1);
        rows.push_back({k, q, log_big(q) / (k * lp)});
    }
    return rows;
}

namespace {

const nlohmann::json& require(const nlohmann::json& params, const char* field) {
    if (!params.is_object() || !params.contains(field)) throw ParameterError(field, "missing");
    return params.at(field);
}

double param_real(const nlohmann::json& params, const char* field) {
    const auto& v = require(params, field);
    if (!v.is_number()) throw ParameterError(field, "must be a number");
    return v.get<double>();
}

BigInt param_int(const nlohmann::json& params, const char* field, long min_value) {
    const auto& v = require(params, field);
    BigInt out;
    if (v.is_number_integer()) {
        out = BigInt(v.get<long long>());
    } else if (v.is_string()) {
        try {
            out = BigInt(v.get<std::string>());
        } catch (const std::exception&) {
            throw ParameterError(field, "not an integer");
        }
    } else {
        throw ParameterError(field, "must be an integer");
    }
    if (out < min_value) throw ParameterError(field, "must be at least " + std::to_string(min_value));
    return out;
}

unsigned param_uint(const nlohmann::json& params, const char* field, long min_value) {
    BigInt v = param_int(params, field, min_value);
    if (v > 1000000) throw ParameterError(field, "out of range");
    return v.convert_to<unsigned>();
}

unsigned param_uint_or(const nlohmann::json& params, const char* field, unsigned fallback, long min_value) {
    if (!params.is_object() || !params.contains(field)) return fallback;
    return param_uint(params, field, min_value);
}

BigInt param_prime_power(const nlohmann::json& params, const char* field) {
    BigInt q = param_int(params, field, 2);
    if (!as_prime_power(q)) throw ParameterError(field, "must be a prime power");
    return q;
}

double log_factorial(unsigned n) { return log_big(factorial(n)); }

double rho(unsigned c0, std::uint64_t p, unsigned k) {
    // prod_{i=1}^{c0} (1 - p^{-ik}) kept exact until the final log.
    Rational prod = 1;
    for (unsigned i = 1; i <= c0; ++i) {
        BigInt pik = ipow(p, i * k);
        prod *= Rational(pik - 1, pik);
    }
    double log_term = std::log(static_cast<double>(k)) + std::log(to_double(prod));
    double lq = k * std::log(static_cast<double>(p));
    return ((c0 - 1.0) * log_term + log_factorial(c0)) / (c0 * (c0 - 1.0) * lq);
}

}  // namespace

std::vector<std::string> named_constant_ids() {
    return {"c_nil",         "c_sol",          "K_minus",       "K_prime_profile",
            "K_profile",     "alt_formation",  "sigma_formation_rho", "g_alpha",
            "sl2pf_cf",      "general_lower_bound", "wreath_lower_bound", "image_count_bound",
            "sylow_gl_order"};
}

ConstantValue named_constant(std::string_view id, const nlohmann::json& params) {
    ConstantValue out;
    out.id = std::string(id);
    const double l2 = std::log(2.0);
    const double l3 = std::log(3.0);
    if (id == "c_nil") {
        out.value = 5 * l2 / (2 * l3);
    } else if (id == "c_sol") {
        out.value = 2.0 / 3.0 + 5 * l2 / (2 * l3);
    } else if (id == "K_minus") {
        out.value = 2 * l3 / (5 * l2);
    } else if (id == "K_prime_profile") {
        auto p = param_int(params, "p", 2).convert_to<std::uint64_t>();
        unsigned k_max = param_uint_or(params, "k_max", 12, 1);
        out.profile = kprime_profile(p, k_max);
        out.value = out.profile.back().running_inf;
    } else if (id == "K_profile") {
        auto p = param_int(params, "p", 2).convert_to<std::uint64_t>();
        unsigned k_max = param_uint_or(params, "k_max", 12, 1);
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& row : k_profile(p, k_max)) {
            inf = std::min(inf, row.value);
            out.profile.push_back({row.k, row.pp_min, row.value, inf});
        }
        out.value = inf;
    } else if (id == "alt_formation") {
        unsigned c0 = param_uint(params, "c0", 5);
        unsigned r = param_uint(params, "r", 1);
        unsigned delta = (c0 % 2 == 1) ? 1 : 2;
        double log2_fact = log_factorial(c0) / l2;
        out.value = c0 * log2_fact / ((c0 - delta) * (c0 - 1.0)) * (r - 1.0) + 1.0;
    } else if (id == "sigma_formation_rho") {
        unsigned c0 = param_uint(params, "c0", 2);
        std::uint64_t p = param_uint_or(params, "p", 2, 2);
        if (!is_prime(p)) throw ParameterError("p", "must be prime");
        unsigned k = param_uint_or(params, "k", 1, 1);
        out.value = rho(c0, p, k);
        if (params.contains("r")) {
            unsigned r = param_uint(params, "r", 1);
            out.extras["abscissa"] = (c0 + rho(c0, 2, 1)) * (r - 1.0) + 1.0;
        }
    } else if (id == "g_alpha") {
        double alpha = param_real(params, "alpha");
        if (!(alpha > 0)) throw ParameterError("alpha", "must be positive");
        out.value = alpha / 2 + 1;
    } else if (id == "sl2pf_cf") {
        BigInt f = param_int(params, "f", 5);
        if (!is_prime(f)) throw ParameterError("f", "must be a prime at least 5");
        Rational v = Rational(3, 2) - Rational(f - 1, 4 * f);
        out.exact = v;
        out.value = to_double(v);
    } else if (id == "general_lower_bound") {
        BigInt s = param_int(params, "S_order", 2);
        unsigned n0 = param_uint(params, "n0", 1);
        BigInt q = param_prime_power(params, "q");
        unsigned r = param_uint(params, "r", 1);
        out.value = log_big(s) / (n0 * log_big(q)) * (r - 1.0) + 1.0;
    } else if (id == "wreath_lower_bound") {
        BigInt s = param_int(params, "S_order", 2);
        BigInt t = param_int(params, "T_order", 1);
        unsigned d = param_uint(params, "d", 2);
        unsigned n0 = param_uint(params, "n0", 1);
        BigInt q = param_prime_power(params, "q");
        unsigned r = param_uint(params, "r", 1);
        double num = (d - 1.0) * log_big(s) + log_big(t);
        out.value = num / ((d - 1.0) * n0 * log_big(q)) * (r - 1.0) + 1.0;
    } else if (id == "image_count_bound") {
        BigInt order = param_int(params, "order", 1);
        unsigned r = param_uint(params, "r", 1);
        BigInt q = param_prime_power(params, "q");
        BigInt v = image_count_upper_bound(order, r, q);
        out.exact = Rational(v);
        out.value = to_double(v);
    } else if (id == "sylow_gl_order") {
        std::uint64_t p = param_int(params, "p", 2).convert_to<std::uint64_t>();
        unsigned n = param_uint(params, "n", 1);
        BigInt q = param_prime_power(params, "q");
        SylowOrder s = sylow_gl_order(p, n, q);
        out.exact = Rational(s.value);
        out.value = to_double(s.value);
        out.extras["is_bound"] = s.is_bound ? 1.0 : 0.0;
    } else {
        throw UsageError("unknown constant id '" + std::string(id) + "'");
    }
    return out;
}

BigInt sylow_gl_order_from_group_order(std::uint64_t p, unsigned n, const BigInt& q) {
    // |GL(n,q)| = q^{n(n-1)/2} prod (q^i - 1); the q-power is coprime to p.
    BigInt part = 1;
    BigInt qi = 1;
    for (unsigned i = 1; i <= n; ++i) {
        qi *= q;
        part *= p_part(p, BigInt(qi - 1));
    }
    return part;
}

SylowOrder sylow_gl_order(std::uint64_t p, unsigned n, const BigInt& q) {
    if (!is_prime(p)) throw ParameterError("p", "must be prime");
    if (n < 1) throw ParameterError("n", "must be positive");
    if (!as_prime_power(q)) throw ParameterError("q", "must be a prime power");
    if (q % p == 0) throw SameCharacteristicError("sylow_gl_order: p divides q");
    auto npp = as_prime_power(BigInt(n));
    bool n_is_p_power = (n == 1) || (npp && npp->first == p);
    unsigned k = (n == 1) ? 0 : (npp ? npp->second : 0);
    if (p == 2) {
        if (n_is_p_power && q % 4 == 1) {
            return {ipow(BigInt(2), n - 1) * boost::multiprecision::pow(p_part(2, BigInt(q - 1)), n), false};
        }
        if (n_is_p_power && q % 4 == 3) {
            if (k == 0) return {2, false};
            unsigned half = n / 2;
            unsigned e = n + half - 1;
            return {ipow(BigInt(2), e) * boost::multiprecision::pow(p_part(2, BigInt(q + 1)), half), false};
        }
    } else if ((q - 1) % p == 0) {
        BigInt w = p_part(p, BigInt(q - 1));
        if (n_is_p_power) {
            return {boost::multiprecision::pow(w, n) * ipow(BigInt(p), (n - 1) / static_cast<unsigned>(p - 1)), false};
        }
        return {boost::multiprecision::pow(w, n) * ipow(BigInt(p), (n - 1) / static_cast<unsigned>(p - 1)), true};
    }
    return {sylow_gl_order_from_group_order(p, n, q), false};
}

BigInt image_count_upper_bound(const BigInt& order, unsigned r, const BigInt& q) {
    if (order < 1) throw ParameterError("order", "must be positive");
    if (r < 1) throw ParameterError("r", "must be positive");
    return boost::multiprecision::pow(order, r - 1) * q;
}

}  // namespace repzeta

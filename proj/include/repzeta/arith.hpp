#pragma once

#include "repzeta/bigint.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace repzeta {

struct PrimePower {
    std::uint64_t q;
    std::uint64_t p;
    unsigned k;
    bool operator==(const PrimePower&) const = default;
};

// All prime powers q = p^k (k >= 1) with q <= limit, sorted by q.
std::vector<PrimePower> sieve_prime_powers(std::uint64_t limit);
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);
// (p, k) with n = p^k, k >= 1, if n is a prime power.
std::optional<std::pair<BigInt, unsigned>> as_prime_power(const BigInt& n);
std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n);

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Largest power of p dividing m; w_p(0) = 0.
std::uint64_t p_part(std::uint64_t p, std::uint64_t m);
BigInt p_part(std::uint64_t p, const BigInt& m);
unsigned p_adic_valuation(std::uint64_t p, const BigInt& m);

int moebius(std::uint64_t n);

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Least prime power q with q = sign (mod d), sign in {+1, -1}.
BigInt least_prime_power_congruent(const BigInt& d, int sign,
                                   std::optional<BigInt> ceiling = std::nullopt);

struct KPrimeRow {
    unsigned k;
    BigInt pp_min;
    double value;
    double running_inf;
};

// f_p(k) = log(pp_min(p^k)) / ((k + 1/(p-1)) log p) for k = 1..k_max.
std::vector<KPrimeRow> kprime_profile(std::uint64_t p, unsigned k_max);

struct KRow {
    unsigned k;
    BigInt pp_min;
    double value;
};

// log(pp_min(p^k)) / (k log p), reported as a finite profile only.
std::vector<KRow> k_profile(std::uint64_t p, unsigned k_max);

struct ConstantValue {
    std::string id;
    double value = 0.0;
    std::optional<Rational> exact;
    std::map<std::string, double> extras;
    std::vector<KPrimeRow> profile;
};

ConstantValue named_constant(std::string_view id, const nlohmann::json& params = nlohmann::json::object());
std::vector<std::string> named_constant_ids();

struct SylowOrder {
    BigInt value;
    bool is_bound = false;
};

// Order of a Sylow p-subgroup of GL(n, q), p not dividing q.
SylowOrder sylow_gl_order(std::uint64_t p, unsigned n, const BigInt& q);
// p-part of |GL(n, q)| computed from the group order.
BigInt sylow_gl_order_from_group_order(std::uint64_t p, unsigned n, const BigInt& q);

BigInt image_count_upper_bound(const BigInt& order, unsigned r, const BigInt& q);

}  // namespace repzeta

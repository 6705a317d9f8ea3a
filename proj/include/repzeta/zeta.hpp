#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/repcount.hpp"
#include "repzeta/spec.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace repzeta {

struct TermRecord {
    std::uint64_t p = 2;
    unsigned j = 1;
    unsigned n = 1;
    BigInt count;
    // |P^{n-1}(F_{p^j})| = (p^{jn} - 1) / (p^j - 1).
    BigInt weight;
    Exactness exactness = Exactness::exact;

    // p^{jn}, the ordering key.
    BigInt norm() const;
};

BigInt projective_points(const BigInt& q, unsigned n);

// Calls f for every (p, j, n) with p^{jn} <= X and nonzero count, in order of
// increasing p, then j, then n.
void for_each_term(const GroupSpec& spec, std::uint64_t X, const std::function<void(const TermRecord&)>& f,
                   CountMode mode = CountMode::exact);

// Sorted by p^{nj}, then (p, j, n).
std::vector<TermRecord> term_stream(const GroupSpec& spec, std::uint64_t X, CountMode mode = CountMode::exact);

struct LogZetaOptions {
    CountMode mode = CountMode::exact;
    // Below the envelope's convergence region return the partial sum with a
    // divergence flag instead of throwing.
    bool monitor = false;
};

struct TruncatedLogZeta {
    double value = 0;
    double tail_bound = 0;
    // The dyadic block sums near X, scaled by log of the block end, are not
    // decreasing.
    bool diverging = false;
    double last_block = 0;
    double previous_block = 0;
    std::size_t terms = 0;
};

// Bound on the sum over q^n > X of K q^{cn} |P^{n-1}(F_q)| q^{-sn}, taken
// over all integers q >= 2 and n >= 1 (n <= max_dim when max_dim > 0).
// Requires s > c + 1.
double envelope_tail_bound(double s, std::uint64_t X, double c, double K, unsigned max_dim = 0);

TruncatedLogZeta log_zeta_truncated(const GroupSpec& spec, double s, std::uint64_t X, const UbergConstant& uberg,
                                    const LogZetaOptions& opts = {});
// Uses K from default_uberg(spec).
TruncatedLogZeta log_zeta_truncated(const GroupSpec& spec, double s, std::uint64_t X, double uberg_c,
                                    const LogZetaOptions& opts = {});

// u_m = sum over n j = m of (m/j) count(p, j, n) weight, m = 1..D.
std::vector<BigInt> local_log_coeffs(const GroupSpec& spec, std::uint64_t p, unsigned D,
                                     CountMode mode = CountMode::exact);

// Same with r(G, F_q, n) in place of r*, the local data of eta_G.
std::vector<BigInt> local_log_coeffs_irr(const GroupSpec& spec, std::uint64_t p, unsigned D,
                                         CountMode mode = CountMode::exact);

// Truncated power series in T with rational coefficients, index = degree.
using Series = std::vector<Rational>;

Series series_one(unsigned D);
Series series_mul(const Series& a, const Series& b);
Series series_inv(const Series& a);
// a(0) must be 1.
Series series_log(const Series& a);
// a(0) must be 0.
Series series_exp(const Series& a);
Series series_pow(const Series& a, const Rational& e);
// The series of exp(sum u_m T^m / m).
Series series_from_log_coeffs(const std::vector<Rational>& u, unsigned D);
std::vector<Rational> log_coeffs_from_series(const Series& a);
std::vector<Rational> to_rationals(const std::vector<BigInt>& u);

// Z(T) = prod (1 - beta T) / prod (1 - alpha T).
struct RationalLocalFactor {
    std::vector<BigInt> alphas;
    std::vector<BigInt> betas;
};

Series factor_series(const RationalLocalFactor& f, unsigned D);
// u_m = sum alpha^m - sum beta^m.
std::vector<BigInt> factor_log_coeffs(const RationalLocalFactor& f, unsigned D);

// found: the factor has integer inverse roots, given as alphas and betas.
// not_integral: a rational factor N(T)/D(T) reproduces the data but some
// inverse root is not an integer. no_recurrence: nothing short enough.
enum class DetectionStatus { found, not_integral, no_recurrence };
std::string to_string(DetectionStatus s);

struct DetectionResult {
    DetectionStatus status = DetectionStatus::no_recurrence;
    RationalLocalFactor factor;
    // Z(T) = numerator / denominator, coefficients by ascending degree.
    std::vector<Rational> numerator;
    std::vector<Rational> denominator;
    // Linear complexity of the coefficient sequence of Z(T).
    std::size_t order = 0;
    std::vector<std::size_t> hankel_ranks;
    std::string diagnosis;

    bool rational() const { return status != DetectionStatus::no_recurrence; }
};

// Connection polynomial 1 + c_1 x + ... + c_L x^L of the minimal recurrence
// of s (Berlekamp-Massey over Q); the size is L + 1.
std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s);
std::vector<std::size_t> hankel_ranks(const std::vector<Rational>& s);

// Works on Z(T) = exp(sum u_m T^m / m) through degree length(u). A recurrence
// of order L is accepted when L <= max_order and 2L + 1 coefficients are
// available.
DetectionResult detect_rational_local_factor(const std::vector<Rational>& u, unsigned max_order = 8);
DetectionResult detect_rational_local_factor(const std::vector<BigInt>& u, unsigned max_order = 8);

Series rational_function_series(const std::vector<Rational>& numerator, const std::vector<Rational>& denominator,
                                unsigned D);

}  // namespace repzeta

#include "repzeta/zeta.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace repzeta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0;
    double comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Largest dimension with nonzero counts, when the family bounds it.
std::optional<unsigned> max_dimension(const GroupSpec& spec) {
    return std::visit(
        overloaded{
            [](const TrivialSpec&) -> std::optional<unsigned> { return 1; },
            [](const ZHatSpec&) -> std::optional<unsigned> { return 1; },
            [](const ZHatPowerSpec&) -> std::optional<unsigned> { return 1; },
            [](const ZpPowerSpec&) -> std::optional<unsigned> { return 1; },
            [](const CyclicSpec&) -> std::optional<unsigned> { return 1; },
            [](const FiniteAbelianSpec&) -> std::optional<unsigned> { return 1; },
            [](const MatrixAlgebraSpec& s) -> std::optional<unsigned> { return s.n; },
            [](const RingProductSpec& s) -> std::optional<unsigned> {
                unsigned m = 1;
                for (const auto& part : s.parts) {
                    auto d = max_dimension(part);
                    if (!d) return std::nullopt;
                    m = std::max(m, *d);
                }
                return m;
            },
            [](const GroupProductSpec& s) -> std::optional<unsigned> {
                unsigned m = 1;
                for (const auto& part : s.parts) {
                    auto d = max_dimension(part);
                    if (!d) return std::nullopt;
                    m *= *d;
                }
                return m;
            },
            [](const LamplighterSpec&) -> std::optional<unsigned> { return std::nullopt; },
            [](const VirtuallyAbelianSpec& s) -> std::optional<unsigned> { return s.order; },
            [](const SL2ProductSpec&) -> std::optional<unsigned> { return std::nullopt; },
            [](const FiniteGroupSpec&) -> std::optional<unsigned> { return std::nullopt; },
            [](const FreeProPSpec&) -> std::optional<unsigned> { return std::nullopt; },
        },
        spec.v);
}

// Terms of the envelope for one n: sum over integers q >= Q of beta K q^{-a},
// a = sigma n + 1.
double tail_for_dimension(unsigned n, double sigma, std::uint64_t X, double K) {
    BigInt root = iroot(BigInt(X), n);
    double Q = std::max(2.0, to_double(root) + 1.0);
    double a = sigma * n + 1.0;
    double beta = n == 1 ? 1.0 : 2.0;
    return beta * K * (std::pow(Q, -a) + std::pow(Q, 1.0 - a) / (a - 1.0));
}

double term_value(const TermRecord& t, double s, double log_q) {
    double lc = fits_u64(t.count) ? std::log(t.count.convert_to<double>()) : log_big(t.count);
    double lw = fits_u64(t.weight) ? std::log(t.weight.convert_to<double>()) : log_big(t.weight);
    return std::exp(lc + lw - s * t.n * log_q) / t.j;
}

}  // namespace

BigInt TermRecord::norm() const { return ipow(BigInt(p), j * n); }

BigInt projective_points(const BigInt& q, unsigned n) {
    BigInt total = 0;
    BigInt power = 1;
    for (unsigned i = 0; i < n; ++i) {
        total += power;
        power *= q;
    }
    return total;
}

void for_each_term(const GroupSpec& spec, std::uint64_t X, const std::function<void(const TermRecord&)>& f,
                   CountMode mode) {
    if (X < 2) throw DomainError("term_stream needs X >= 2");
    for (std::uint64_t p : primes_up_to(X)) {
        BigInt q = p;
        for (unsigned j = 1; q <= X; ++j, q *= p) {
            BigInt qn = q;
            for (unsigned n = 1; qn <= X; ++n, qn *= q) {
                auto r = count_abs_irr(spec, {p, j, n}, mode);
                if (r.value == 0) continue;
                TermRecord t;
                t.p = p;
                t.j = j;
                t.n = n;
                t.count = std::move(r.value);
                t.weight = projective_points(q, n);
                t.exactness = r.exactness;
                f(t);
            }
        }
    }
}

std::vector<TermRecord> term_stream(const GroupSpec& spec, std::uint64_t X, CountMode mode) {
    std::vector<std::pair<std::uint64_t, TermRecord>> keyed;
    for_each_term(
        spec, X, [&](const TermRecord& t) { keyed.emplace_back(t.norm().convert_to<std::uint64_t>(), t); }, mode);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        const auto& x = a.second;
        const auto& y = b.second;
        return std::tie(x.p, x.j, x.n) < std::tie(y.p, y.j, y.n);
    });
    std::vector<TermRecord> out;
    out.reserve(keyed.size());
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

double envelope_tail_bound(double s, std::uint64_t X, double c, double K, unsigned max_dim) {
    double sigma = s - c - 1.0;
    if (!(sigma > 0)) throw ConvergenceError("tail bound needs s > c + 1");
    double total = 0;
    unsigned n = 1;
    for (; max_dim == 0 || n <= max_dim; ++n) {
        total += tail_for_dimension(n, sigma, X, K);
        // Once 2^n > X every remaining dimension sums from q = 2.
        if (max_dim == 0 && n >= 64) break;
        if (max_dim == 0 && std::ldexp(1.0, static_cast<int>(n)) > static_cast<double>(X)) break;
    }
    if (max_dim == 0) {
        unsigned n0 = n + 1;
        double geometric = std::pow(2.0, -sigma * n0) / (1.0 - std::pow(2.0, -sigma));
        total += 2.0 * K * (0.5 + 1.0 / (sigma * n0)) * geometric;
    }
    return total;
}

TruncatedLogZeta log_zeta_truncated(const GroupSpec& spec, double s, std::uint64_t X, const UbergConstant& uberg,
                                    const LogZetaOptions& opts) {
    if (!(s > 0)) throw ConvergenceError("log_zeta_truncated needs s > 0");
    const bool convergent = s > uberg.c + 1.0;
    if (!convergent && !opts.monitor)
        throw ConvergenceError("s = " + std::to_string(s) + " is not above c + 1 = " + std::to_string(uberg.c + 1.0) +
                               "; the tail bound is undefined");
    TruncatedLogZeta out;
    CompensatedSum sum, last, previous;
    const double x = static_cast<double>(X);
    for_each_term(
        spec, X,
        [&](const TermRecord& t) {
            double log_q = t.j * std::log(static_cast<double>(t.p));
            double v = term_value(t, s, log_q);
            sum.add(v);
            double norm = std::exp(log_q * t.n);
            if (norm > x / 2)
                last.add(v);
            else if (norm > x / 4)
                previous.add(v);
            ++out.terms;
        },
        opts.mode);
    out.value = sum.value();
    out.last_block = last.value();
    out.previous_block = previous.value();
    out.diverging = out.last_block > 0 && out.last_block * std::log(x) >= out.previous_block * std::log(x / 2);
    if (convergent) {
        auto dim = max_dimension(spec);
        out.tail_bound = envelope_tail_bound(s, X, uberg.c, uberg.K, dim.value_or(0));
    } else {
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

TruncatedLogZeta log_zeta_truncated(const GroupSpec& spec, double s, std::uint64_t X, double uberg_c,
                                    const LogZetaOptions& opts) {
    UbergConstant u = default_uberg(spec);
    u.c = uberg_c;
    if (!u.known) u.K = 1;
    u.known = true;
    return log_zeta_truncated(spec, s, X, u, opts);
}

namespace {

std::vector<BigInt> local_coeffs(const GroupSpec& spec, std::uint64_t p, unsigned D, CountMode mode, bool irr) {
    if (!is_prime(p)) throw DomainError("local_log_coeffs needs a prime");
    std::vector<BigInt> u(D, 0);
    for (unsigned m = 1; m <= D; ++m) {
        for (unsigned j = 1; j <= m; ++j) {
            if (m % j) continue;
            unsigned n = m / j;
            auto r = irr ? count_irr(spec, {p, j, n}, mode) : count_abs_irr(spec, {p, j, n}, mode);
            if (r.exactness != Exactness::exact) throw CapabilityError("local_log_coeffs requires exact counts");
            if (r.value == 0) continue;
            u[m - 1] += BigInt(m / j) * r.value * projective_points(ipow(BigInt(p), j), n);
        }
    }
    return u;
}

}  // namespace

std::vector<BigInt> local_log_coeffs(const GroupSpec& spec, std::uint64_t p, unsigned D, CountMode mode) {
    return local_coeffs(spec, p, D, mode, false);
}

std::vector<BigInt> local_log_coeffs_irr(const GroupSpec& spec, std::uint64_t p, unsigned D, CountMode mode) {
    return local_coeffs(spec, p, D, mode, true);
}

}  // namespace repzeta

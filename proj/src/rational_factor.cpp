#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <sstream>

namespace repzeta {

Series series_one(unsigned D) {
    Series s(D + 1, 0);
    s[0] = 1;
    return s;
}

Series series_mul(const Series& a, const Series& b) {
    std::size_t n = std::min(a.size(), b.size());
    Series c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t k = 0; i + k < n; ++k) c[i + k] += a[i] * b[k];
    }
    return c;
}

Series series_inv(const Series& a) {
    if (a.empty() || a[0] == 0) throw DomainError("series_inv: constant term is zero");
    Series b(a.size(), 0);
    b[0] = Rational(1) / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += a[k] * b[n - k];
        b[n] = -acc * b[0];
    }
    return b;
}

Series series_log(const Series& a) {
    if (a.empty() || a[0] != 1) throw DomainError("series_log: constant term must be 1");
    Series d(a.size(), 0);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<long>(i);
    Series q = series_mul(d, series_inv(a));
    Series out(a.size(), 0);
    for (std::size_t i = 1; i < a.size(); ++i) out[i] = q[i - 1] / static_cast<long>(i);
    return out;
}

Series series_exp(const Series& a) {
    if (a.empty()) return a;
    if (a[0] != 0) throw DomainError("series_exp: constant term must be 0");
    Series e(a.size(), 0);
    e[0] = 1;
    for (std::size_t n = 1; n < a.size(); ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += a[k] * static_cast<long>(k) * e[n - k];
        e[n] = acc / static_cast<long>(n);
    }
    return e;
}

Series series_pow(const Series& a, const Rational& e) {
    if (denominator(e) == 1) {
        BigInt k = numerator(e);
        Series base = k < 0 ? series_inv(a) : a;
        if (k < 0) k = -k;
        Series out = series_one(static_cast<unsigned>(a.size() - 1));
        while (k > 0) {
            if (k & 1) out = series_mul(out, base);
            k >>= 1;
            if (k > 0) base = series_mul(base, base);
        }
        return out;
    }
    Series l = series_log(a);
    for (auto& c : l) c *= e;
    return series_exp(l);
}

Series series_from_log_coeffs(const std::vector<Rational>& u, unsigned D) {
    Series l(D + 1, 0);
    for (unsigned m = 1; m <= D && m <= u.size(); ++m) l[m] = u[m - 1] / static_cast<long>(m);
    return series_exp(l);
}

std::vector<Rational> log_coeffs_from_series(const Series& a) {
    Series l = series_log(a);
    std::vector<Rational> u;
    for (std::size_t m = 1; m < l.size(); ++m) u.push_back(l[m] * static_cast<long>(m));
    return u;
}

std::vector<Rational> to_rationals(const std::vector<BigInt>& u) {
    std::vector<Rational> out;
    out.reserve(u.size());
    for (const auto& x : u) out.emplace_back(x);
    return out;
}

Series factor_series(const RationalLocalFactor& f, unsigned D) {
    Series out = series_one(D);
    for (const auto& b : f.betas) {
        Series t = series_one(D);
        if (D >= 1) t[1] = Rational(-b);
        out = series_mul(out, t);
    }
    for (const auto& a : f.alphas) {
        Series t(D + 1, 0);
        BigInt power = 1;
        for (unsigned i = 0; i <= D; ++i, power *= a) t[i] = Rational(power);
        out = series_mul(out, t);
    }
    return out;
}

std::vector<BigInt> factor_log_coeffs(const RationalLocalFactor& f, unsigned D) {
    std::vector<BigInt> u(D, 0);
    for (unsigned m = 1; m <= D; ++m) {
        for (const auto& a : f.alphas) u[m - 1] += ipow(a, m);
        for (const auto& b : f.betas) u[m - 1] -= ipow(b, m);
    }
    return u;
}

std::string to_string(DetectionStatus s) {
    switch (s) {
        case DetectionStatus::found: return "found";
        case DetectionStatus::not_integral: return "not_integral";
        case DetectionStatus::no_recurrence: return "no_recurrence";
    }
    return "?";
}

std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s) {
    std::vector<Rational> C{1}, B{1};
    std::size_t L = 0, m = 1;
    Rational b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d = s[n];
        for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        std::vector<Rational> T = C;
        Rational coef = d / b;
        if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
        for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
        if (2 * L <= n) {
            L = n + 1 - L;
            B = T;
            b = d;
            m = 1;
        } else {
            ++m;
        }
    }
    C.resize(L + 1, 0);
    return C;
}

namespace {

std::size_t rank_of(std::vector<std::vector<Rational>> a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

bool integral(const Rational& x) { return denominator(x) == 1; }

// Horner evaluation of an integer polynomial, leading coefficient first.
BigInt evaluate(const std::vector<BigInt>& poly, const BigInt& x) {
    BigInt v = 0;
    for (const auto& c : poly) v = v * x + c;
    return v;
}

std::vector<BigInt> deflate(const std::vector<BigInt>& poly, const BigInt& r) {
    std::vector<BigInt> out;
    BigInt carry = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        carry = carry * r + poly[i];
        out.push_back(carry);
    }
    return out;
}

// Durand-Kerner approximations of all complex roots.
std::vector<std::complex<long double>> numeric_roots(const std::vector<BigInt>& poly) {
    std::size_t deg = poly.size() - 1;
    std::vector<long double> c;
    long double lead = poly[0].convert_to<long double>();
    for (const auto& x : poly) c.push_back(x.convert_to<long double>() / lead);
    long double radius = 0;
    for (std::size_t i = 1; i <= deg; ++i) radius = std::max(radius, std::pow(std::fabs(c[i]), 1.0L / i));
    radius = 2 * radius + 1;
    std::vector<std::complex<long double>> z(deg);
    for (std::size_t i = 0; i < deg; ++i) z[i] = std::polar(radius, 0.4L + 6.283185307179586L * i / deg);
    auto f = [&](std::complex<long double> x) {
        std::complex<long double> v = 0;
        for (auto coef : c) v = v * x + coef;
        return v;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double change = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            std::complex<long double> den = 1;
            for (std::size_t k = 0; k < deg; ++k)
                if (k != i) den *= z[i] - z[k];
            if (std::abs(den) == 0) den = 1e-30L;
            auto step = f(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
        }
        if (change < 1e-18L) break;
    }
    return z;
}

// Ascending coefficients shown as a polynomial in T.
std::string poly_text(const std::vector<Rational>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c[i]) << ")";
        if (i > 0) os << "T^" << i;
    }
    return first ? "0" : os.str();
}

}  // namespace

std::vector<std::size_t> hankel_ranks(const std::vector<Rational>& s) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; 2 * k - 1 <= s.size(); ++k) {
        std::vector<std::vector<Rational>> h(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) h[i][j] = s[i + j];
        out.push_back(rank_of(h));
    }
    return out;
}

Series rational_function_series(const std::vector<Rational>& numerator, const std::vector<Rational>& denominator,
                                unsigned D) {
    Series n(D + 1, 0), d(D + 1, 0);
    for (std::size_t i = 0; i < numerator.size() && i <= D; ++i) n[i] = numerator[i];
    for (std::size_t i = 0; i < denominator.size() && i <= D; ++i) d[i] = denominator[i];
    return series_mul(n, series_inv(d));
}

namespace {

// Integer inverse roots of 1 + c_1 T + ... + c_d T^d, with multiplicity.
std::optional<std::vector<BigInt>> integer_inverse_roots(const std::vector<Rational>& poly) {
    std::vector<BigInt> rest;
    for (const auto& c : poly) {
        if (!integral(c)) return std::nullopt;
        rest.push_back(numerator(c));
    }
    while (rest.size() > 1 && rest.back() == 0) rest.pop_back();
    // Read ascending coefficients as the reversed polynomial, leading first.
    std::vector<BigInt> roots;
    auto try_root = [&](const BigInt& r) {
        while (rest.size() > 1 && evaluate(rest, r) == 0) {
            roots.push_back(r);
            rest = deflate(rest, r);
        }
    };
    if (rest.size() > 1) {
        for (const auto& z : numeric_roots(rest)) {
            if (std::fabs(z.imag()) > 1e-6L * (1 + std::fabs(z.real()))) continue;
            long double rr = std::round(z.real());
            if (std::fabs(rr) > 9e18L) continue;
            try_root(BigInt(static_cast<long long>(rr)));
        }
    }
    if (rest.size() > 1) {
        BigInt c0 = abs(rest.back());
        if (c0 != 0 && c0 <= BigInt(100000000000000ULL)) {
            for (auto d : divisors(c0.convert_to<std::uint64_t>())) {
                try_root(BigInt(d));
                try_root(-BigInt(d));
            }
        }
    }
    if (rest.size() > 1) return std::nullopt;
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<Rational> trimmed(std::vector<Rational> v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
}

}  // namespace

DetectionResult detect_rational_local_factor(const std::vector<Rational>& u, unsigned max_order) {
    DetectionResult res;
    const unsigned D = static_cast<unsigned>(u.size());
    Series z = series_from_log_coeffs(u, D);
    res.hankel_ranks = hankel_ranks(z);
    auto C = berlekamp_massey(z);
    std::size_t L = C.size() - 1;
    res.order = L;
    std::ostringstream diag;
    if (L > max_order || 2 * L + 1 > z.size()) {
        res.status = DetectionStatus::no_recurrence;
        diag << "linear complexity " << L << " exceeds the limit (max order " << max_order << ", " << z.size()
             << " coefficients); Hankel ranks";
        for (auto r : res.hankel_ranks) diag << " " << r;
        res.diagnosis = diag.str();
        return res;
    }
    Series cz = series_mul(z, [&] {
        Series c(z.size(), 0);
        for (std::size_t i = 0; i < C.size(); ++i) c[i] = C[i];
        return c;
    }());
    std::vector<Rational> N(cz.begin(), cz.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(L, 1)));
    res.numerator = trimmed(N);
    res.denominator = trimmed(C);
    if (rational_function_series(res.numerator, res.denominator, D) != z) {
        res.status = DetectionStatus::no_recurrence;
        res.diagnosis = "recurrence does not reproduce the data";
        return res;
    }
    auto alphas = integer_inverse_roots(res.denominator);
    auto betas = integer_inverse_roots(res.numerator);
    if (!alphas || !betas) {
        res.status = DetectionStatus::not_integral;
        res.diagnosis = "rational factor of order " + std::to_string(L) + " with non-integral inverse roots; numerator " +
                        poly_text(res.numerator) + ", denominator " + poly_text(res.denominator) + " (in T)";
        return res;
    }
    res.status = DetectionStatus::found;
    res.factor.alphas = *alphas;
    res.factor.betas = *betas;
    diag << "order " << L;
    res.diagnosis = diag.str();
    return res;
}

DetectionResult detect_rational_local_factor(const std::vector<BigInt>& u, unsigned max_order) {
    return detect_rational_local_factor(to_rationals(u), max_order);
}

}  // namespace repzeta

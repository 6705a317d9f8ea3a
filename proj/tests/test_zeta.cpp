#include "doctest.h"

#include "repzeta/abscissa.hpp"
#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/zeta.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <tuple>

using namespace repzeta;

namespace {

std::vector<std::tuple<std::uint64_t, unsigned, unsigned>> keys(const std::vector<TermRecord>& ts) {
    std::vector<std::tuple<std::uint64_t, unsigned, unsigned>> out;
    for (const auto& t : ts) out.emplace_back(t.p, t.j, t.n);
    return out;
}

std::vector<BigInt> ints(std::initializer_list<long long> v) {
    std::vector<BigInt> out;
    for (auto x : v) out.push_back(BigInt(x));
    return out;
}

Series poly(std::initializer_list<long long> c, unsigned D) {
    Series s(D + 1, 0);
    unsigned i = 0;
    for (auto x : c) {
        if (i <= D) s[i] = Rational(x);
        ++i;
    }
    return s;
}

std::vector<GroupSpec> exact_families() {
    return {TrivialSpec{},
            ZHatSpec{},
            ZHatPowerSpec{2},
            CyclicSpec{6},
            MatrixAlgebraSpec{2, 3, 1},
            LamplighterSpec{2},
            LamplighterSpec{3},
            virtually_abelian_preset("ZwrC2"),
            virtually_abelian_preset("Dinf"),
            virtually_abelian_preset("BS1m1"),
            finite_group_preset("S4")};
}

}  // namespace

TEST_CASE("term stream of the trivial group follows the prime powers") {
    auto ts = term_stream(TrivialSpec{}, 9);
    using K = std::tuple<std::uint64_t, unsigned, unsigned>;
    std::vector<K> want{{2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {5, 1, 1}, {7, 1, 1}, {2, 3, 1}, {3, 2, 1}};
    CHECK(keys(ts) == want);
    for (const auto& t : ts) {
        CHECK(t.count == 1);
        CHECK(t.weight == 1);
    }
}

TEST_CASE("term stream of a matrix algebra") {
    auto ts = term_stream(MatrixAlgebraSpec{2, 2, 1}, 16);
    REQUIRE(ts.size() == 2);
    CHECK(keys(ts)[0] == std::make_tuple(std::uint64_t{2}, 1u, 2u));
    CHECK(ts[0].count == 1);
    CHECK(ts[0].weight == 3);
    // F_2^2 stays absolutely simple over F_4.
    CHECK(keys(ts)[1] == std::make_tuple(std::uint64_t{2}, 2u, 2u));
    CHECK(ts[1].weight == 5);
    CHECK(term_stream(MatrixAlgebraSpec{2, 2, 1}, 15).size() == 1);
}

TEST_CASE("lamplighter term stream at p = 3") {
    std::vector<TermRecord> at3;
    for (const auto& t : term_stream(LamplighterSpec{2}, 27))
        if (t.p == 3) at3.push_back(t);
    using K = std::tuple<std::uint64_t, unsigned, unsigned>;
    std::vector<K> want{{3, 1, 1}, {3, 1, 2}, {3, 2, 1}, {3, 1, 3}, {3, 3, 1}};
    REQUIRE(keys(at3) == want);
    std::vector<long long> counts{4, 2, 16, 4, 52}, weights{1, 4, 1, 13, 1};
    for (std::size_t i = 0; i < at3.size(); ++i) {
        CHECK(at3[i].count == counts[i]);
        CHECK(at3[i].weight == weights[i]);
    }
    // m c_m aggregates: sum over nj = m of (m/j) count weight = 6^m - 2^m.
    CHECK(at3[0].count * at3[0].weight == 6 - 2);
    CHECK(2 * at3[1].count * at3[1].weight + at3[2].count * at3[2].weight == 36 - 4);
    CHECK(3 * at3[3].count * at3[3].weight + at3[4].count * at3[4].weight == 216 - 8);
}

TEST_CASE("term stream is sorted and complete") {
    for (const auto& spec : exact_families()) {
        auto ts = term_stream(spec, 200);
        for (std::size_t i = 1; i < ts.size(); ++i) {
            auto a = std::make_tuple(ts[i - 1].norm(), ts[i - 1].p, ts[i - 1].j, ts[i - 1].n);
            auto b = std::make_tuple(ts[i].norm(), ts[i].p, ts[i].j, ts[i].n);
            CHECK(a < b);
        }
        for (const auto& t : ts) {
            CHECK(t.norm() <= 200);
            CHECK(t.count > 0);
            CHECK(t.weight == projective_points(ipow(BigInt(t.p), t.j), t.n));
        }
    }
}

TEST_CASE("projective point counts") {
    CHECK(projective_points(BigInt(2), 1) == 1);
    CHECK(projective_points(BigInt(3), 2) == 4);
    CHECK(projective_points(BigInt(3), 3) == 13);
    CHECK(projective_points(BigInt(4), 2) == 5);
}

TEST_CASE("truncated log zeta of the trivial group") {
    auto r = log_zeta_truncated(TrivialSpec{}, 2.0, 1000000, 0.0);
    double exact = std::log(boost::math::zeta(2.0));
    CHECK(std::abs(r.value - exact) <= 1e-6 + r.tail_bound);
    CHECK(r.tail_bound > 0);
    CHECK(r.tail_bound < 1e-5);
    CHECK_FALSE(r.diverging);
}

TEST_CASE("truncated log zeta of ZHat") {
    auto r = log_zeta_truncated(ZHatSpec{}, 3.0, 100000, 1.0);
    double exact = std::log(boost::math::zeta(2.0) / boost::math::zeta(3.0));
    CHECK(std::abs(r.value - exact) <= r.tail_bound);
    CHECK(r.value == doctest::Approx(0.3136653).epsilon(1e-6));
}

TEST_CASE("monotonicity in X and s") {
    for (const auto& spec : {GroupSpec{TrivialSpec{}}, GroupSpec{ZHatSpec{}}, GroupSpec{LamplighterSpec{2}}}) {
        double c = default_uberg(spec).c;
        double s = c + 2.5;
        double prev = 0;
        for (std::uint64_t X : {10, 100, 1000, 10000}) {
            double v = log_zeta_truncated(spec, s, X, c).value;
            CHECK(v >= prev);
            prev = v;
        }
        CHECK(log_zeta_truncated(spec, s + 0.5, 10000, c).value < log_zeta_truncated(spec, s, 10000, c).value);
    }
}

TEST_CASE("divergence is monitored or rejected") {
    CHECK_THROWS_AS(log_zeta_truncated(TrivialSpec{}, 0.9, 1000, 0.0), ConvergenceError);
    LogZetaOptions o;
    o.monitor = true;
    auto a = log_zeta_truncated(TrivialSpec{}, 0.9, 10000, 0.0, o);
    auto b = log_zeta_truncated(TrivialSpec{}, 0.9, 100000, 0.0, o);
    CHECK(a.diverging);
    CHECK(b.diverging);
    CHECK(b.value > a.value + 0.5);
    CHECK(b.last_block >= b.previous_block);
    CHECK_FALSE(log_zeta_truncated(TrivialSpec{}, 2.0, 100000, 0.0, o).diverging);
}

TEST_CASE("envelope tail bound decreases with X") {
    double t1 = envelope_tail_bound(3.0, 1000, 0.0, 1.0);
    double t2 = envelope_tail_bound(3.0, 100000, 0.0, 1.0);
    CHECK(t2 < t1);
    CHECK(envelope_tail_bound(3.0, 1000, 0.0, 1.0, 1) <= t1);
    CHECK(envelope_tail_bound(3.0, 1000, 0.0, 2.0) == doctest::Approx(2 * t1));
    CHECK_THROWS_AS(envelope_tail_bound(1.0, 1000, 0.0, 1.0), ConvergenceError);
}

TEST_CASE("local log coefficients") {
    CHECK(local_log_coeffs(LamplighterSpec{2}, 3, 4) == ints({4, 32, 208, 1280}));
    CHECK(local_log_coeffs(ZHatSpec{}, 2, 3) == ints({1, 3, 7}));
    CHECK(local_log_coeffs(TrivialSpec{}, 5, 3) == ints({1, 1, 1}));
    auto u = local_log_coeffs(LamplighterSpec{2}, 3, 12);
    for (unsigned m = 1; m <= 12; ++m) CHECK(u[m - 1] == ipow(BigInt(6), m) - ipow(BigInt(2), m));
}

TEST_CASE("irreducible coefficients dominate absolutely irreducible ones") {
    for (const auto& spec : {GroupSpec{ZHatSpec{}}, GroupSpec{LamplighterSpec{2}}, GroupSpec{CyclicSpec{3}}}) {
        auto a = local_log_coeffs(spec, 2, 6);
        auto b = local_log_coeffs_irr(spec, 2, 6);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] >= a[i]);
    }
    // C_3 over F_2: one 2-dimensional irreducible that is not absolutely irreducible.
    CHECK(local_log_coeffs_irr(CyclicSpec{3}, 2, 2)[1] > local_log_coeffs(CyclicSpec{3}, 2, 2)[1]);
}

TEST_CASE("series arithmetic") {
    const unsigned D = 8;
    Series a = poly({1, -2}, D);
    Series inv = series_inv(a);
    for (unsigned i = 0; i <= D; ++i) CHECK(inv[i] == Rational(ipow(BigInt(2), i)));
    CHECK(series_mul(a, inv) == series_one(D));
    Series l = series_log(inv);
    CHECK(series_exp(l) == inv);
    Series h = series_pow(inv, Rational(1, 2));
    CHECK(series_mul(h, h) == inv);
    auto u = log_coeffs_from_series(inv);
    for (unsigned m = 1; m <= D; ++m) CHECK(u[m - 1] == Rational(ipow(BigInt(2), m)));
    CHECK(series_from_log_coeffs(u, D) == inv);
}

TEST_CASE("Berlekamp-Massey") {
    std::vector<Rational> fib{1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
    auto c = berlekamp_massey(fib);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 1);
    CHECK(c[1] == -1);
    CHECK(c[2] == -1);
    std::vector<Rational> geo{1, 3, 9, 27, 81, 243};
    CHECK(berlekamp_massey(geo).size() == 2);
    auto hr = hankel_ranks(geo);
    for (auto r : hr) CHECK(r == 1);
}

TEST_CASE("detection examples") {
    auto lamp = detect_rational_local_factor(local_log_coeffs(LamplighterSpec{2}, 3, 12));
    REQUIRE(lamp.status == DetectionStatus::found);
    CHECK(lamp.factor.alphas == ints({6}));
    CHECK(lamp.factor.betas == ints({2}));

    std::vector<BigInt> mersenne;
    for (unsigned m = 1; m <= 10; ++m) mersenne.push_back(ipow(BigInt(2), m) - 1);
    auto zh = detect_rational_local_factor(mersenne);
    REQUIRE(zh.status == DetectionStatus::found);
    CHECK(zh.factor.alphas == ints({2}));
    CHECK(zh.factor.betas == ints({1}));

    auto triv = detect_rational_local_factor(std::vector<BigInt>(8, BigInt(1)));
    REQUIRE(triv.status == DetectionStatus::found);
    CHECK(triv.factor.alphas == ints({1}));
    CHECK(triv.factor.betas.empty());
}

TEST_CASE("detection reports non-integral and missing recurrences") {
    // 1 / (1 - 2 T^2): inverse roots +-sqrt 2.
    std::vector<BigInt> u;
    for (unsigned m = 1; m <= 10; ++m) u.push_back(m % 2 ? BigInt(0) : 2 * ipow(BigInt(2), m / 2));
    auto r = detect_rational_local_factor(u);
    CHECK(r.status == DetectionStatus::not_integral);
    CHECK(r.rational());
    CHECK(rational_function_series(r.numerator, r.denominator, 10) == series_from_log_coeffs(to_rationals(u), 10));

    auto short_data = detect_rational_local_factor(ints({1, 5, 2, 7}), 8);
    CHECK(short_data.status == DetectionStatus::no_recurrence);
    CHECK_FALSE(short_data.diagnosis.empty());
    CHECK(detect_rational_local_factor(u, 1).status == DetectionStatus::no_recurrence);
}

TEST_CASE("detection round trip on exact families") {
    const unsigned D = 12;
    for (const auto& spec : exact_families()) {
        // S4 has a factor of order 24, beyond what 12 coefficients determine.
        if (std::holds_alternative<FiniteGroupSpec>(spec.v)) continue;
        for (std::uint64_t p : {2, 3, 5, 7}) {
            auto u = local_log_coeffs(spec, p, D);
            auto r = detect_rational_local_factor(u);
            INFO(family_name(spec), " p=", p);
            CHECK(r.rational());
            if (!r.rational()) continue;
            CHECK(rational_function_series(r.numerator, r.denominator, D) ==
                  series_from_log_coeffs(to_rationals(u), D));
            if (r.status == DetectionStatus::found) {
                CHECK(factor_log_coeffs(r.factor, D) == u);
                CHECK(factor_series(r.factor, D) == series_from_log_coeffs(to_rationals(u), D));
            }
        }
    }
}

TEST_CASE("wreath product with C_3 has a non-integral rational factor") {
    // (1-T)^3 (1-49T^3) / ((1-7T)^3 (1-7^5 T^3)) at p = 7.
    const unsigned D = 14;
    auto u = local_log_coeffs(virtually_abelian_preset("ZwrC3"), 7, D);
    auto r = detect_rational_local_factor(u);
    REQUIRE(r.status == DetectionStatus::not_integral);
    CHECK(r.order == 7);
    Series num = series_mul(series_mul(poly({1, -1}, D), series_mul(poly({1, -1}, D), poly({1, -1}, D))),
                            poly({1, 0, 0, -49}, D));
    Series den = series_mul(series_mul(poly({1, -7}, D), series_mul(poly({1, -7}, D), poly({1, -7}, D))),
                            poly({1, 0, 0, -16807}, D));
    CHECK(series_mul(num, series_inv(den)) == series_from_log_coeffs(to_rationals(u), D));
}

TEST_CASE("ring products add log coefficients") {
    GroupSpec a = ZHatSpec{}, b = MatrixAlgebraSpec{2, 3, 1};
    GroupSpec ab = RingProductSpec{{a, b}};
    for (std::uint64_t p : {2, 3, 5, 7}) {
        auto ua = local_log_coeffs(a, p, 12), ub = local_log_coeffs(b, p, 12), uab = local_log_coeffs(ab, p, 12);
        for (unsigned m = 0; m < 12; ++m) CHECK(uab[m] == ua[m] + ub[m]);
    }
    for (std::uint64_t X : {50, 500, 5000}) {
        double l = log_zeta_truncated(ab, 4.0, X, 1.0).value;
        double r = log_zeta_truncated(a, 4.0, X, 1.0).value + log_zeta_truncated(b, 4.0, X, 1.0).value;
        CHECK(l == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("abscissa estimate at small scale") {
    auto t = estimate_abscissa(TrivialSpec{}, 100000);
    CHECK(t.value == doctest::Approx(1.0).epsilon(0.08));
    CHECK(t.x_lo < t.x_hi);
    CHECK(t.samples >= 8);
    auto z = estimate_abscissa(ZHatSpec{}, 100000);
    CHECK(z.value == doctest::Approx(2.0).epsilon(0.05));
    CHECK(z.residual >= 0);
    AbscissaOptions narrow;
    narrow.points = 6;
    CHECK_THROWS_AS(estimate_abscissa(TrivialSpec{}, 1000, narrow), InsufficientDataError);
    AbscissaOptions bad;
    bad.lo = 0.8;
    bad.hi = 0.5;
    CHECK_THROWS_AS(estimate_abscissa(TrivialSpec{}, 1000, bad), ParameterError);
}

TEST_CASE("abscissa audit") {
    std::vector<AbscissaRecord> recs{{"ZHat", 2, 0, "closed form"}, {"ZHat2", 3, 0, "closed form"},
                                     {"C2", 1.0, 0.05, "estimate"}};
    auto rep = abscissa_bound_audit(recs, {{RelationKind::product, {"ZHat2", "ZHat", "ZHat"}, 1},
                                           {RelationKind::quotient, {"ZHat2", "ZHat"}, 1},
                                           {RelationKind::finite, {"C2"}, 1}});
    CHECK(rep.violations.empty());
    CHECK(rep.checks.size() == 4);
    CHECK(rep.checks[0].slack == doctest::Approx(1.0));

    // Free pro-3 groups: a(F_r) = (r - 1)/K'(3) + 1, index 3 subgroup of rank 3(r - 1) + 1.
    double kp = named_constant("K_prime_profile", {{"p", 3}}).value;
    for (unsigned r : {2u, 5u, 20u}) {
        double g = (r - 1) / kp + 1, h = 3.0 * (r - 1) / kp + 1;
        auto fr = abscissa_bound_audit({{"G", g, 0, ""}, {"H", h, 0, ""}},
                                       {{RelationKind::index_ratio, {"G", "H"}, 3},
                                        {RelationKind::open_subgroup, {"G", "H"}, 3}});
        CHECK(fr.violations.empty());
        CHECK(fr.checks[0].slack > 0);
    }
    auto bad = abscissa_bound_audit({{"G", 1.5, 0, ""}, {"Q", 2.5, 0, ""}}, {{RelationKind::quotient, {"G", "Q"}, 1}});
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].slack == doctest::Approx(-1.0));
    CHECK_THROWS_AS(abscissa_bound_audit({}, {{RelationKind::finite, {"X"}, 1}}), UsageError);
}

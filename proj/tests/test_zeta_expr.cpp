#include "doctest.h"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/rng.hpp"
#include "repzeta/zeta.hpp"
#include "repzeta/zeta_expr.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numeric>

using namespace repzeta;
using Z = ZetaExpr;

namespace {

Series counted(const GroupSpec& spec, std::uint64_t p, unsigned D) {
    return series_from_log_coeffs(to_rationals(local_log_coeffs(spec, p, D)), D);
}

Series closed(const std::string& preset, std::uint64_t p, unsigned D, unsigned param = 0) {
    return closed_form_local_factor(closed_form_preset(preset, param).expr, p, D);
}

unsigned order_mod(std::uint64_t a, std::uint64_t m) {
    unsigned k = 1;
    for (std::uint64_t x = a % m; x != 1; x = x * a % m) ++k;
    return k;
}

}  // namespace

TEST_CASE("Riemann atom evaluation") {
    double v = eval_closed_form(Z::riemann(0), 2.0, 1000000);
    CHECK(std::abs(v - boost::math::zeta(2.0)) < 1e-6);
    CHECK(log_eval_closed_form(Z::riemann(0), 2.0, 1000000) == doctest::Approx(std::log(v)));
    double shifted = eval_closed_form(Z::riemann(1), 3.5, 100000);
    CHECK(shifted == doctest::Approx(boost::math::zeta(2.5)).epsilon(1e-5));
    double dilated = eval_closed_form(Z::riemann(1, 2), 2.0, 100000);
    CHECK(dilated == doctest::Approx(boost::math::zeta(3.0)).epsilon(1e-6));
}

TEST_CASE("poles and divergent products are reported") {
    CHECK_THROWS_AS(eval_closed_form(Z::riemann(0), 1.0 + 1e-12, 1000), PoleError);
    CHECK_THROWS_AS(eval_closed_form(Z::riemann(1), 2.0, 1000), PoleError);
    CHECK_THROWS_AS(eval_closed_form(Z::riemann(0), 0.5, 1000), ConvergenceError);
    EvalOptions wide;
    wide.pole_epsilon = 0.1;
    CHECK_THROWS_AS(eval_closed_form(Z::riemann(0), 1.05, 1000, wide), PoleError);
    try {
        eval_closed_form(Z::product_of({Z::riemann(0), Z::riemann(2)}), 3.0, 1000);
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(std::string(e.what()).find("(zeta 2)") != std::string::npos);
    }
}

TEST_CASE("sharp expansion agrees with the unrolled product") {
    CounterRng rng(7, 0);
    for (unsigned n : {2u, 3u}) {
        ZetaExpr sharp = Z::sharp_of(n, Z::riemann(0));
        std::vector<ZetaExpr> parts;
        for (unsigned j = 0; j < n; ++j) parts.push_back(Z::riemann(static_cast<long>(j), n));
        ZetaExpr unrolled = Z::product_of(parts);
        for (int i = 0; i < 20; ++i) {
            double s = 1.3 + 3.0 * rng.uniform01();
            double a = eval_closed_form(sharp, s, 20000);
            double b = eval_closed_form(unrolled, s, 20000);
            CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
        }
    }
    double s = 2.5;
    double direct = eval_closed_form(Z::sharp_of(2, Z::riemann(0)), s, 1000000);
    CHECK(direct == doctest::Approx(boost::math::zeta(2 * s) * boost::math::zeta(2 * s - 1)).epsilon(1e-6));
}

TEST_CASE("Dedekind atom local data") {
    auto at5 = dedekind_local_data(4, {}, 5);
    CHECK(at5.f == 1);
    CHECK(at5.g == 2);
    CHECK(at5.e == 1);
    auto at3 = dedekind_local_data(4, {}, 3);
    CHECK(at3.f == 2);
    CHECK(at3.g == 1);
    auto at2 = dedekind_local_data(4, {}, 2);
    CHECK(at2.e == 2);
    CHECK(at2.f * at2.g == 1);
    CHECK(field_degree(4, {}) == 2);
    CHECK(field_degree(5, {}) == 4);
    CHECK(field_degree(5, {4}) == 2);
    CHECK(field_degree(7, {2}) == 2);
    // Unramified splitting is the order of p in (Z/m)^x.
    for (std::uint64_t m : {5, 7, 8, 12, 15}) {
        unsigned deg = field_degree(m, {});
        for (std::uint64_t p : primes_up_to(60)) {
            if (m % p == 0) continue;
            auto d = dedekind_local_data(m, {}, p);
            CHECK(d.e == 1);
            CHECK(d.f == order_mod(p, m));
            CHECK(d.e * d.f * d.g == deg);
        }
    }
    // Ramified primes still satisfy e f g = degree.
    for (std::uint64_t m : {9, 12, 20}) {
        unsigned deg = field_degree(m, {});
        for (std::uint64_t p : {2, 3, 5}) {
            auto d = dedekind_local_data(m, {}, p);
            CHECK(d.e * d.f * d.g == deg);
        }
    }
}

TEST_CASE("Dedekind atom local factor") {
    // Gaussian field at p = 5: (1 - T)^{-2}; at p = 3: (1 - T^2)^{-1}.
    auto s5 = closed_form_local_factor(Z::dedekind_atom(4, {}), 5, 6);
    auto s3 = closed_form_local_factor(Z::dedekind_atom(4, {}), 3, 6);
    for (unsigned i = 0; i <= 6; ++i) {
        CHECK(s5[i] == Rational(i + 1));
        CHECK(s3[i] == Rational(i % 2 ? 0 : 1));
    }
}

TEST_CASE("rational factor atoms") {
    CHECK(closed_form_local_factor(Z::rational_factor(2, 1, 0, 1), 3, 5) == series_one(5));
    auto at2 = closed_form_local_factor(Z::rational_factor(2, 1, 0, 1), 2, 5);
    CHECK(at2[0] == 1);
    CHECK(at2[1] == -1);
    for (unsigned i = 2; i <= 5; ++i) CHECK(at2[i] == 0);
    // (1 - 3^{-2s+1})^{-1} at p = 3 is sum of 3^k T^{2k}.
    auto inv = closed_form_local_factor(Z::rational_factor(3, 2, 1, -1), 3, 6);
    CHECK(inv[2] == 3);
    CHECK(inv[4] == 9);
    CHECK(inv[3] == 0);
    CHECK_THROWS_AS(validate(Z::rational_factor(1, 1, 0, 1)), ParameterError);
    CHECK_THROWS_AS(validate(Z::rational_factor(2, 1, 1, 1)), ParameterError);
    CHECK_THROWS_AS(validate(Z::rational_factor(2, 1, 0, 2)), ParameterError);
    CHECK_THROWS_AS(validate(Z::sharp_of(0, Z::riemann(0))), ParameterError);
}

TEST_CASE("ZHat closed form for ZHat^r") {
    const std::vector<GroupSpec> specs{ZHatSpec{}, ZHatPowerSpec{2}, ZHatPowerSpec{3}};
    for (unsigned r = 1; r <= 3; ++r) {
        auto preset = closed_form_preset("ZHat^r", r);
        for (std::uint64_t p : primes_up_to(13)) {
            INFO("r=", r, " p=", p);
            CHECK(closed_form_local_factor(preset.expr, p, 10) == counted(specs[r - 1], p, 10));
        }
    }
    auto zh = closed("ZHat^r", 2, 3, 1);
    CHECK(zh == series_mul(Series{1, -1, 0, 0}, series_inv(Series{1, -2, 0, 0})));
}

TEST_CASE("symmetric group degrees") {
    CHECK(symmetric_group_degrees(3) == std::vector<unsigned>{1, 1, 2});
    CHECK(symmetric_group_degrees(4) == std::vector<unsigned>{1, 1, 2, 3, 3});
    for (unsigned n = 1; n <= 7; ++n) {
        auto d = symmetric_group_degrees(n);
        std::uint64_t sq = 0;
        for (auto x : d) sq += std::uint64_t{x} * x;
        CHECK(BigInt(sq) == factorial(n));
    }
}

TEST_CASE("S4 closed form away from the ramified primes") {
    auto preset = closed_form_preset("S4");
    CHECK(preset.pole_order_at_one == 5);
    GroupSpec s4 = finite_group_preset("S4");
    for (std::uint64_t p : {5, 7, 11, 13}) CHECK(closed_form_local_factor(preset.expr, p, 10) == counted(s4, p, 10));
    // The published correction factors at 2 and 3 do not match the modular counts.
    CHECK(closed("S4", 2, 6) != counted(s4, 2, 6));
    CHECK(closed("S4", 3, 6) != counted(s4, 3, 6));
}

TEST_CASE("S_n shape builder against the group algebra") {
    auto s3 = closed_form_preset("S_n", 3);
    auto s5 = closed_form_preset("S_n", 5);
    CHECK(s5.excluded_primes == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(s5.pole_order_at_one == 7);
    for (std::uint64_t p : {5, 7, 11}) CHECK(closed_form_local_factor(s3.expr, p, 10) == counted(finite_group_preset("S3"), p, 10));
    CHECK(closed_form_local_factor(s5.expr, 7, 8) == counted(finite_group_preset("S5"), 7, 8));
}

TEST_CASE("cyclic group closed form") {
    for (std::uint64_t q : {2, 3, 5}) {
        auto preset = closed_form_preset("C_p", static_cast<unsigned>(q));
        for (std::uint64_t p : primes_up_to(13)) {
            INFO("C_", q, " p=", p);
            CHECK(closed_form_local_factor(preset.expr, p, 10) == counted(CyclicSpec{q}, p, 10));
        }
    }
}

TEST_CASE("virtually abelian closed forms away from excluded primes") {
    for (std::string name : {"ZwrC2", "Dinf", "BS1m1"}) {
        auto preset = closed_form_preset(name);
        GroupSpec spec = virtually_abelian_preset(name);
        for (std::uint64_t p : {3, 5, 7, 11}) {
            INFO(name, " p=", p);
            CHECK(closed_form_local_factor(preset.expr, p, 10) == counted(spec, p, 10));
        }
        CHECK(preset.excluded_primes == std::vector<std::uint64_t>{2});
    }
    // Exact correction at p = 2: (1 - 2^{1-s}) / (1 - 2^{-s}).
    auto c2 = series_mul(closed("ZwrC2", 2, 10), series_mul(Series{1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                                            series_inv(Series{1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0})));
    CHECK(c2 == counted(virtually_abelian_preset("ZwrC2"), 2, 10));
}

TEST_CASE("lamplighter closed forms hold at every prime") {
    for (std::uint64_t p : primes_up_to(13)) {
        CHECK(closed("C2wrZ", p, 10) == counted(LamplighterSpec{2}, p, 10));
        CHECK(closed("C3wrZ", p, 10) == counted(LamplighterSpec{3}, p, 10));
    }
}

TEST_CASE("published wreath product with C_3 formula disagrees with the counts") {
    for (std::uint64_t p : {5, 7})
        CHECK(closed("ZwrC3", p, 6) != counted(virtually_abelian_preset("ZwrC3"), p, 6));
}

TEST_CASE("eta variant has no rational local factor") {
    auto preset = closed_form_preset("eta_ZwrC2");
    CHECK_FALSE(preset.rational_local_factors);
    CHECK(preset.allow_fractional_powers);
    for (std::uint64_t p : {3, 5}) {
        auto z = closed_form_local_factor(preset.expr, p, 16);
        auto r = detect_rational_local_factor(log_coeffs_from_series(z), 6);
        CHECK(r.status == DetectionStatus::no_recurrence);
    }
    CHECK_THROWS_AS(validate(preset.expr), ParameterError);
    CHECK_NOTHROW(validate(preset.expr, true));
}

TEST_CASE("s-expression round trip") {
    for (const auto& name : closed_form_preset_names()) {
        auto preset = closed_form_preset(name, name == "S_n" ? 4 : (name == "C_p" ? 3 : (name == "ZHat^r" ? 2 : 0)));
        auto text = to_sexpr(preset.expr);
        auto back = parse_sexpr(text, preset.allow_fractional_powers);
        CHECK(back == preset.expr);
        CHECK(to_sexpr(back) == text);
    }
    auto zh = parse_sexpr("(product (zeta 1) (power (zeta 0) -1))");
    CHECK(zh == Z::product_of({Z::riemann(1), Z::power_of(Z::riemann(0), -1)}));
    CHECK(parse_sexpr("(sharp 3 (zeta 0))") == Z::sharp_of(3, Z::riemann(0)));
    CHECK(parse_sexpr("(dedekind 5 (h 4))") == Z::dedekind_atom(5, {4}));
    CHECK(parse_sexpr("  (ratfac 2 1 0 -1) ") == Z::rational_factor(2, 1, 0, -1));
    CHECK(parse_sexpr("(euler -1 0 1 4 3)") == Z::euler_atom(-1, 0, 1, 4, 3));
}

TEST_CASE("s-expression parse errors") {
    CHECK_THROWS_AS(parse_sexpr("(zeta"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(frob 1)"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(zeta 1) extra"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(zeta x)"), ParseError);
    CHECK_THROWS_AS(parse_sexpr(""), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(ratfac 2 0 1 1)"), ParameterError);
    CHECK_THROWS_AS(parse_sexpr("(power (zeta 0) 1/2)"), ParameterError);
    CHECK_NOTHROW(parse_sexpr("(power (zeta 0) 1/2)", true));
}

TEST_CASE("closed form evaluation matches the counted zeta function") {
    // Lamplighter: zeta(s-1) zeta_{C2wrZ} agrees with the truncated Euler product.
    auto preset = closed_form_preset("C2wrZ");
    double s = 4.0;
    double closed_log = log_eval_closed_form(preset.expr, s, 100000);
    auto counted_log = log_zeta_truncated(LamplighterSpec{2}, s, 100000, 1.0);
    CHECK(std::abs(closed_log - counted_log.value) <= counted_log.tail_bound + 1e-6);
}

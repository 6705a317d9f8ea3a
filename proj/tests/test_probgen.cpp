#include "doctest.h"

#include "repzeta/errors.hpp"
#include "repzeta/probgen.hpp"
#include "repzeta/zeta_expr.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>

using namespace repzeta;

namespace {

SemisimpleRingSpec ring(std::initializer_list<MatrixComponent> c) { return SemisimpleRingSpec{c}; }

// Invertible 2x2 matrices over F_p, by determinant.
std::uint64_t invertible_2x2(std::uint64_t p) {
    std::uint64_t n = 0;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            for (std::uint64_t c = 0; c < p; ++c)
                for (std::uint64_t d = 0; d < p; ++d) n += (a * d + p * p - b * c) % p != 0;
    return n;
}

// Pairs of 2x2 matrices over F_2 whose 2x4 concatenation has independent rows.
std::uint64_t generating_pairs_f2() {
    std::uint64_t n = 0;
    for (unsigned r1 = 0; r1 < 16; ++r1)
        for (unsigned r2 = 0; r2 < 16; ++r2) n += r1 != 0 && r2 != 0 && r1 != r2;
    return n;
}

}  // namespace

TEST_CASE("exact probabilities against brute force") {
    CHECK(exact_generation_probability(ring({{2, 2, 1}}), 1) == Rational(invertible_2x2(2), 16));
    CHECK(exact_generation_probability(ring({{2, 2, 1}}), 1) == Rational(3, 8));
    CHECK(exact_generation_probability(ring({{2, 3, 1}}), 1) == Rational(invertible_2x2(3), 81));
    CHECK(exact_generation_probability(ring({{2, 3, 1}}), 1) == Rational(16, 27));
    CHECK(exact_generation_probability(ring({{2, 2, 1}}), 2) == Rational(generating_pairs_f2(), 256));
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned k : {1u, 2u})
            for (unsigned ell = 1; ell <= 4; ++ell) {
                Rational q = rpow(Rational(BigInt(p)), k);
                CHECK(exact_generation_probability(ring({{1, p, k}}), ell) == 1 - 1 / rpow(q, ell));
            }
}

TEST_CASE("exact probability inverts the matrix algebra zeta function") {
    for (unsigned n = 1; n <= 4; ++n)
        for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}})
            for (unsigned ell = 1; ell <= 4; ++ell) {
                Rational prob = exact_generation_probability(ring({{n, p, k}}), ell);
                CHECK(1 / prob == eval_closed_form_exact(matrix_algebra_zeta(n, p, k), ell));
                CHECK(std::log(to_double(prob)) ==
                      doctest::Approx(log_generation_probability(ring({{n, p, k}}), ell)).epsilon(1e-12));
            }
}

TEST_CASE("multiplicativity and monotonicity") {
    auto a = ring({{2, 3, 1}}), b = ring({{1, 2, 2}, {3, 2, 1}});
    auto ab = ring({{2, 3, 1}, {1, 2, 2}, {3, 2, 1}});
    for (unsigned ell = 1; ell <= 3; ++ell) {
        CHECK(exact_generation_probability(ab, ell) ==
              exact_generation_probability(a, ell) * exact_generation_probability(b, ell));
        CHECK(exact_generation_probability(ab, ell + 1) > exact_generation_probability(ab, ell));
    }
    for (unsigned n = 1; n <= 3; ++n)
        for (unsigned k = 1; k <= 2; ++k) {
            auto base = exact_generation_probability(ring({{n, 2, k}}), 2);
            // Larger components have more columns to draw a full rank from.
            CHECK(exact_generation_probability(ring({{n + 1, 2, k}}), 2) > base);
            CHECK(exact_generation_probability(ring({{n, 2, k + 1}}), 2) > base);
            CHECK(exact_generation_probability(ring({{n, 2, k}, {1, 3, 1}}), 2) < base);
        }
    CHECK(exact_generation_probability(ring({}), 1) == 1);
}

TEST_CASE("invalid ring specs") {
    CHECK_THROWS_AS(exact_generation_probability(ring({{2, 4, 1}}), 1), ParameterError);
    CHECK_THROWS_AS(exact_generation_probability(ring({{0, 2, 1}}), 1), ParameterError);
    CHECK_THROWS_AS(exact_generation_probability(ring({{1, 2, 1}}), 0), ParameterError);
    CHECK_THROWS_AS(mc_generation_probability(ring({{1, 2, 1}}), 1, 0, 1), ParameterError);
}

TEST_CASE("Monte Carlo estimates") {
    auto m = mc_generation_probability(ring({{2, 2, 1}}), 1, 100000, 11);
    CHECK(std::abs(m.estimate - 0.375) <= 3 * m.stderr_);
    CHECK(m.stderr_ == doctest::Approx(std::sqrt(m.estimate * (1 - m.estimate) / 100000)));
    auto prod = mc_generation_probability(ring({{1, 2, 1}, {1, 3, 1}}), 2, 100000, 12);
    CHECK(std::abs(prod.estimate - 2.0 / 3.0) <= 3 * prod.stderr_);
    auto big = mc_generation_probability(ring({{2, 2, 1}, {1, 3, 1}}), 20, 20000, 13);
    double exact = to_double(exact_generation_probability(ring({{2, 2, 1}, {1, 3, 1}}), 20));
    CHECK(std::abs(big.estimate - 1.0) <= 3 * std::sqrt(exact * (1 - exact) / 20000) + 1e-12);
}

TEST_CASE("Monte Carlo is reproducible across thread counts") {
    auto spec = ring({{2, 3, 1}, {1, 5, 2}});
    auto one = mc_generation_probability(spec, 1, 20000, 99, 1);
    auto four = mc_generation_probability(spec, 1, 20000, 99, 4);
    CHECK(one.successes == four.successes);
    CHECK(mc_generation_probability(spec, 1, 20000, 100, 2).successes != one.successes);
}

TEST_CASE("Monte Carlo seed sweep stays within four standard errors") {
    auto spec = ring({{2, 3, 1}});
    double exact = 16.0 / 27.0;
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto m = mc_generation_probability(spec, 1, 2000, seed, 1);
        inside += std::abs(m.estimate - exact) <= 4 * m.stderr_;
    }
    CHECK(inside >= 99);
}

TEST_CASE("truncated semisimple quotient") {
    auto triv = truncated_semisimple_quotient(TrivialSpec{}, 10);
    REQUIRE(triv.components.size() == 4);
    for (const auto& c : triv.components) {
        CHECK(c.n == 1);
        CHECK(c.k == 1);
    }
    // C_3 over F_2: trivial module plus F_4 from the two primitive characters.
    auto c3 = truncated_semisimple_quotient(CyclicSpec{3}, 4);
    int f4 = 0;
    for (const auto& c : c3.components) f4 += c.p == 2 && c.k == 2;
    CHECK(f4 == 1);
    CHECK(finite_ring_components(MatrixAlgebraSpec{2, 3, 1})->components.size() == 1);
    CHECK_FALSE(finite_ring_components(ZHatSpec{}).has_value());
}

TEST_CASE("reciprocal identity for C_2") {
    auto r = verify_reciprocal_identity(CyclicSpec{2}, 2, 1000, 20000, 5);
    double full = 1 / (boost::math::zeta(2.0) * boost::math::zeta(2.0) * 0.75);
    CHECK(full == doctest::Approx(0.49277).epsilon(1e-4));
    CHECK(r.exact.has_value());
    CHECK(std::abs(r.exact_value - r.zeta_reciprocal) < 1e-4);
    CHECK(std::abs(r.exact_value - full) < 5e-4);
    CHECK(r.exact_within_zeta);
    CHECK(r.mc_within_4sigma);
    CHECK(r.zeta_reciprocal_lo <= full);
}

TEST_CASE("reciprocal identity for the trivial group and a matrix algebra") {
    auto t = verify_reciprocal_identity(TrivialSpec{}, 2, 10000, 0, 1);
    CHECK(std::abs(t.exact_value - 6 / (M_PI * M_PI)) < 1e-4);
    CHECK(t.exact_within_zeta);
    auto m = verify_reciprocal_identity(MatrixAlgebraSpec{2, 3, 1}, 1, 2, 5000, 1);
    CHECK_FALSE(m.truncated);
    CHECK(*m.exact == Rational(16, 27));
    CHECK(m.zeta_reciprocal == doctest::Approx(16.0 / 27.0));
    CHECK(m.mc_within_4sigma);
    CHECK_THROWS_AS(verify_reciprocal_identity(TrivialSpec{}, 1, 100, 0, 1), ConvergenceError);
    CHECK_THROWS_AS(verify_reciprocal_identity(ZHatSpec{}, 2, 100, 0, 1), ConvergenceError);
}

TEST_CASE("report serialization") {
    auto r = verify_reciprocal_identity(TrivialSpec{}, 3, 100, 100, 7);
    auto j = to_json(r);
    CHECK(j["mc"]["seed"] == 7);
    CHECK(j["family"] == "Trivial");
    CHECK(j.contains("zeta_reciprocal"));
    CHECK(report_csv_header().size() == report_csv_row(r).size());
}

#include "doctest.h"

#include "oracles.hpp"
#include "repzeta/clifford.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/repcount.hpp"

#include <cmath>

using namespace repzeta;

namespace {

BigInt count(const GroupSpec& s, std::uint64_t p, unsigned j, unsigned n) { return count_abs_irr(s, {p, j, n}).value; }

std::vector<GroupSpec> exact_families() {
    return {TrivialSpec{},
            ZHatSpec{},
            ZHatPowerSpec{2},
            ZHatPowerSpec{3},
            ZpPowerSpec{3, 2},
            CyclicSpec{6},
            FiniteAbelianSpec{{2, 4}},
            MatrixAlgebraSpec{2, 2, 2},
            LamplighterSpec{2},
            LamplighterSpec{3},
            virtually_abelian_preset("ZwrC2"),
            virtually_abelian_preset("Dinf"),
            virtually_abelian_preset("BS1m1"),
            virtually_abelian_preset("ZwrC3"),
            finite_group_preset("S3"),
            finite_group_preset("S4"),
            RingProductSpec{{ZHatSpec{}, MatrixAlgebraSpec{2, 3, 1}}},
            GroupProductSpec{{ZHatSpec{}, virtually_abelian_preset("Dinf")}}};
}

std::vector<std::pair<std::uint64_t, unsigned>> prime_powers_up_to(std::uint64_t limit) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (const auto& pp : sieve_prime_powers(limit)) out.push_back({pp.p, pp.k});
    return out;
}

}  // namespace

TEST_CASE("closed-form family counts") {
    CHECK(count(ZHatSpec{}, 2, 3, 1) == 7);
    CHECK(count(MatrixAlgebraSpec{2, 2, 2}, 2, 4, 2) == 2);
    CHECK(count(MatrixAlgebraSpec{2, 2, 2}, 2, 3, 2) == 0);
    CHECK(count(MatrixAlgebraSpec{2, 2, 2}, 3, 4, 2) == 0);
    CHECK(count(LamplighterSpec{2}, 3, 1, 1) == 4);
    CHECK(count(virtually_abelian_preset("ZwrC2"), 5, 1, 2) == 16);
    CHECK(count(ZpPowerSpec{3, 2}, 2, 2, 1) == 9);
    CHECK(count(TrivialSpec{}, 7, 2, 2) == 0);
    CHECK(count(TrivialSpec{}, 7, 2, 1) == 1);
    CHECK(count(CyclicSpec{2}, 2, 1, 1) == 1);
    CHECK(count(CyclicSpec{2}, 3, 1, 1) == 2);
    CHECK(count(ZHatPowerSpec{2}, 3, 1, 1) == 4);
}

TEST_CASE("matrix algebra counts vanish unless k divides j") {
    for (unsigned k = 1; k <= 4; ++k)
        for (unsigned j = 1; j <= 12; ++j)
            CHECK(count(MatrixAlgebraSpec{3, 5, k}, 5, j, 3) == (j % k == 0 ? k : 0));
}

TEST_CASE("Dirichlet convolution") {
    CHECK(convolve_product(ZHatSpec{}, ZHatSpec{}, {3, 1, 1}).value == 4);
    GroupSpec ma = MatrixAlgebraSpec{2, 2, 1};
    CHECK(convolve_product(ma, ma, {2, 1, 4}).value == 1);
    CHECK(convolve_product(ma, ma, {2, 1, 2}).value == 0);
    auto fams = exact_families();
    for (const auto& b : fams) {
        for (unsigned n = 1; n <= 4; ++n)
            CHECK(convolve_product(TrivialSpec{}, b, {5, 1, n}).value == count(b, 5, 1, n));
    }
    CounterRng rng(17, 0);
    std::vector<GroupSpec> small = {TrivialSpec{},  ZHatSpec{},     LamplighterSpec{2}, virtually_abelian_preset("ZwrC2"),
                                    CyclicSpec{3}, ZpPowerSpec{2, 1}, virtually_abelian_preset("Dinf")};
    auto pps = prime_powers_up_to(16);
    for (int t = 0; t < 40; ++t) {
        const auto& a = small[rng.below(small.size())];
        const auto& b = small[rng.below(small.size())];
        const auto& c = small[rng.below(small.size())];
        auto [p, j] = pps[rng.below(pps.size())];
        unsigned n = 1 + static_cast<unsigned>(rng.below(6));
        CountQuery q{p, j, n};
        CHECK(convolve_product(a, b, q).value == convolve_product(b, a, q).value);
        GroupSpec ab = GroupProductSpec{{a, b}};
        GroupSpec bc = GroupProductSpec{{b, c}};
        CHECK(convolve_product(ab, c, q).value == convolve_product(a, bc, q).value);
    }
}

TEST_CASE("periodic orbit counts") {
    CHECK(periodic_orbit_count(2, 3) == 6);
    CHECK(periodic_orbit_count(2, 4) == 12);
    CHECK(periodic_orbit_count(2, 1) == 2);
    for (unsigned n = 1; n <= 24; ++n) {
        BigInt s = 0;
        for (auto d : divisors(n)) s += periodic_orbit_count(2, static_cast<unsigned>(d));
        CHECK(s == ipow(BigInt(2), n));
    }
    for (unsigned n = 1; n <= 12; ++n) CHECK(periodic_orbit_count(2, n) == oracle::exact_period_sequences(2, n));
    for (unsigned n = 1; n <= 8; ++n) CHECK(periodic_orbit_count(3, n) == oracle::exact_period_sequences(3, n));
}

TEST_CASE("lamplighter closed forms agree with orbit enumeration") {
    CHECK(lamplighter_orbit_oracle(2, 3, 2) == 2);
    // Three constant sequences, each with six scalars.
    CHECK(lamplighter_orbit_oracle(3, 7, 1) == 18);
    CHECK(count(LamplighterSpec{3}, 7, 1, 1) == 18);
    for (const auto& [p, j] : prime_powers_up_to(49)) {
        if (p == 2) continue;
        std::uint64_t q = static_cast<std::uint64_t>(ipow(BigInt(p), j));
        for (unsigned n = 1; n <= 12; ++n) CHECK(count(LamplighterSpec{2}, p, j, n) == lamplighter_orbit_oracle(2, q, n));
    }
    for (const auto& [p, j] : prime_powers_up_to(32)) {
        std::uint64_t q = static_cast<std::uint64_t>(ipow(BigInt(p), j));
        for (unsigned n = 1; n <= 9; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            CHECK(count(LamplighterSpec{3}, p, j, n) == lamplighter_orbit_oracle(3, q, n));
        }
    }
    CHECK(count(LamplighterSpec{2}, 2, 3, 1) == 7);
    CHECK(count(LamplighterSpec{2}, 2, 3, 2) == 0);
}

TEST_CASE("Smith diagonal kernel sizes") {
    IntMatrix m = {{2, 4}, {6, 8}};
    auto d = smith_diagonal(m);
    CHECK(d[0] * d[1] == 8);
    CHECK(kernel_size_mod({{2}}, 10) == 2);
    CHECK(kernel_size_mod({{0, 0}}, 7) == 49);
    CHECK(kernel_size_mod({{1, 1}}, 7) == 7);
    // Brute force a few random small systems.
    CounterRng rng(23, 0);
    for (int t = 0; t < 50; ++t) {
        IntMatrix a(3, std::vector<BigInt>(2));
        std::vector<std::vector<long long>> raw(3, std::vector<long long>(2));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) {
                raw[i][j] = static_cast<long long>(rng.below(21)) - 10;
                a[i][j] = raw[i][j];
            }
        long long N = 2 + static_cast<long long>(rng.below(30));
        long long brute = 0;
        for (long long x = 0; x < N; ++x)
            for (long long y = 0; y < N; ++y) {
                bool ok = true;
                for (int i = 0; i < 3; ++i) ok = ok && ((raw[i][0] * x + raw[i][1] * y) % N + N) % N == 0;
                brute += ok;
            }
        CHECK(kernel_size_mod(a, N) == brute);
    }
}

TEST_CASE("virtually abelian counts agree with character enumeration") {
    auto zwr = virtually_abelian_preset("ZwrC2");
    CHECK(virtually_abelian_orbit_oracle(zwr, 5, 2) == 16);
    CHECK(virtually_abelian_orbit_oracle(zwr, 7, 1) == 12);
    CHECK(virtually_abelian_orbit_oracle(virtually_abelian_preset("Dinf"), 5, 1) == 4);
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
        for (const char* name : {"ZwrC2", "Dinf", "BS1m1"}) {
            auto s = virtually_abelian_preset(name);
            for (unsigned n = 1; n <= 3; ++n) {
                CAPTURE(name);
                CAPTURE(q);
                CAPTURE(n);
                CHECK(clifford_count(s, q, n) == virtually_abelian_orbit_oracle(s, q, n));
            }
        }
    }
    auto c3 = virtually_abelian_preset("ZwrC3");
    for (std::uint64_t q : {2, 3, 4, 5})
        for (unsigned n = 1; n <= 3; ++n) CHECK(clifford_count(c3, q, n) == virtually_abelian_orbit_oracle(c3, q, n));
}

TEST_CASE("Z wr C2 closed form") {
    auto s = virtually_abelian_preset("ZwrC2");
    for (const auto& [p, j] : prime_powers_up_to(20000)) {
        BigInt q = ipow(BigInt(p), j);
        if (p == 2) {
            CHECK(count(s, p, j, 1) == q - 1);
        } else {
            CHECK(count(s, p, j, 1) == 2 * (q - 1));
            CHECK(count(s, p, j, 2) == (q - 1) * (q - 1));
        }
        CHECK(count(s, p, j, 3) == 0);
    }
    CHECK(count(virtually_abelian_preset("Dinf"), 5, 1, 1) == 4);
}

TEST_CASE("irreducible counts") {
    CHECK(count_irr(ZHatSpec{}, {2, 1, 1}).value == 1);
    CHECK(count_irr(ZHatSpec{}, {2, 1, 2}).value == 1);
    CHECK(count_irr(TrivialSpec{}, {11, 1, 1}).value == 1);
    CHECK(count_irr(TrivialSpec{}, {11, 1, 2}).value == 0);
    // Over F_7 the characters of C4 of order 4 fuse into one 2-dimensional irreducible.
    CHECK(count_irr(finite_group_preset("C4"), {7, 1, 2}).value == 1);
    for (const auto& spec : exact_families()) {
        for (const auto& [p, j] : prime_powers_up_to(32)) {
            for (unsigned n = 1; n <= 8; ++n) {
                std::uint64_t q = static_cast<std::uint64_t>(ipow(BigInt(p), j));
                if (std::pow(static_cast<double>(q), n) > 1e12) continue;
                BigInt irr, abs_irr;
                try {
                    irr = count_irr(spec, {p, j, n}).value;
                    abs_irr = count(spec, p, j, n);
                } catch (const ModularCaseError&) {
                    continue;
                }
                CHECK(irr >= abs_irr);
            }
        }
    }
}

TEST_CASE("counts stay inside the documented growth envelope") {
    for (const auto& spec : exact_families()) {
        auto u = default_uberg(spec);
        REQUIRE(u.known);
        for (const auto& [p, j] : prime_powers_up_to(64)) {
            double q = std::pow(static_cast<double>(p), j);
            for (unsigned n = 1; n <= 8; ++n) {
                if (std::pow(q, n) > 1e12) continue;
                double c = 0;
                try {
                    c = to_double(count(spec, p, j, n));
                } catch (const ModularCaseError&) {
                    continue;
                }
                CAPTURE(family_name(spec));
                CAPTURE(q);
                CAPTURE(n);
                CHECK(c <= u.K * std::pow(q, u.c * n) * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("SL2 product streams") {
    SL2ProductSpec g{1.0, false};
    CHECK(sl2_copies(g, 5) == 5);
    CHECK(sl2_copies(g, 3) == 0);
    CHECK(count_abs_irr(g, {5, 1, 2}, CountMode::characteristic_only).value == 5);
    CHECK(count_abs_irr(g, {5, 1, 4}, CountMode::characteristic_only).value == 15);
    CHECK(count_abs_irr(g, {5, 1, 4}, CountMode::characteristic_only).exactness == Exactness::lower_bound);
    CHECK(count_abs_irr(g, {3, 1, 2}, CountMode::characteristic_only).value == 0);
    CHECK(count_abs_irr(g, {7, 1, 1}).value == 1);
    CHECK_THROWS_AS(count_abs_irr(g, {5, 1, 2}), CapabilityError);
    auto ub = count_abs_irr(g, {5, 1, 2}, CountMode::upper_bound);
    CHECK(ub.exactness == Exactness::upper_bound);
    CHECK(ub.value >= 5);
    // Brute force: ordered choices of one representation per copy.
    for (std::uint64_t p : {5, 7}) {
        std::uint64_t copies = sl2_copies(g, p);
        for (unsigned n = 1; n <= 12; ++n) {
            // Count multisets of dimensions via recursion over copies.
            std::function<BigInt(std::uint64_t, unsigned)> rec = [&](std::uint64_t left, unsigned rem) -> BigInt {
                if (left == 0) return rem == 1 ? 1 : 0;
                BigInt s = 0;
                for (unsigned d = 1; d <= p; ++d)
                    if (rem % d == 0) s += rec(left - 1, rem / d);
                return s;
            };
            CHECK(sl2_characteristic_count(g, p, n) == rec(copies, n));
        }
    }
}

TEST_CASE("free pro-p bounds") {
    FreeProPSpec f{3, 2};
    CHECK(count_abs_irr(f, {7, 1, 1}).value == 9);
    CHECK(count_abs_irr(f, {7, 1, 2}).value == 0);
    CHECK(count_abs_irr(f, {5, 1, 3}).value == 0);
    CHECK_THROWS_AS(count_abs_irr(f, {7, 1, 3}), CapabilityError);
    auto r = count_abs_irr(f, {7, 1, 3}, CountMode::upper_bound);
    CHECK(r.exactness == Exactness::upper_bound);
    CHECK(r.value == 243);
}

TEST_CASE("spec JSON round trip") {
    std::vector<GroupSpec> all = exact_families();
    all.push_back(SL2ProductSpec{1.0, false});
    all.push_back(SL2ProductSpec{0.5, true});
    all.push_back(FreeProPSpec{3, 4});
    all.push_back(finite_group_preset("S5"));
    for (const auto& s : all) {
        auto j1 = spec_to_json(s);
        auto j2 = spec_to_json(spec_from_json(j1));
        CHECK(j1 == j2);
        CHECK(spec_to_json(parse_spec(j1.dump())) == j1);
    }
    CHECK(family_name(parse_spec(R"({"family":"FreeAbelianPro","params":{"r":2}})")) == "ZHatPower");
    CHECK(family_name(parse_spec(R"({"family":"VirtuallyAbelian","params":{"preset":"ZwrC2"}})")) == "VirtuallyAbelian");
    CHECK_THROWS_AS(parse_spec(R"({"family":"Nope"})"), ParseError);
    CHECK_THROWS_AS(parse_spec("{"), ParseError);
    CHECK_THROWS_AS(parse_spec(R"({"family":"Lamplighter","params":{"a":5}})"), ParameterError);
    CHECK_THROWS_AS(parse_spec(R"({"family":"ZHatPower","params":{}})"), ParameterError);
    CHECK_THROWS_AS(parse_spec(R"({"family":"VirtuallyAbelian","params":{"d":1,"order":2,"action":[[2]]}})"),
                    ParameterError);
    CHECK_THROWS_AS(
        parse_spec(R"({"family":"VirtuallyAbelian","params":{"d":1,"order":2,"actions":[[[-1]],[[-1]]]}})"),
        UnsupportedSpecError);
}

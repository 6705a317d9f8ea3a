#include "doctest.h"

#include "repzeta/errors.hpp"
#include "repzeta/gf.hpp"

#include <cmath>
#include <set>

using namespace repzeta;

TEST_CASE("field moduli") {
    CHECK(make_field(2, 2)->desc().modulus == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(make_field(2, 1)->desc().modulus == std::vector<std::uint64_t>{0, 1});
    CHECK(make_field(3, 2)->desc().modulus == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(make_field(2, 3)->desc().modulus == std::vector<std::uint64_t>{1, 1, 0, 1});
    CHECK_THROWS_AS(make_field(4, 1), DomainError);
}

TEST_CASE("irreducible test counts monic irreducibles") {
    // Number of monic irreducibles of degree d over F_p by the necklace formula.
    auto necklace = [](std::uint64_t p, unsigned d) {
        long long s = 0;
        for (unsigned e = 1; e <= d; ++e) {
            if (d % e) continue;
            unsigned m = d / e;
            int mu = 1;
            unsigned t = m;
            for (unsigned f = 2; f <= t; ++f) {
                if (t % f) continue;
                t /= f;
                if (t % f == 0) mu = 0;
                mu = -mu;
            }
            if (m == 1) mu = 1;
            s += mu * static_cast<long long>(std::pow(p, e));
        }
        return s / d;
    };
    for (std::uint64_t p : {2, 3, 5}) {
        for (unsigned d = 1; d <= 5; ++d) {
            std::uint64_t total = 1;
            for (unsigned i = 0; i < d; ++i) total *= p;
            long long count = 0;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                PrimePoly f;
                std::uint64_t v = idx;
                for (unsigned i = 0; i < d; ++i) {
                    f.push_back(v % p);
                    v /= p;
                }
                f.push_back(1);
                if (is_irreducible_mod_p(f, p)) ++count;
            }
            CHECK(count == necklace(p, d));
        }
    }
}

TEST_CASE("field axioms and inverses exhaustively for small fields") {
    for (auto [p, j] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 2}}) {
        auto F = make_field(p, j);
        std::uint64_t q = F->q();
        for (GF::Elem a = 1; a < q; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
        // Multiplicative group has exponent q - 1.
        for (GF::Elem a = 1; a < q; ++a) CHECK(F->pow(a, q - 1) == 1);
        CounterRng rng(7, p * 100 + j);
        for (int t = 0; t < 300; ++t) {
            GF::Elem a = rng.below(q), b = rng.below(q), c = rng.below(q);
            CHECK(F->add(a, b) == F->add(b, a));
            CHECK(F->mul(a, b) == F->mul(b, a));
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->add(a, F->neg(a)) == 0);
        }
    }
}

TEST_CASE("untabled arithmetic agrees with field identities") {
    auto F = make_field(2, 23);
    CounterRng rng(3, 1);
    for (int t = 0; t < 200; ++t) {
        GF::Elem a = rng.below(F->q() - 1) + 1;
        CHECK(F->mul(a, F->inv(a)) == 1);
        CHECK(F->pow(a, F->q()) == a);
    }
}

TEST_CASE("Frobenius is additive and fixes exactly the prime field") {
    for (auto [p, j] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {3, 3}, {5, 2}, {7, 2}}) {
        auto F = make_field(p, j);
        std::set<GF::Elem> fixed;
        for (GF::Elem a = 0; a < F->q(); ++a) {
            if (F->frobenius(a) == a) fixed.insert(a);
            GF::Elem b = (a * 31 + 7) % F->q();
            CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
        }
        CHECK(fixed.size() == p);
        for (std::uint64_t c = 0; c < p; ++c) CHECK(fixed.count(F->from_int(static_cast<long long>(c))));
    }
}

TEST_CASE("subfield containment") {
    CHECK(subfield_contained(2, 6));
    CHECK_FALSE(subfield_contained(4, 6));
}

TEST_CASE("rank over F2 of all 2x2 matrices") {
    auto F = make_field(2, 1);
    int full = 0;
    for (int mask = 0; mask < 16; ++mask) {
        Matrix m(2, 2);
        for (int i = 0; i < 4; ++i) m.a[i] = (mask >> i) & 1;
        if (rank(*F, m) == 2) ++full;
    }
    CHECK(full == 6);
}

TEST_CASE("rank properties on random matrices") {
    for (auto [p, j] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 3}, {5, 2}}) {
        auto F = make_field(p, j);
        CounterRng rng(11, p + j);
        for (int t = 0; t < 200; ++t) {
            std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
            Matrix m = random_matrix(*F, r, c, rng);
            std::size_t rk = rank(*F, m);
            CHECK(rk == rank(*F, transpose(m)));
            CHECK(rk <= std::min(r, c));
        }
    }
}

TEST_CASE("random matrices are deterministic per seed") {
    auto F = make_field(3, 1);
    CounterRng a(42, 5), b(42, 5), c(43, 5);
    Matrix ma = random_matrix(*F, 4, 4, a);
    Matrix mb = random_matrix(*F, 4, 4, b);
    Matrix mc = random_matrix(*F, 4, 4, c);
    CHECK(ma.a == mb.a);
    CHECK(ma.a != mc.a);
}

TEST_CASE("random 1x1 entries over F2 are balanced") {
    auto F = make_field(2, 1);
    CounterRng rng(2024, 0);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(random_matrix(*F, 1, 1, rng).a[0]);
    double mean = sum / n;
    CHECK(mean >= 0.497);
    CHECK(mean <= 0.503);
}

TEST_CASE("rank-2 frequency of random 2x2 matrices over F3") {
    auto F = make_field(3, 1);
    CounterRng rng(99, 0);
    const int n = 100000;
    int full = 0;
    for (int i = 0; i < n; ++i) full += rank(*F, random_matrix(*F, 2, 2, rng)) == 2;
    double p = 48.0 / 81.0;
    double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(full / static_cast<double>(n) - p) <= 3 * sigma);
}

TEST_CASE("squarefree factorization reassembles the polynomial") {
    for (auto [p, j] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {7, 1}}) {
        auto F = make_field(p, j);
        CounterRng rng(5, p * 10 + j);
        // x^(q^3) - x is the product of all monic irreducibles of degree 1 and 3.
        std::uint64_t q = F->q();
        std::uint64_t n = q * q * q;
        if (n > 400) continue;
        Poly f(n + 1, 0);
        f[n] = 1;
        f[1] = F->neg(1);
        auto fac = factor_squarefree(*F, f, rng);
        Poly prod{1};
        std::size_t deg1 = 0;
        for (const auto& g : fac) {
            CHECK((poly_degree(g) == 1 || poly_degree(g) == 3));
            if (poly_degree(g) == 1) ++deg1;
            prod = poly_mul(*F, prod, g);
        }
        CHECK(deg1 == q);
        CHECK(prod == f);
    }
}

#include "repzeta/clifford.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace repzeta {

namespace {

using boost::multiprecision::abs;

IntMatrix to_big(const std::vector<std::vector<long long>>& m) {
    IntMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long long x : m[i]) out[i].push_back(BigInt(x));
    return out;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m[0].size(), std::vector<BigInt>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    std::size_t r = a.size(), c = b[0].size(), inner = b.size();
    IntMatrix out(r, std::vector<BigInt>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

IntMatrix identity(std::size_t d) {
    IntMatrix id(d, std::vector<BigInt>(d, 0));
    for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
    return id;
}

}  // namespace

std::vector<BigInt> smith_diagonal(IntMatrix m) {
    const std::size_t R = m.size(), C = R ? m[0].size() : 0, L = std::min(R, C);
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < L; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = R, pj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (m[i][j] != 0 && (pi == R || abs(m[i][j]) < abs(m[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == R) {
                diag.resize(L, 0);
                return diag;
            }
            std::swap(m[t], m[pi]);
            for (auto& row : m) std::swap(row[t], row[pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m[i][t] == 0) continue;
                BigInt f = m[i][t] / m[t][t];
                for (std::size_t j = t; j < C; ++j) m[i][j] -= f * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m[t][j] == 0) continue;
                BigInt f = m[t][j] / m[t][t];
                for (std::size_t i = t; i < R; ++i) m[i][j] -= f * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        diag.push_back(abs(m[t][t]));
    }
    return diag;
}

BigInt kernel_size_mod(const IntMatrix& m, const BigInt& N) {
    const std::size_t C = m.empty() ? 0 : m[0].size();
    auto diag = smith_diagonal(m);
    BigInt size = 1;
    for (std::size_t i = 0; i < C; ++i) {
        if (i < diag.size() && diag[i] != 0)
            size *= boost::multiprecision::gcd(diag[i], N);
        else
            size *= N;
    }
    return size;
}

BigInt clifford_count(const VirtuallyAbelianSpec& s, const BigInt& q, unsigned n) {
    const unsigned m = s.order, d = s.d;
    if (n == 0 || m % n != 0) return 0;
    const BigInt k = m / n;
    const BigInt N = boost::multiprecision::pow(q, m) - 1;
    const IntMatrix A = transpose(to_big(s.action));
    const IntMatrix I = identity(d);

    std::vector<IntMatrix> powers{I};
    for (unsigned i = 1; i <= n; ++i) powers.push_back(multiply(powers.back(), A));

    BigInt total = 0;
    for (auto e2 : divisors(n)) {
        int mu = moebius(n / e2);
        if (mu == 0) continue;
        for (unsigned i = 0; i < n; ++i) {
            IntMatrix B;
            for (unsigned r = 0; r < d; ++r) {
                std::vector<BigInt> row(d + 1, 0);
                for (unsigned c = 0; c < d; ++c) row[c] = powers[e2][r][c] - I[r][c];
                B.push_back(row);
            }
            for (unsigned r = 0; r < d; ++r) {
                std::vector<BigInt> row(d + 1, 0);
                for (unsigned c = 0; c < d; ++c) row[c] = q * I[r][c] - powers[i][r][c];
                B.push_back(row);
            }
            std::vector<BigInt> unit(d + 1, 0);
            unit[d] = q - 1;
            B.push_back(unit);
            std::vector<BigInt> ext(d + 1, 0);
            for (unsigned c = 0; c < d; ++c) ext[c] = -BigInt(s.translation[c]);
            ext[d] = k;
            B.push_back(ext);
            BigInt K = kernel_size_mod(B, N);
            if (mu > 0)
                total += K;
            else
                total -= K;
        }
    }
    if (total % n != 0) throw CapabilityError("VirtuallyAbelian: orbit count not divisible by orbit size");
    return total / n;
}

BigInt virtually_abelian_orbit_oracle(const VirtuallyAbelianSpec& s, std::uint64_t q, unsigned n, std::uint64_t cap) {
    const unsigned m = s.order, d = s.d;
    if (m % n != 0) return 0;
    BigInt Nbig = ipow(q, m) - 1;
    if (!fits_u64(Nbig)) throw CapabilityError("oracle: character group too large");
    const auto N = static_cast<std::uint64_t>(Nbig);
    double space = 1;
    for (unsigned i = 0; i < d; ++i) space *= static_cast<double>(N);
    if (space > static_cast<double>(cap)) throw CapabilityError("oracle: enumeration cap exceeded");

    auto mulmod_u = [N](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % N);
    };
    auto norm = [N](long long x) {
        long long r = x % static_cast<long long>(N);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(N) : r);
    };
    // A = M^T acting on exponent vectors.
    auto act = [&](const std::vector<std::uint64_t>& v) {
        std::vector<std::uint64_t> w(d, 0);
        for (unsigned r = 0; r < d; ++r)
            for (unsigned c = 0; c < d; ++c) w[r] = (w[r] + mulmod_u(norm(s.action[c][r]), v[c])) % N;
        return w;
    };

    const std::uint64_t step = N / (q - 1);
    std::vector<std::uint64_t> v(d, 0);
    std::uint64_t total = 0;
    for (;;) {
        std::vector<std::vector<std::uint64_t>> orbit{v};
        for (unsigned i = 1; i < m; ++i) orbit.push_back(act(orbit.back()));
        unsigned stab = 0;
        for (const auto& w : orbit) stab += (w == v);
        if (m / stab == n) {
            std::vector<std::uint64_t> qv(d);
            for (unsigned c = 0; c < d; ++c) qv[c] = mulmod_u(q % N, v[c]);
            bool stable = false;
            for (const auto& w : orbit) stable = stable || (w == qv);
            if (stable) {
                std::uint64_t target = 0;
                for (unsigned c = 0; c < d; ++c) target = (target + mulmod_u(norm(s.translation[c]), v[c])) % N;
                for (std::uint64_t t = 0; t + 1 < q; ++t) {
                    std::uint64_t w = t * step;
                    if (mulmod_u(stab % N, w) == target) ++total;
                }
            }
        }
        unsigned c = 0;
        while (c < d && ++v[c] == N) v[c++] = 0;
        if (c == d) break;
    }
    if (total % n != 0) throw CapabilityError("oracle: orbit count not divisible by orbit size");
    return total / n;
}

}  // namespace repzeta

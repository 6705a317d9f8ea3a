#include "repzeta/repcount.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/clifford.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/wedderburn.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace repzeta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Exactness combine(Exactness a, Exactness b) {
    if (a == Exactness::exact) return b;
    if (b == Exactness::exact || a == b) return a;
    throw CapabilityError("cannot combine lower and upper bounds");
}

CountResult exact(const BigInt& v) { return {v, Exactness::exact}; }

BigInt field_size(std::uint64_t p, unsigned j) { return ipow(BigInt(p), j); }

// Sum over k of C(copies, k) times the ordered factorisations of n into k
// factors from [2, top].
BigInt tensor_count(std::uint64_t copies, std::uint64_t top, unsigned n) {
    if (n == 1) return 1;
    auto divs = divisors(n);
    std::map<std::uint64_t, std::size_t> pos;
    for (std::size_t i = 0; i < divs.size(); ++i) pos[divs[i]] = i;
    // g[k][i]: ordered factorisations of divs[i] into k factors.
    std::vector<std::vector<BigInt>> g{std::vector<BigInt>(divs.size(), 0)};
    g[0][0] = 1;
    BigInt total = 0;
    for (unsigned k = 1; (1u << k) <= n; ++k) {
        std::vector<BigInt> next(divs.size(), 0);
        for (std::size_t i = 0; i < divs.size(); ++i) {
            if (g[k - 1][i] == 0) continue;
            for (std::uint64_t f = 2; f <= top && divs[i] * f <= n; ++f) {
                if (n % (divs[i] * f) != 0) continue;
                next[pos[divs[i] * f]] += g[k - 1][i];
            }
        }
        g.push_back(next);
        if (k <= copies) total += binomial(BigInt(copies), k) * next.back();
    }
    return total;
}

struct GroupCacheEntry {
    std::shared_ptr<PermGroup> group;
    std::uint64_t exponent = 1;
    RamifiedOverride override_data;
    std::map<std::uint64_t, SemisimpleDecomposition> by_residue;
};

std::mutex& group_cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::string, GroupCacheEntry>& group_cache() {
    static std::map<std::string, GroupCacheEntry> cache;
    return cache;
}

BigInt finite_group_count(const FiniteGroupSpec& g, const CountQuery& q) {
    const std::string key = spec_to_json(GroupSpec(g)).dump();
    std::lock_guard<std::mutex> lock(group_cache_mutex());
    auto& cache = group_cache();
    auto it = cache.find(key);
    if (it == cache.end()) {
        GroupCacheEntry e;
        e.group = std::make_shared<PermGroup>(g);
        e.exponent = e.group->exponent();
        e.override_data = resolve_override(g.override_source);
        it = cache.emplace(key, std::move(e)).first;
    }
    GroupCacheEntry& e = it->second;
    if (e.override_data.covers(q.p)) return e.override_data.lookup(q.p, q.j, q.n);
    if (e.group->order() % q.p == 0)
        throw ModularCaseError("FiniteGroup: p = " + std::to_string(q.p) + " divides |G| and no override covers it");
    // The decomposition over F_p only depends on p modulo the exponent.
    std::uint64_t residue = q.p % e.exponent;
    auto dit = e.by_residue.find(residue);
    if (dit == e.by_residue.end()) dit = e.by_residue.emplace(residue, decompose_group_algebra(*e.group, q.p, 1)).first;
    return counts_from_decomposition(dit->second, q.j, q.n);
}

CountResult free_pro_p_count(const FreeProPSpec& s, const CountQuery& q, CountMode mode) {
    const BigInt Q = field_size(q.p, q.j);
    if (q.p == s.p) return exact(q.n == 1 ? 1 : 0);
    BigInt w = p_part(s.p, Q - 1);
    if (q.n == 1) return exact(boost::multiprecision::pow(w, s.r));
    std::uint64_t n = q.n;
    unsigned k = 0;
    while (n % s.p == 0) {
        n /= s.p;
        ++k;
    }
    if (n != 1 || w == 1) return exact(0);
    if (mode == CountMode::exact)
        throw CapabilityError("FreeProP: only upper bounds are available beyond dimension 1 (use upper_bound mode)");
    BigInt bound;
    if (s.p == 2) {
        bound = image_count_upper_bound(sylow_gl_order(2, q.n, Q).value, s.r, Q);
    } else {
        BigInt pk = ipow(BigInt(s.p), k);
        unsigned e1 = static_cast<unsigned>(pk * (s.r - 1) + 1);
        unsigned e2 = static_cast<unsigned>((pk - 1) * (s.r - 1) / (s.p - 1));
        bound = boost::multiprecision::pow(w, e1) * ipow(BigInt(s.p), e2);
    }
    return {bound, Exactness::upper_bound};
}

CountResult sl2_count(const SL2ProductSpec& s, const CountQuery& q, CountMode mode) {
    BigInt chr = sl2_characteristic_count(s, q.p, q.n);
    switch (mode) {
        case CountMode::characteristic_only:
            return {chr, q.n == 1 ? Exactness::exact : Exactness::lower_bound};
        case CountMode::upper_bound: {
            BigInt total = 0;
            for (auto d : divisors(q.n))
                total += sl2_characteristic_count(s, q.p, static_cast<unsigned>(d)) *
                         sl2_cross_envelope(s, q.p, static_cast<unsigned>(q.n / d));
            return {total, q.n == 1 ? Exactness::exact : Exactness::upper_bound};
        }
        case CountMode::exact:
            if (q.n == 1) return exact(1);
            break;
    }
    throw CapabilityError(
        "SL2Product: exact counts are unavailable; use characteristic_only or upper_bound mode");
}

}  // namespace

std::string to_string(Exactness e) {
    switch (e) {
        case Exactness::exact:
            return "exact";
        case Exactness::lower_bound:
            return "lower_bound";
        case Exactness::upper_bound:
            return "upper_bound";
    }
    return "exact";
}

CountMode parse_count_mode(const std::string& text) {
    if (text == "exact") return CountMode::exact;
    if (text == "upper_bound") return CountMode::upper_bound;
    if (text == "characteristic_only") return CountMode::characteristic_only;
    throw UsageError("unknown count mode '" + text + "'");
}

std::string to_string(CountMode m) {
    switch (m) {
        case CountMode::exact:
            return "exact";
        case CountMode::upper_bound:
            return "upper_bound";
        case CountMode::characteristic_only:
            return "characteristic_only";
    }
    return "exact";
}

BigInt periodic_orbit_count(unsigned a, unsigned n) {
    if (n == 0) throw DomainError("periodic_orbit_count: n must be positive");
    BigInt total = 0;
    for (auto d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu > 0)
            total += ipow(BigInt(a), static_cast<unsigned>(d));
        else if (mu < 0)
            total -= ipow(BigInt(a), static_cast<unsigned>(d));
    }
    return total;
}

BigInt lamplighter_count(unsigned a, const BigInt& q, std::uint64_t p, unsigned n) {
    if (a != 2 && a != 3) throw ParameterError("a", "must be 2 or 3");
    if (p == a) return n == 1 ? BigInt(q - 1) : BigInt(0);
    BigInt qm = q % a;
    if (qm == 1) return (q - 1) * periodic_orbit_count(a, n) / n;
    // a = 3 and q = 2 mod 3: orbits of period n that are mapped to their
    // negatives by some shift.
    BigInt total = 0;
    for (auto d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 0) continue;
        BigInt c = 0;
        for (std::uint64_t k = 0; k < d; ++k) {
            std::uint64_t g = std::gcd(d, k);
            c += (d / g) % 2 == 0 ? ipow(BigInt(3), static_cast<unsigned>(g)) : BigInt(1);
        }
        if (c % d != 0) throw CapabilityError("Lamplighter: orbit count not integral");
        if (mu > 0)
            total += c / d;
        else
            total -= c / d;
    }
    return (q - 1) * total;
}

BigInt lamplighter_orbit_oracle(unsigned a, std::uint64_t q, unsigned n) {
    if (a != 2 && a != 3) throw ParameterError("a", "must be 2 or 3");
    if (n > 20) throw CapabilityError("lamplighter oracle: n above enumeration cap 20");
    if (q % a == 0) return n == 1 ? BigInt(q - 1) : BigInt(0);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) total *= a;
    auto digits = [&](std::uint64_t code) {
        std::vector<unsigned> v(n);
        for (unsigned i = 0; i < n; ++i) {
            v[i] = static_cast<unsigned>(code % a);
            code /= a;
        }
        return v;
    };
    auto encode = [&](const std::vector<unsigned>& v) {
        std::uint64_t code = 0;
        for (unsigned i = n; i-- > 0;) code = code * a + v[i];
        return code;
    };
    std::vector<bool> seen(total, false);
    std::uint64_t stable_orbits = 0;
    const unsigned qa = static_cast<unsigned>(q % a);
    for (std::uint64_t code = 0; code < total; ++code) {
        if (seen[code]) continue;
        auto v = digits(code);
        std::set<std::uint64_t> orbit;
        auto w = v;
        for (unsigned s = 0; s < n; ++s) {
            orbit.insert(encode(w));
            std::rotate(w.begin(), w.begin() + 1, w.end());
        }
        for (auto c : orbit) seen[c] = true;
        if (orbit.size() != n) continue;
        std::vector<unsigned> qv(n);
        for (unsigned i = 0; i < n; ++i) qv[i] = (v[i] * qa) % a;
        if (orbit.count(encode(qv))) ++stable_orbits;
    }
    return BigInt(stable_orbits) * (q - 1);
}

std::uint64_t sl2_copies(const SL2ProductSpec& s, std::uint64_t p) {
    if (!s.include_small && p <= 3) return 0;
    return static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(p), s.alpha) + 1e-9));
}

BigInt sl2_characteristic_count(const SL2ProductSpec& s, std::uint64_t p, unsigned n) {
    return tensor_count(sl2_copies(s, p), p, n);
}

BigInt sl2_cross_envelope(const SL2ProductSpec& s, std::uint64_t p, unsigned n) {
    if (n == 1) return 1;
    BigInt M = 0;
    for (auto l : primes_up_to(2ull * n + 1)) {
        if (l == p) continue;
        std::uint64_t c = sl2_copies(s, l);
        M += BigInt(c) * (4 * l + 10);
    }
    unsigned t = 0;
    while ((2u << t) <= n) ++t;
    return boost::multiprecision::pow(M + 1, t);
}

CountResult count_abs_irr(const GroupSpec& spec, const CountQuery& q, CountMode mode) {
    if (q.j < 1 || q.n < 1 || !is_prime(q.p)) throw DomainError("count query needs prime p and j, n >= 1");
    const BigInt Q = field_size(q.p, q.j);
    const bool one = q.n == 1;
    return std::visit(
        overloaded{
            [&](const TrivialSpec&) { return exact(one ? 1 : 0); },
            [&](const ZHatSpec&) { return exact(one ? BigInt(Q - 1) : BigInt(0)); },
            [&](const ZHatPowerSpec& s) { return exact(one ? boost::multiprecision::pow(BigInt(Q - 1), s.r) : BigInt(0)); },
            [&](const ZpPowerSpec& s) {
                return exact(one ? boost::multiprecision::pow(p_part(s.p, BigInt(Q - 1)), s.r) : BigInt(0));
            },
            [&](const CyclicSpec& s) {
                return exact(one ? boost::multiprecision::gcd(BigInt(s.m), BigInt(Q - 1)) : BigInt(0));
            },
            [&](const FiniteAbelianSpec& s) {
                BigInt v = 1;
                for (auto m : s.moduli) v *= boost::multiprecision::gcd(BigInt(m), BigInt(Q - 1));
                return exact(one ? v : BigInt(0));
            },
            [&](const MatrixAlgebraSpec& s) {
                return exact(q.p == s.p && q.n == s.n && q.j % s.k == 0 ? BigInt(s.k) : BigInt(0));
            },
            [&](const RingProductSpec& s) {
                CountResult out = exact(0);
                for (const auto& part : s.parts) {
                    auto r = count_abs_irr(part, q, mode);
                    out.value += r.value;
                    out.exactness = combine(out.exactness, r.exactness);
                }
                return out;
            },
            [&](const GroupProductSpec& s) {
                CountResult acc = count_abs_irr(s.parts[0], q, mode);
                if (s.parts.size() == 1) return acc;
                GroupSpec rest = s.parts.size() == 2 ? s.parts[1]
                                                      : GroupSpec(GroupProductSpec{{s.parts.begin() + 1, s.parts.end()}});
                return convolve_product(s.parts[0], rest, q, mode);
            },
            [&](const LamplighterSpec& s) { return exact(lamplighter_count(s.a, Q, q.p, q.n)); },
            [&](const VirtuallyAbelianSpec& s) { return exact(clifford_count(s, Q, q.n)); },
            [&](const SL2ProductSpec& s) { return sl2_count(s, q, mode); },
            [&](const FiniteGroupSpec& g) { return exact(finite_group_count(g, q)); },
            [&](const FreeProPSpec& s) { return free_pro_p_count(s, q, mode); },
        },
        spec.v);
}

CountResult convolve_product(const GroupSpec& a, const GroupSpec& b, const CountQuery& q, CountMode mode) {
    CountResult out = exact(0);
    for (auto d : divisors(q.n)) {
        auto ra = count_abs_irr(a, {q.p, q.j, static_cast<unsigned>(d)}, mode);
        if (ra.value == 0 && ra.exactness == Exactness::exact) continue;
        auto rb = count_abs_irr(b, {q.p, q.j, static_cast<unsigned>(q.n / d)}, mode);
        out.value += ra.value * rb.value;
        out.exactness = combine(out.exactness, combine(ra.exactness, rb.exactness));
    }
    return out;
}

BigInt new_at_level(const GroupSpec& spec, std::uint64_t p, unsigned j, unsigned e, unsigned d, CountMode mode) {
    BigInt total = 0;
    for (auto f : divisors(e)) {
        int mu = moebius(e / f);
        if (mu == 0) continue;
        auto r = count_abs_irr(spec, {p, static_cast<unsigned>(j * f), d}, mode);
        if (r.exactness != Exactness::exact) throw CapabilityError("new_at_level requires exact counts");
        if (mu > 0)
            total += r.value;
        else
            total -= r.value;
    }
    if (total < 0) throw CapabilityError("internal consistency: negative new-at-level count");
    return total;
}

CountResult count_irr(const GroupSpec& spec, const CountQuery& q, CountMode mode) {
    BigInt total = 0;
    for (auto e : divisors(q.n)) {
        BigInt m = new_at_level(spec, q.p, q.j, static_cast<unsigned>(e), static_cast<unsigned>(q.n / e), mode);
        if (m % e != 0) throw CapabilityError("internal consistency: Frobenius orbits do not fuse evenly");
        total += m / e;
    }
    return exact(total);
}

}  // namespace repzeta

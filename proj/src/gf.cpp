#include "repzeta/gf.hpp"
#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace repzeta {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 20;

void pp_trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PrimePoly pp_mod(PrimePoly a, const PrimePoly& f, std::uint64_t p) {
    pp_trim(a);
    std::size_t df = f.size() - 1;
    std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
    while (a.size() >= f.size()) {
        std::uint64_t c = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - f.size();
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
        }
        pp_trim(a);
    }
    return a;
}

PrimePoly pp_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t k = 0; k < b.size(); ++k) r[i + k] = (r[i + k] + mulmod(a[i], b[k], p)) % p;
    }
    return pp_mod(r, f, p);
}

PrimePoly pp_powmod(PrimePoly base, std::uint64_t e, const PrimePoly& f, std::uint64_t p) {
    PrimePoly r{1};
    base = pp_mod(base, f, p);
    while (e) {
        if (e & 1) r = pp_mulmod(r, base, f, p);
        base = pp_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

PrimePoly pp_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        PrimePoly r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<std::uint64_t> digits(std::uint64_t v, std::uint64_t p, unsigned j) {
    std::vector<std::uint64_t> d(j, 0);
    for (unsigned i = 0; i < j; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

}  // namespace

bool is_irreducible_mod_p(const PrimePoly& f_in, std::uint64_t p) {
    PrimePoly f = f_in;
    pp_trim(f);
    if (f.size() < 2) return false;
    std::size_t d = f.size() - 1;
    if (d == 1) return true;
    PrimePoly x{0, 1};
    PrimePoly h = x;
    for (std::size_t i = 1; i <= d / 2; ++i) {
        h = pp_powmod(h, p, f, p);
        PrimePoly t = h;
        if (t.size() < 2) t.resize(2, 0);
        t[1] = (t[1] + p - 1) % p;
        PrimePoly g = pp_gcd(t, f, p);
        if (g.size() > 1) return false;
    }
    return true;
}

GF::GF(std::uint64_t p, unsigned j) {
    if (!is_prime(p)) throw DomainError("make_field: p = " + std::to_string(p) + " is not prime");
    if (j < 1) throw DomainError("make_field: degree must be positive");
    BigInt q = ipow(p, j);
    if (q > (BigInt(1) << 62)) throw CapabilityError("make_field: field order exceeds 2^62");
    desc_.p = p;
    desc_.j = j;
    desc_.q = q.convert_to<std::uint64_t>();
    if (j == 1) {
        desc_.modulus = {0, 1};
        return;
    }
    std::uint64_t lower = desc_.q;  // p^j choices of lower coefficients
    for (std::uint64_t idx = 0; idx < lower; ++idx) {
        PrimePoly f = digits(idx, p, j);
        f.push_back(1);
        if (f[0] == 0) continue;
        if (is_irreducible_mod_p(f, p)) {
            desc_.modulus = f;
            break;
        }
    }
    if (desc_.modulus.empty()) throw DomainError("make_field: no irreducible modulus found");
    if (desc_.q <= kTableLimit) {
        std::uint64_t n = desc_.q - 1;
        auto fac = factorize(n);
        Elem gen = 0;
        for (Elem g = 2; g < desc_.q && !gen; ++g) {
            bool ok = true;
            for (auto [r, e] : fac) {
                Elem t = 1, b = g;
                std::uint64_t k = n / r;
                while (k) {
                    if (k & 1) t = mul_poly(t, b);
                    b = mul_poly(b, b);
                    k >>= 1;
                }
                if (t == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) gen = g;
        }
        if (desc_.q == 2) gen = 1;
        exp_.resize(n);
        log_.assign(desc_.q, 0);
        Elem cur = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            exp_[i] = static_cast<std::uint32_t>(cur);
            log_[cur] = static_cast<std::uint32_t>(i);
            cur = mul_poly(cur, gen);
        }
        tabled_ = true;
    }
}

GF::Elem GF::from_int(long long v) const {
    long long p = static_cast<long long>(desc_.p);
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
}

GF::Elem GF::add(Elem a, Elem b) const {
    const std::uint64_t p = desc_.p;
    if (desc_.j == 1) {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    Elem r = 0, place = 1;
    for (unsigned i = 0; i < desc_.j; ++i) {
        std::uint64_t d = (a % p + b % p) % p;
        r += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    return r;
}

GF::Elem GF::neg(Elem a) const {
    const std::uint64_t p = desc_.p;
    if (desc_.j == 1) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    Elem r = 0, place = 1;
    for (unsigned i = 0; i < desc_.j; ++i) {
        std::uint64_t d = a % p;
        r += (d == 0 ? 0 : p - d) * place;
        place *= p;
        a /= p;
    }
    return r;
}

GF::Elem GF::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GF::Elem GF::mul_poly(Elem a, Elem b) const {
    const std::uint64_t p = desc_.p;
    const unsigned j = desc_.j;
    auto da = digits(a, p, j);
    auto db = digits(b, p, j);
    PrimePoly prod(2 * j - 1, 0);
    for (unsigned i = 0; i < j; ++i) {
        if (!da[i]) continue;
        for (unsigned k = 0; k < j; ++k) prod[i + k] = (prod[i + k] + mulmod(da[i], db[k], p)) % p;
    }
    PrimePoly r = pp_mod(prod, desc_.modulus, p);
    Elem out = 0, place = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i] * place;
        place *= p;
    }
    return out;
}

GF::Elem GF::mul(Elem a, Elem b) const {
    if (desc_.j == 1) return mulmod(a, b, desc_.p);
    if (a == 0 || b == 0) return 0;
    if (tabled_) {
        std::uint64_t n = desc_.q - 1;
        std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (s >= n) s -= n;
        return exp_[s];
    }
    return mul_poly(a, b);
}

GF::Elem GF::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (tabled_) {
        std::uint64_t n = desc_.q - 1;
        return exp_[mulmod(log_[a], e % n, n)];
    }
    Elem r = 1;
    e %= (desc_.q - 1);
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

GF::Elem GF::pow(Elem a, const BigInt& e) const {
    if (e < 0) return pow(inv(a), BigInt(-e));
    if (e == 0) return 1;
    if (a == 0) return 0;
    BigInt reduced = e % (desc_.q - 1);
    return pow(a, reduced.convert_to<std::uint64_t>());
}

GF::Elem GF::inv(Elem a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (desc_.j == 1) return powmod(a, desc_.p - 2, desc_.p);
    if (tabled_) {
        std::uint64_t n = desc_.q - 1;
        return exp_[(n - log_[a]) % n];
    }
    return pow(a, desc_.q - 2);
}

std::vector<std::uint64_t> GF::coefficients(Elem a) const { return digits(a, desc_.p, desc_.j); }

GF::Elem GF::from_coefficients(const std::vector<std::uint64_t>& c) const {
    Elem out = 0, place = 1;
    for (unsigned i = 0; i < desc_.j; ++i) {
        std::uint64_t d = i < c.size() ? c[i] % desc_.p : 0;
        out += d * place;
        place *= desc_.p;
    }
    return out;
}

std::string GF::modulus_string() const {
    std::string out;
    for (std::size_t i = desc_.modulus.size(); i-- > 0;) {
        std::uint64_t c = desc_.modulus[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
            continue;
        }
        if (c != 1) out += std::to_string(c) + "*";
        out += (i == 1) ? "x" : "x^" + std::to_string(i);
    }
    return out;
}

std::shared_ptr<const GF> make_field(std::uint64_t p, unsigned j) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const GF>(p, j);
    cache.emplace(key, f);
    return f;
}

bool subfield_contained(unsigned k, unsigned j) {
    if (k == 0 || j == 0) throw DomainError("subfield_contained: degrees must be positive");
    return j % k == 0;
}

// ---- polynomials over GF ----

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_add(const GF& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        GF::Elem x = i < a.size() ? a[i] : 0;
        GF::Elem y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    poly_trim(r);
    return r;
}

Poly poly_sub(const GF& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        GF::Elem x = i < a.size() ? a[i] : 0;
        GF::Elem y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    poly_trim(r);
    return r;
}

Poly poly_mul(const GF& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t k = 0; k < b.size(); ++k) r[i + k] = F.add(r[i + k], F.mul(a[i], b[k]));
    }
    poly_trim(r);
    return r;
}

void poly_divmod(const GF& F, const Poly& a, const Poly& b_in, Poly& quot, Poly& rem) {
    Poly b = b_in;
    poly_trim(b);
    if (b.empty()) throw DomainError("polynomial division by zero");
    rem = a;
    poly_trim(rem);
    quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
    GF::Elem lead_inv = F.inv(b.back());
    while (rem.size() >= b.size()) {
        GF::Elem c = F.mul(rem.back(), lead_inv);
        std::size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(c, b[i]));
        poly_trim(rem);
    }
    poly_trim(quot);
}

Poly poly_mod(const GF& F, const Poly& a, const Poly& m) {
    Poly q, r;
    poly_divmod(F, a, m, q, r);
    return r;
}

Poly poly_monic(const GF& F, const Poly& a_in) {
    Poly a = a_in;
    poly_trim(a);
    if (a.empty()) return a;
    GF::Elem c = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, c);
    return a;
}

Poly poly_gcd(const GF& F, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_powmod(const GF& F, const Poly& base_in, const BigInt& e, const Poly& m) {
    Poly r{1};
    r = poly_mod(F, r, m);
    Poly base = poly_mod(F, base_in, m);
    if (e == 0) return r;
    std::size_t bits = boost::multiprecision::msb(e);
    for (std::size_t i = bits + 1; i-- > 0;) {
        r = poly_mod(F, poly_mul(F, r, r), m);
        if (boost::multiprecision::bit_test(e, i)) r = poly_mod(F, poly_mul(F, r, base), m);
    }
    return r;
}

Poly poly_derivative(const GF& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i % F.p())));
    poly_trim(r);
    return r;
}

Poly poly_invmod(const GF& F, const Poly& a, const Poly& m) {
    // Extended Euclid keeping only the coefficient of a.
    Poly r0 = poly_mod(F, a, m), r1 = m;
    Poly s0{1}, s1{};
    while (!r1.empty()) {
        Poly q, r;
        poly_divmod(F, r0, r1, q, r);
        Poly s = poly_sub(F, s0, poly_mul(F, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) throw DomainError("poly_invmod: not invertible");
    GF::Elem c = F.inv(r0[0]);
    for (auto& x : s0) x = F.mul(x, c);
    return poly_mod(F, s0, m);
}

namespace {

Poly random_poly(const GF& F, std::size_t len, CounterRng& rng) {
    Poly a(len);
    for (auto& x : a) x = rng.below(F.q());
    poly_trim(a);
    return a;
}

void equal_degree_split(const GF& F, const Poly& g, unsigned d, CounterRng& rng, std::vector<Poly>& out) {
    if (poly_degree(g) == static_cast<int>(d)) {
        out.push_back(g);
        return;
    }
    const BigInt qd = ipow(F.q(), d);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Poly a = random_poly(F, g.size() - 1, rng);
        if (poly_degree(a) < 1) continue;
        Poly b;
        if (F.p() == 2) {
            // Absolute trace to F_2 of a in F_q[x]/(g).
            unsigned terms = F.j() * d;
            Poly t = a;
            b = a;
            for (unsigned i = 1; i < terms; ++i) {
                t = poly_mod(F, poly_mul(F, t, t), g);
                b = poly_add(F, b, t);
            }
        } else {
            b = poly_powmod(F, a, (qd - 1) / 2, g);
            b = poly_sub(F, b, Poly{1});
        }
        Poly h = poly_gcd(F, b, g);
        if (poly_degree(h) > 0 && poly_degree(h) < poly_degree(g)) {
            Poly q, r;
            poly_divmod(F, g, h, q, r);
            equal_degree_split(F, h, d, rng, out);
            equal_degree_split(F, poly_monic(F, q), d, rng, out);
            return;
        }
    }
    throw DomainError("equal-degree splitting did not converge");
}

}  // namespace

std::vector<Poly> factor_squarefree(const GF& F, const Poly& f_in, CounterRng& rng) {
    Poly f = poly_monic(F, f_in);
    std::vector<Poly> out;
    if (poly_degree(f) < 1) return out;
    Poly x{0, 1};
    Poly h = poly_mod(F, x, f);
    Poly rest = f;
    for (unsigned i = 1; poly_degree(rest) >= 2 * static_cast<int>(i); ++i) {
        h = poly_powmod(F, h, BigInt(F.q()), rest);
        Poly g = poly_gcd(F, poly_sub(F, h, x), rest);
        if (poly_degree(g) > 0) {
            equal_degree_split(F, g, i, rng, out);
            Poly q, r;
            poly_divmod(F, rest, g, q, r);
            rest = poly_monic(F, q);
            h = poly_mod(F, h, rest);
        }
    }
    if (poly_degree(rest) > 0) out.push_back(rest);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

// ---- matrices ----

std::size_t rank(const GF& F, Matrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != r) {
            for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(piv, k), m.at(r, k));
        }
        GF::Elem inv = F.inv(m.at(r, c));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            GF::Elem f = m.at(i, c);
            if (!f) continue;
            f = F.mul(f, inv);
            for (std::size_t k = c; k < m.cols; ++k) m.at(i, k) = F.sub(m.at(i, k), F.mul(f, m.at(r, k)));
        }
        ++r;
    }
    return r;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k) t.at(k, i) = m.at(i, k);
    return t;
}

Matrix random_matrix(const GF& F, std::size_t rows, std::size_t cols, CounterRng& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.a) x = rng.below(F.q());
    return m;
}

}  // namespace repzeta

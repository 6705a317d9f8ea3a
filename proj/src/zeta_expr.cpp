#include "repzeta/zeta_expr.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace repzeta {

ZetaExpr ZetaExpr::riemann(long shift, unsigned dilation) {
    ZetaExpr x;
    x.kind = Kind::zeta;
    x.a = shift;
    x.k = dilation;
    return x;
}

ZetaExpr ZetaExpr::dedekind_atom(std::uint64_t conductor, std::vector<std::uint64_t> subgroup) {
    ZetaExpr x;
    x.kind = Kind::dedekind;
    x.m = conductor;
    x.gens = std::move(subgroup);
    return x;
}

ZetaExpr ZetaExpr::rational_factor(std::uint64_t base, long a, long b, int sign) {
    ZetaExpr x;
    x.kind = Kind::ratfac;
    x.M = base;
    x.a = a;
    x.b = b;
    x.e = sign;
    return x;
}

ZetaExpr ZetaExpr::euler_atom(long coefficient, long a, unsigned dilation, std::uint64_t modulus,
                              std::uint64_t residue) {
    ZetaExpr x;
    x.kind = Kind::euler;
    x.c = coefficient;
    x.a = a;
    x.k = dilation;
    x.m = modulus;
    x.r = residue;
    return x;
}

ZetaExpr ZetaExpr::sharp_of(unsigned n, ZetaExpr child) {
    ZetaExpr x;
    x.kind = Kind::sharp;
    x.n = n;
    x.children.push_back(std::move(child));
    return x;
}

ZetaExpr ZetaExpr::power_of(ZetaExpr child, Rational exponent) {
    ZetaExpr x;
    x.kind = Kind::power;
    x.exponent = exponent;
    x.children.push_back(std::move(child));
    return x;
}

ZetaExpr ZetaExpr::product_of(std::vector<ZetaExpr> children) {
    ZetaExpr x;
    x.kind = Kind::product;
    x.children = std::move(children);
    return x;
}

bool operator==(const ZetaExpr& x, const ZetaExpr& y) {
    if (x.kind != y.kind) return false;
    using K = ZetaExpr::Kind;
    switch (x.kind) {
        case K::zeta: return x.a == y.a && x.k == y.k;
        case K::dedekind: return x.m == y.m && x.gens == y.gens;
        case K::ratfac: return x.M == y.M && x.a == y.a && x.b == y.b && x.e == y.e;
        case K::euler: return x.c == y.c && x.a == y.a && x.k == y.k && x.m == y.m && x.r == y.r;
        case K::sharp: return x.n == y.n && x.children == y.children;
        case K::power: return x.exponent == y.exponent && x.children == y.children;
        case K::product: return x.children == y.children;
    }
    return false;
}

void validate(const ZetaExpr& e, bool allow_fractional_powers) {
    using K = ZetaExpr::Kind;
    switch (e.kind) {
        case K::zeta:
            if (e.k < 1) throw ParameterError("k", "zeta dilation must be at least 1");
            break;
        case K::dedekind:
            if (e.m < 1) throw ParameterError("m", "conductor must be positive");
            for (auto g : e.gens)
                if (gcd_u64(g % e.m, e.m) != 1 && e.m > 1) throw ParameterError("h", "generator not a unit mod m");
            break;
        case K::ratfac:
            if (e.M < 2) throw ParameterError("M", "must be at least 2");
            if (!(e.a > e.b && e.b >= 0)) throw ParameterError("a", "need a > b >= 0");
            if (e.e != 1 && e.e != -1) throw ParameterError("e", "must be +1 or -1");
            break;
        case K::euler:
            if (e.k < 1) throw ParameterError("k", "dilation must be at least 1");
            if (e.c == 0) throw ParameterError("c", "coefficient must be nonzero");
            if (e.m == 0 && !is_prime(e.r)) throw ParameterError("r", "single-prime atom needs a prime");
            break;
        case K::sharp:
            if (e.n < 1) throw ParameterError("n", "sharp index must be at least 1");
            break;
        case K::power:
            if (!allow_fractional_powers && denominator(e.exponent) != 1)
                throw ParameterError("exponent", "must be an integer");
            break;
        case K::product:
            break;
    }
    if ((e.kind == K::sharp || e.kind == K::power) && e.children.size() != 1)
        throw ParameterError("children", "expected exactly one child");
    for (const auto& c : e.children) validate(c, allow_fractional_powers);
}

std::string to_sexpr(const ZetaExpr& e) {
    using K = ZetaExpr::Kind;
    std::ostringstream os;
    switch (e.kind) {
        case K::zeta:
            os << "(zeta " << e.a;
            if (e.k != 1) os << " " << e.k;
            os << ")";
            break;
        case K::dedekind:
            os << "(dedekind " << e.m << " (h";
            for (auto g : e.gens) os << " " << g;
            os << "))";
            break;
        case K::ratfac: os << "(ratfac " << e.M << " " << e.a << " " << e.b << " " << e.e << ")"; break;
        case K::euler: os << "(euler " << e.c << " " << e.a << " " << e.k << " " << e.m << " " << e.r << ")"; break;
        case K::sharp: os << "(sharp " << e.n << " " << to_sexpr(e.children[0]) << ")"; break;
        case K::power: os << "(power " << to_sexpr(e.children[0]) << " " << to_string(e.exponent) << ")"; break;
        case K::product:
            os << "(product";
            for (const auto& c : e.children) os << " " << to_sexpr(c);
            os << ")";
            break;
    }
    return os.str();
}

namespace {

struct Token {
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '(' || ch == ')') {
            out.push_back({std::string(1, ch), i});
            ++i;
        } else {
            std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')') ++i;
            out.push_back({s.substr(start, i - start), start});
        }
    }
    return out;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t at = 0;
    std::size_t end_pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t pos = at < toks.size() ? toks[at].pos : end_pos;
        throw ParseError("zeta expression: " + what + " at offset " + std::to_string(pos));
    }
    const std::string& peek() const {
        static const std::string eof;
        return at < toks.size() ? toks[at].text : eof;
    }
    void expect(const std::string& t) {
        if (peek() != t) fail("expected '" + t + "'");
        ++at;
    }
    long integer() {
        const std::string& t = peek();
        try {
            std::size_t used = 0;
            long v = std::stol(t, &used);
            if (used != t.size()) fail("expected an integer");
            ++at;
            return v;
        } catch (const std::logic_error&) {
            fail("expected an integer");
        }
    }
    std::uint64_t natural() {
        long v = integer();
        if (v < 0) {
            --at;
            fail("expected a non-negative integer");
        }
        return static_cast<std::uint64_t>(v);
    }
    Rational rational() {
        const std::string& t = peek();
        try {
            Rational r = parse_rational(t);
            ++at;
            return r;
        } catch (const std::exception&) {
            fail("expected a rational exponent");
        }
    }

    ZetaExpr expr() {
        expect("(");
        std::string head = peek();
        ++at;
        ZetaExpr out;
        if (head == "zeta") {
            long a = integer();
            unsigned k = 1;
            if (peek() != ")") k = static_cast<unsigned>(natural());
            out = ZetaExpr::riemann(a, k);
        } else if (head == "dedekind") {
            std::uint64_t m = natural();
            expect("(");
            expect("h");
            std::vector<std::uint64_t> gens;
            while (peek() != ")") gens.push_back(natural());
            expect(")");
            out = ZetaExpr::dedekind_atom(m, gens);
        } else if (head == "ratfac") {
            std::uint64_t M = natural();
            long a = integer();
            long b = integer();
            long e = integer();
            out = ZetaExpr::rational_factor(M, a, b, static_cast<int>(e));
        } else if (head == "euler") {
            long c = integer();
            long a = integer();
            unsigned k = static_cast<unsigned>(natural());
            std::uint64_t m = natural();
            std::uint64_t r = natural();
            out = ZetaExpr::euler_atom(c, a, k, m, r);
        } else if (head == "sharp") {
            unsigned n = static_cast<unsigned>(natural());
            out = ZetaExpr::sharp_of(n, expr());
        } else if (head == "power") {
            ZetaExpr child = expr();
            out = ZetaExpr::power_of(std::move(child), rational());
        } else if (head == "product") {
            std::vector<ZetaExpr> kids;
            while (peek() == "(") kids.push_back(expr());
            out = ZetaExpr::product_of(std::move(kids));
        } else {
            --at;
            fail("unknown head '" + head + "'");
        }
        expect(")");
        return out;
    }
};

// Subgroup of (Z/m)^x generated by gens, as a sorted set.
std::set<std::uint64_t> closure(std::uint64_t m, const std::vector<std::uint64_t>& gens) {
    std::set<std::uint64_t> h{1 % m};
    std::vector<std::uint64_t> frontier{1 % m};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto x : frontier)
            for (auto g : gens) {
                std::uint64_t y = mulmod(x, g % m, m);
                if (h.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return h;
}

std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t out = m;
    for (auto [p, e] : factorize(m)) out = out / p * (p - 1);
    return out;
}

double log_abs_checked(double v, double eps, const std::string& atom) {
    if (std::fabs(v) < eps) throw PoleError("pole or zero of " + atom);
    return std::log(std::fabs(v));
}

struct Evaluator {
    std::uint64_t X;
    double eps;
    std::vector<std::uint64_t> primes;
    std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::vector<PrimeSplitting>> splittings;

    // Returns (log|value|, sign).
    std::pair<double, int> eval(const ZetaExpr& e, double s) {
        using K = ZetaExpr::Kind;
        switch (e.kind) {
            case K::zeta: {
                double sigma = e.k * s - e.a;
                std::string atom = to_sexpr(e);
                if (std::fabs(sigma - 1) < eps) throw PoleError("pole of " + atom + " at s = " + std::to_string(s));
                if (sigma <= 1)
                    throw ConvergenceError("Euler product of " + atom + " diverges at s = " + std::to_string(s));
                double acc = 0;
                for (auto p : primes) acc -= std::log1p(-std::pow(static_cast<double>(p), -sigma));
                return {acc, 1};
            }
            case K::dedekind: {
                std::string atom = to_sexpr(e);
                if (std::fabs(s - 1) < eps) throw PoleError("pole of " + atom + " at s = 1");
                if (s <= 1) throw ConvergenceError("Euler product of " + atom + " diverges at s = " + std::to_string(s));
                auto key = std::make_pair(e.m, e.gens);
                auto it = splittings.find(key);
                if (it == splittings.end()) {
                    std::vector<PrimeSplitting> v;
                    v.reserve(primes.size());
                    std::map<std::uint64_t, PrimeSplitting> by_residue;
                    for (auto p : primes) {
                        if (e.m > 1 && e.m % p != 0) {
                            auto r = by_residue.find(p % e.m);
                            if (r == by_residue.end())
                                r = by_residue.emplace(p % e.m, dedekind_local_data(e.m, e.gens, p)).first;
                            v.push_back(r->second);
                        } else {
                            v.push_back(dedekind_local_data(e.m, e.gens, p));
                        }
                    }
                    it = splittings.emplace(key, std::move(v)).first;
                }
                double acc = 0;
                for (std::size_t i = 0; i < primes.size(); ++i) {
                    const auto& sp = it->second[i];
                    acc -= sp.g * std::log1p(-std::pow(static_cast<double>(primes[i]), -static_cast<double>(sp.f) * s));
                }
                return {acc, 1};
            }
            case K::ratfac: {
                double x = std::pow(static_cast<double>(e.M), e.b - e.a * s);
                double v = 1 - x;
                std::string atom = to_sexpr(e);
                double l = log_abs_checked(v, eps, atom);
                return {e.e * l, v < 0 ? -1 : 1};
            }
            case K::euler: {
                double sigma = e.k * s - e.a;
                std::string atom = to_sexpr(e);
                double acc = 0;
                int sign = 1;
                auto factor = [&](std::uint64_t p) {
                    double v = 1 - e.c * std::pow(static_cast<double>(p), -sigma);
                    acc -= log_abs_checked(v, eps, atom);
                    if (v < 0) sign = -sign;
                };
                if (e.m == 0) {
                    if (e.r <= X) factor(e.r);
                    return {acc, sign};
                }
                if (std::fabs(sigma - 1) < eps) throw PoleError("pole of " + atom + " at s = " + std::to_string(s));
                if (sigma <= 1)
                    throw ConvergenceError("Euler product of " + atom + " diverges at s = " + std::to_string(s));
                for (auto p : primes)
                    if (p % e.m == e.r % e.m) factor(p);
                return {acc, sign};
            }
            case K::sharp: {
                double acc = 0;
                int sign = 1;
                for (unsigned j = 0; j < e.n; ++j) {
                    auto [l, sg] = eval(e.children[0], e.n * s - j);
                    acc += l;
                    sign *= sg;
                }
                return {acc, sign};
            }
            case K::power: {
                auto [l, sg] = eval(e.children[0], s);
                double ex = to_double(e.exponent);
                if (sg < 0) {
                    if (denominator(e.exponent) != 1)
                        throw DomainError("fractional power of a negative value in " + to_sexpr(e));
                    BigInt num = numerator(e.exponent);
                    sg = (num % 2 == 0) ? 1 : -1;
                }
                return {ex * l, sg};
            }
            case K::product: {
                double acc = 0;
                int sign = 1;
                for (const auto& c : e.children) {
                    auto [l, sg] = eval(c, s);
                    acc += l;
                    sign *= sg;
                }
                return {acc, sign};
            }
        }
        return {0, 1};
    }
};

// (1 - x T^d)^g as a series.
Series binomial_factor(const Rational& x, unsigned d, long g, unsigned D) {
    Series base = series_one(D);
    if (d <= D) base[d] = -x;
    return series_pow(base, Rational(g));
}

Rational p_power(std::uint64_t p, long exp) { return rpow(Rational(BigInt(p)), exp); }

// Local factor of e evaluated at alpha s - beta.
Series local(const ZetaExpr& e, std::uint64_t p, unsigned D, unsigned alpha, long beta) {
    using K = ZetaExpr::Kind;
    switch (e.kind) {
        case K::zeta: return binomial_factor(p_power(p, e.a + static_cast<long>(e.k) * beta), e.k * alpha, -1, D);
        case K::dedekind: {
            auto sp = dedekind_local_data(e.m, e.gens, p);
            return binomial_factor(p_power(p, static_cast<long>(sp.f) * beta), sp.f * alpha,
                                   -static_cast<long>(sp.g), D);
        }
        case K::ratfac: {
            auto pp = as_prime_power(e.M);
            if (!pp || pp->first != p) return series_one(D);
            long t = static_cast<long>(pp->second);
            return binomial_factor(p_power(p, t * (e.b + e.a * beta)), static_cast<unsigned>(t * e.a) * alpha, e.e, D);
        }
        case K::euler: {
            bool hit = e.m == 0 ? p == e.r : p % e.m == e.r % e.m;
            if (!hit) return series_one(D);
            return binomial_factor(Rational(e.c) * p_power(p, e.a + static_cast<long>(e.k) * beta), e.k * alpha, -1, D);
        }
        case K::sharp: {
            Series out = series_one(D);
            for (unsigned j = 0; j < e.n; ++j)
                out = series_mul(out, local(e.children[0], p, D, e.n * alpha, static_cast<long>(e.n) * beta + j));
            return out;
        }
        case K::power: return series_pow(local(e.children[0], p, D, alpha, beta), e.exponent);
        case K::product: {
            Series out = series_one(D);
            for (const auto& c : e.children) out = series_mul(out, local(c, p, D, alpha, beta));
            return out;
        }
    }
    return series_one(D);
}

ZetaExpr zeta_power(long shift, unsigned dilation, long exponent) {
    ZetaExpr z = ZetaExpr::riemann(shift, dilation);
    return exponent == 1 ? z : ZetaExpr::power_of(z, Rational(exponent));
}

void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

ZetaExpr parse_sexpr(const std::string& text, bool allow_fractional_powers) {
    Parser p;
    p.toks = tokenize(text);
    p.end_pos = text.size();
    if (p.toks.empty()) p.fail("empty expression");
    ZetaExpr e = p.expr();
    if (p.at != p.toks.size()) p.fail("trailing input");
    validate(e, allow_fractional_powers);
    return e;
}

unsigned field_degree(std::uint64_t m, const std::vector<std::uint64_t>& gens) {
    if (m <= 2) return 1;
    return static_cast<unsigned>(euler_phi(m) / closure(m, gens).size());
}

PrimeSplitting dedekind_local_data(std::uint64_t m, const std::vector<std::uint64_t>& gens, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("dedekind_local_data needs a prime");
    PrimeSplitting out;
    if (m <= 2) return out;
    auto H = closure(m, gens);
    const std::uint64_t degree = euler_phi(m) / H.size();
    if (m % p != 0) {
        unsigned f = 1;
        std::uint64_t x = p % m;
        while (!H.count(x)) {
            x = mulmod(x, p % m, m);
            ++f;
        }
        out.f = f;
        out.g = static_cast<unsigned>(degree / f);
        return out;
    }
    std::uint64_t pa = 1;
    std::uint64_t rest = m;
    while (rest % p == 0) {
        rest /= p;
        pa *= p;
    }
    // Inertia: units congruent to 1 mod the prime-to-p part.
    std::vector<std::uint64_t> inertia_gens(H.begin(), H.end());
    for (std::uint64_t x = 1; x < m; ++x)
        if (gcd_u64(x, m) == 1 && x % rest == 1 % rest) inertia_gens.push_back(x);
    std::uint64_t e_size = closure(m, inertia_gens).size() / H.size();
    // Frobenius: congruent to p mod the prime-to-p part and to 1 mod p^a.
    std::uint64_t frob = 1;
    for (std::uint64_t x = 1; x < m; ++x)
        if (x % rest == p % rest && x % pa == 1 % pa) {
            frob = x;
            break;
        }
    auto decomposition_gens = inertia_gens;
    decomposition_gens.push_back(frob);
    std::uint64_t ef = closure(m, decomposition_gens).size() / H.size();
    out.e = static_cast<unsigned>(e_size);
    out.f = static_cast<unsigned>(ef / e_size);
    out.g = static_cast<unsigned>(degree / ef);
    return out;
}

double log_eval_closed_form(const ZetaExpr& e, double s, std::uint64_t X, const EvalOptions& opts) {
    Evaluator ev{X, opts.pole_epsilon, primes_up_to(X), {}};
    auto [l, sign] = ev.eval(e, s);
    if (sign < 0) throw DomainError("closed form is negative at s = " + std::to_string(s));
    return l;
}

double eval_closed_form(const ZetaExpr& e, double s, std::uint64_t X, const EvalOptions& opts) {
    Evaluator ev{X, opts.pole_epsilon, primes_up_to(X), {}};
    auto [l, sign] = ev.eval(e, s);
    return sign * std::exp(l);
}

Rational eval_closed_form_exact(const ZetaExpr& e, long s) {
    switch (e.kind) {
        case ZetaExpr::Kind::ratfac: {
            Rational v = 1 - rpow(Rational(BigInt(e.M)), -e.a * s + e.b);
            if (v == 0) throw PoleError("pole of " + to_sexpr(e) + " at s = " + std::to_string(s));
            return e.e > 0 ? v : 1 / v;
        }
        case ZetaExpr::Kind::sharp: {
            Rational v = 1;
            for (unsigned j = 0; j < e.n; ++j) v *= eval_closed_form_exact(e.children[0], static_cast<long>(e.n) * s - j);
            return v;
        }
        case ZetaExpr::Kind::power: {
            if (denominator(e.exponent) != 1) throw UnsupportedSpecError("exact evaluation of a fractional power");
            return rpow(eval_closed_form_exact(e.children[0], s), numerator(e.exponent).convert_to<long>());
        }
        case ZetaExpr::Kind::product: {
            Rational v = 1;
            for (const auto& c : e.children) v *= eval_closed_form_exact(c, s);
            return v;
        }
        default:
            throw UnsupportedSpecError("no exact value for " + to_sexpr(e));
    }
}

ZetaExpr matrix_algebra_zeta(unsigned n, std::uint64_t p, unsigned k) {
    std::vector<ZetaExpr> parts;
    for (unsigned i = 0; i < n; ++i)
        parts.push_back(ZetaExpr::rational_factor(p, static_cast<long>(k) * n, static_cast<long>(k) * i, -1));
    return ZetaExpr::product_of(std::move(parts));
}

Series closed_form_local_factor(const ZetaExpr& e, std::uint64_t p, unsigned D) {
    if (!is_prime(p)) throw DomainError("closed_form_local_factor needs a prime");
    return local(e, p, D, 1, 0);
}

std::vector<unsigned> symmetric_group_degrees(unsigned n) {
    if (n < 1 || n > 12) throw ParameterError("n", "symmetric group degree must be in 1..12");
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions(n, n, cur, parts);
    std::vector<unsigned> out;
    for (const auto& lambda : parts) {
        std::vector<unsigned> conj(lambda[0], 0);
        for (auto row : lambda)
            for (unsigned c = 0; c < row; ++c) ++conj[c];
        BigInt hooks = 1;
        for (std::size_t i = 0; i < lambda.size(); ++i)
            for (unsigned c = 0; c < lambda[i]; ++c) hooks *= (lambda[i] - c - 1) + (conj[c] - i - 1) + 1;
        out.push_back((factorial(n) / hooks).convert_to<unsigned>());
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClosedFormPreset symmetric_shape_preset(const std::vector<unsigned>& degrees, unsigned n) {
    ClosedFormPreset out;
    out.name = "S_" + std::to_string(n);
    std::map<unsigned, long> mult;
    for (auto d : degrees) ++mult[d];
    std::vector<ZetaExpr> kids;
    for (auto [d, k] : mult) {
        ZetaExpr f = d == 1 ? ZetaExpr::riemann(0) : ZetaExpr::sharp_of(d, ZetaExpr::riemann(0));
        kids.push_back(k == 1 ? f : ZetaExpr::power_of(f, Rational(k)));
    }
    out.expr = ZetaExpr::product_of(std::move(kids));
    for (auto p : primes_up_to(std::max(2u, n))) out.excluded_primes.push_back(p);
    out.pole_order_at_one = static_cast<unsigned>(degrees.size());
    out.note = "equal up to rational factors at primes <= n";
    return out;
}

std::vector<std::string> closed_form_preset_names() {
    return {"C_p", "ZHat^r", "S4", "S_n", "ZwrC2", "Dinf", "ZwrC3", "BS1m1", "C2wrZ", "C3wrZ", "eta_ZwrC2"};
}

ClosedFormPreset closed_form_preset(const std::string& name, unsigned param) {
    using Z = ZetaExpr;
    ClosedFormPreset out;
    out.name = name;
    if (name == "C_p") {
        std::uint64_t p = param ? param : 2;
        if (!is_prime(p)) throw ParameterError("p", "C_p needs a prime");
        out.name = "C_" + std::to_string(p);
        out.expr = Z::product_of({Z::riemann(0), Z::dedekind_atom(p, {}), Z::rational_factor(p, 1, 0, 1)});
        out.pole_order_at_one = 2;
    } else if (name == "ZHat^r") {
        unsigned r = param ? param : 1;
        out.name = "ZHat^" + std::to_string(r);
        std::vector<ZetaExpr> kids;
        for (unsigned i = 0; i <= r; ++i) {
            long sign = ((r - i) % 2 == 0) ? 1 : -1;
            kids.push_back(zeta_power(i, 1, sign * binomial(BigInt(r), i).convert_to<long>()));
        }
        out.expr = Z::product_of(std::move(kids));
    } else if (name == "S4") {
        std::vector<ZetaExpr> kids{zeta_power(0, 1, 2), Z::sharp_of(2, Z::riemann(0)),
                                   Z::power_of(Z::sharp_of(3, Z::riemann(0)), 2), Z::rational_factor(2, 1, 0, 1)};
        for (long k : {2, 3})
            for (long j = 0; j < k; ++j) kids.push_back(Z::rational_factor(3, k, j, 1));
        out.expr = Z::product_of(std::move(kids));
        out.pole_order_at_one = 5;
    } else if (name == "S_n") {
        unsigned n = param ? param : 3;
        return symmetric_shape_preset(symmetric_group_degrees(n), n);
    } else if (name == "ZwrC2") {
        out.expr = Z::product_of({zeta_power(1, 1, 2), zeta_power(0, 1, -2), Z::riemann(0, 2), Z::riemann(3, 2),
                                  zeta_power(1, 2, -1), zeta_power(2, 2, -1)});
        out.excluded_primes = {2};
    } else if (name == "Dinf") {
        out.expr = Z::product_of({zeta_power(0, 1, 4), Z::riemann(2, 2), zeta_power(1, 2, -1), zeta_power(0, 2, -2)});
        out.excluded_primes = {2};
    } else if (name == "ZwrC3") {
        out.expr = Z::product_of(
            {zeta_power(1, 1, 3), zeta_power(0, 1, -3), Z::riemann(3, 3), Z::riemann(2, 3), zeta_power(0, 3, -1)});
        out.excluded_primes = {3};
    } else if (name == "BS1m1") {
        out.expr = Z::product_of({zeta_power(1, 1, 2), zeta_power(0, 1, -2), zeta_power(0, 2, 2), Z::riemann(3, 2),
                                  zeta_power(1, 2, -1), zeta_power(2, 2, -2)});
        out.excluded_primes = {2};
    } else if (name == "C2wrZ") {
        out.expr = Z::product_of({Z::rational_factor(2, 1, 0, 1), Z::euler_atom(1, 1, 1, 0, 2),
                                  Z::power_of(Z::euler_atom(2, 0, 1, 2, 1), -1), Z::euler_atom(2, 1, 1, 2, 1)});
    } else if (name == "C3wrZ") {
        out.expr = Z::product_of({Z::rational_factor(3, 1, 0, 1), Z::euler_atom(1, 1, 1, 0, 3),
                                  Z::power_of(Z::euler_atom(3, 0, 1, 3, 1), -1), Z::euler_atom(3, 1, 1, 3, 1),
                                  Z::power_of(Z::euler_atom(3, 0, 2, 3, 2), -1),
                                  Z::power_of(Z::euler_atom(-1, 1, 1, 3, 2), -1), Z::euler_atom(3, 2, 2, 3, 2),
                                  Z::euler_atom(-1, 0, 1, 3, 2)});
    } else if (name == "eta_ZwrC2") {
        out.expr = Z::product_of({zeta_power(1, 1, 2), zeta_power(0, 1, -2), Z::riemann(0, 2), zeta_power(2, 2, -1),
                                  Z::power_of(Z::product_of({Z::riemann(3, 2), zeta_power(1, 2, -1)}), Rational(1, 2))});
        out.rational_local_factors = false;
        out.allow_fractional_powers = true;
        out.excluded_primes = {2};
        out.note = "does not have rational local factors";
    } else {
        throw UsageError("unknown closed-form preset '" + name + "'");
    }
    validate(out.expr, out.allow_fractional_powers);
    return out;
}

}  // namespace repzeta

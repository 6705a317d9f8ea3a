#include "repzeta/wedderburn.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/gf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace repzeta {

using nlohmann::json;

PermGroup::PermGroup(const FiniteGroupSpec& spec, std::size_t cap) : degree_(spec.degree) {
    if (degree_ > 255) throw CapabilityError("FiniteGroup: permutation degree above 255");
    std::map<std::vector<std::uint8_t>, std::size_t> index;
    std::vector<std::uint8_t> id(degree_);
    std::iota(id.begin(), id.end(), 0);
    elements_.push_back(id);
    index[id] = 0;
    std::vector<std::vector<std::uint8_t>> gens;
    for (const auto& g : spec.generators) gens.emplace_back(g.begin(), g.end());

    auto compose = [&](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
        std::vector<std::uint8_t> c(degree_);
        for (unsigned x = 0; x < degree_; ++x) c[x] = a[b[x]];
        return c;
    };

    for (std::size_t i = 0; i < elements_.size(); ++i) {
        for (const auto& g : gens) {
            auto c = compose(g, elements_[i]);
            if (!index.count(c)) {
                if (elements_.size() >= cap)
                    throw CapabilityError("FiniteGroup: group order exceeds cap " + std::to_string(cap));
                index[c] = elements_.size();
                elements_.push_back(std::move(c));
            }
        }
    }
    std::size_t N = elements_.size();
    table_.assign(N * N, 0);
    inverse_.assign(N, 0);
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < N; ++b) {
            std::size_t c = index.at(compose(elements_[a], elements_[b]));
            table_[a * N + b] = c;
            if (c == 0) inverse_[a] = b;
        }
    }
    for (const auto& g : gens) generators_.push_back(index.at(g));

    class_of_.assign(N, N);
    for (std::size_t a = 0; a < N; ++a) {
        if (class_of_[a] != N) continue;
        std::size_t cls = classes_.size();
        classes_.push_back({a});
        class_of_[a] = cls;
        for (std::size_t t = 0; t < classes_[cls].size(); ++t) {
            std::size_t x = classes_[cls][t];
            for (std::size_t g : generators_) {
                std::size_t y = mul(mul(g, x), inverse_[g]);
                if (class_of_[y] == N) {
                    class_of_[y] = cls;
                    classes_[cls].push_back(y);
                }
            }
        }
    }
}

std::size_t PermGroup::index_of(const std::vector<std::uint8_t>& perm) const {
    auto it = std::find(elements_.begin(), elements_.end(), perm);
    if (it == elements_.end()) throw DomainError("permutation not in group");
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t PermGroup::element_order(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::uint64_t PermGroup::exponent() const {
    std::uint64_t e = 1;
    for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, static_cast<std::uint64_t>(element_order(a)));
    return e;
}

namespace {

using Vec = std::vector<GF::Elem>;

// The centre of F_q[G] in the class-sum basis.
struct Centre {
    const GF& F;
    std::size_t r;
    std::vector<GF::Elem> gamma;  // gamma[(a*r + b)*r + c]

    Vec mul(const Vec& x, const Vec& y) const {
        Vec z(r, 0);
        for (std::size_t a = 0; a < r; ++a) {
            if (!x[a]) continue;
            for (std::size_t b = 0; b < r; ++b) {
                if (!y[b]) continue;
                GF::Elem xy = F.mul(x[a], y[b]);
                const GF::Elem* g = &gamma[(a * r + b) * r];
                for (std::size_t c = 0; c < r; ++c)
                    if (g[c]) z[c] = F.add(z[c], F.mul(xy, g[c]));
            }
        }
        return z;
    }
};

// Reduces v against an echelon basis; returns true when v is independent and
// appends it (with its combination in terms of the inserted vectors).
struct Echelon {
    const GF& F;
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;
    std::vector<Vec> combos;

    bool insert(Vec v, Vec combo, Vec* dependency) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            GF::Elem c = v[pivots[i]];
            if (!c) continue;
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = F.sub(v[t], F.mul(c, rows[i][t]));
            for (std::size_t t = 0; t < combo.size(); ++t) combo[t] = F.sub(combo[t], F.mul(c, combos[i][t]));
        }
        std::size_t piv = 0;
        while (piv < v.size() && !v[piv]) ++piv;
        if (piv == v.size()) {
            if (dependency) *dependency = combo;
            return false;
        }
        GF::Elem inv = F.inv(v[piv]);
        for (auto& x : v) x = F.mul(x, inv);
        for (auto& x : combo) x = F.mul(x, inv);
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        combos.push_back(std::move(combo));
        return true;
    }
};

std::size_t span_dim(const GF& F, const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    Matrix m(vs.size(), vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t t = 0; t < vs[i].size(); ++t) m.at(i, t) = vs[i][t];
    return rank(F, m);
}

// Minimal polynomial of z in the algebra with identity e.
Poly minimal_polynomial(const Centre& Z, const Vec& e, const Vec& z) {
    const GF& F = Z.F;
    Echelon ech{F, {}, {}, {}};
    Vec power = e;
    for (std::size_t deg = 0;; ++deg) {
        Vec combo(Z.r + 1, 0);
        combo[deg] = 1;
        Vec dep;
        if (!ech.insert(power, combo, &dep)) {
            // dep is a combination of z^0..z^deg that vanishes, monic in z^deg.
            Poly f = dep;
            poly_trim(f);
            return poly_monic(F, f);
        }
        power = Z.mul(power, z);
    }
}

Vec eval_poly(const Centre& Z, const Poly& f, const Vec& e, const Vec& z) {
    Vec acc(Z.r, 0);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc = Z.mul(acc, z);
        for (std::size_t t = 0; t < Z.r; ++t) acc[t] = Z.F.add(acc[t], Z.F.mul(f[i], e[t]));
    }
    return acc;
}

}  // namespace

SemisimpleDecomposition decompose_group_algebra(const PermGroup& G, std::uint64_t p, unsigned j) {
    const std::size_t N = G.order();
    if (N % p == 0)
        throw ModularCaseError("wedderburn: p = " + std::to_string(p) + " divides |G| = " + std::to_string(N) +
                               "; supply a ramified override");
    auto Fp = make_field(p, j);
    const GF& F = *Fp;
    const auto& cls = G.classes();
    const std::size_t r = cls.size();

    Centre Z{F, r, std::vector<GF::Elem>(r * r * r, 0)};
    for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t c = 0; c < r; ++c) {
            std::size_t gc = cls[c][0];
            std::vector<std::uint64_t> cnt(r, 0);
            for (std::size_t x : cls[a]) ++cnt[G.class_of(G.mul(G.inverse(x), gc))];
            for (std::size_t b = 0; b < r; ++b) Z.gamma[(a * r + b) * r + c] = F.from_int(static_cast<long long>(cnt[b] % p));
        }
    }

    Vec one(r, 0);
    one[G.class_of(0)] = 1;
    std::vector<Vec> todo{one}, fields;
    CounterRng rng(0x77656464ull, p * 1000003ull + j);
    while (!todo.empty()) {
        Vec e = todo.back();
        todo.pop_back();
        std::vector<Vec> basis;
        for (std::size_t c = 0; c < r; ++c) {
            Vec cc(r, 0);
            cc[c] = 1;
            basis.push_back(Z.mul(e, cc));
        }
        std::size_t dim = span_dim(F, basis);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 200) throw CapabilityError("wedderburn: centre splitting did not converge");
            Vec z(r, 0);
            for (std::size_t c = 0; c < r; ++c) {
                GF::Elem coef = rng.below(F.q());
                for (std::size_t t = 0; t < r; ++t) z[t] = F.add(z[t], F.mul(coef, basis[c][t]));
            }
            Poly mp = minimal_polynomial(Z, e, z);
            auto factors = factor_squarefree(F, mp, rng);
            if (factors.size() == 1) {
                if (static_cast<std::size_t>(poly_degree(mp)) == dim) {
                    fields.push_back(e);
                    break;
                }
                continue;
            }
            for (const auto& f : factors) {
                Poly cof, rem;
                poly_divmod(F, mp, f, cof, rem);
                Poly inv = poly_invmod(F, poly_mod(F, cof, f), f);
                Poly g = poly_mod(F, poly_mul(F, cof, inv), mp);
                todo.push_back(eval_poly(Z, g, e, z));
            }
            break;
        }
    }

    SemisimpleDecomposition out{p, j, {}};
    std::size_t total = 0;
    for (const Vec& e : fields) {
        std::vector<Vec> basis;
        for (std::size_t c = 0; c < r; ++c) {
            Vec cc(r, 0);
            cc[c] = 1;
            basis.push_back(Z.mul(e, cc));
        }
        auto k = static_cast<unsigned>(span_dim(F, basis));
        // dim(e F_q[G]) by the rank of left multiplication.
        Vec eg(N, 0);
        for (std::size_t g = 0; g < N; ++g) eg[g] = e[G.class_of(g)];
        Matrix L(N, N);
        for (std::size_t h = 0; h < N; ++h)
            for (std::size_t g = 0; g < N; ++g)
                if (eg[g]) {
                    std::size_t gh = G.mul(g, h);
                    L.at(gh, h) = F.add(L.at(gh, h), eg[g]);
                }
        std::size_t dimA = rank(F, L);
        auto n = static_cast<unsigned>(std::llround(std::sqrt(static_cast<double>(dimA / k))));
        if (static_cast<std::size_t>(n) * n * k != dimA) throw CapabilityError("wedderburn: inconsistent component dimension");
        out.components.push_back({n, k});
        total += dimA;
    }
    if (total != N) throw CapabilityError("wedderburn: dimension identity failed");
    std::sort(out.components.begin(), out.components.end());
    return out;
}

std::uint64_t counts_from_decomposition(const SemisimpleDecomposition& d, unsigned j, unsigned n) {
    std::uint64_t total = 0;
    for (const auto& c : d.components)
        if (c.n == n && j % c.k == 0) total += c.k;
    return total;
}

bool RamifiedOverride::covers(std::uint64_t p) const {
    return std::any_of(entries.begin(), entries.end(), [&](const OverrideEntry& e) { return e.p == p; });
}

std::uint64_t RamifiedOverride::lookup(std::uint64_t p, unsigned j, unsigned n) const {
    std::uint64_t total = 0;
    for (const auto& e : entries) {
        if (e.p != p || e.n != n) continue;
        if (e.extend ? j % e.j == 0 : j == e.j) total += e.count;
    }
    return total;
}

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RamifiedOverride parse_ramified_override(const std::string& text) {
    RamifiedOverride out;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return out;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("override: " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("override: top level must be an object");
    if (doc.contains("group")) out.group = doc.at("group").get<std::string>();
    if (!doc.contains("entries")) return out;
    if (!doc.at("entries").is_array()) throw ParseError("override: 'entries' must be an array");
    for (const auto& item : doc.at("entries")) {
        OverrideEntry e;
        try {
            long long p = item.at("p").get<long long>();
            long long j = item.at("j").get<long long>();
            long long n = item.at("n").get<long long>();
            long long count = item.at("count").get<long long>();
            if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("p", "must be prime");
            if (j < 1) throw ParameterError("j", "must be at least 1");
            if (n < 1) throw ParameterError("n", "must be at least 1");
            if (count < 0) throw ParameterError("count", "must be non-negative");
            e.p = static_cast<std::uint64_t>(p);
            e.j = static_cast<unsigned>(j);
            e.n = static_cast<unsigned>(n);
            e.count = static_cast<std::uint64_t>(count);
            if (item.contains("source")) e.source = item.at("source").get<std::string>();
            if (item.contains("extend")) e.extend = item.at("extend").get<bool>();
        } catch (const json::exception& ex) {
            throw ParseError(std::string("override entry: ") + ex.what());
        }
        out.entries.push_back(e);
    }
    return out;
}

RamifiedOverride load_ramified_override(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("override: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ramified_override(ss.str());
}

RamifiedOverride builtin_override(const std::string& id) {
    if (id == "S4") {
        // Simple modules of S4: mod 2 the trivial and the 2-dimensional module,
        // mod 3 the trivial, the sign and the two 3-dimensional modules.
        const std::string src = "S4 modular simples, checked against hom counts and p-regular classes";
        RamifiedOverride o;
        o.group = "S4";
        o.entries = {
            {2, 1, 1, 1, src, true},
            {2, 1, 2, 1, src, true},
            {3, 1, 1, 2, src, true},
            {3, 1, 3, 2, src, true},
        };
        return o;
    }
    throw UsageError("override: no built-in dataset '" + id + "'");
}

RamifiedOverride resolve_override(const std::string& source) {
    if (source.empty()) return {};
    if (source.rfind("builtin:", 0) == 0) return builtin_override(source.substr(8));
    return load_ramified_override(source);
}

}  // namespace repzeta

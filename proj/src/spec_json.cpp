#include "repzeta/spec.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/wedderburn.hpp"

#include <cmath>

namespace repzeta {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& params, const char* name) {
    if (!params.contains(name)) throw ParameterError(name, "missing");
    return params.at(name);
}

std::uint64_t get_uint(const json& params, const char* name, std::uint64_t min_value) {
    const json& v = field(params, name);
    if (!v.is_number_integer()) throw ParameterError(name, "must be an integer");
    long long x = v.get<long long>();
    if (x < static_cast<long long>(min_value)) throw ParameterError(name, "must be at least " + std::to_string(min_value));
    return static_cast<std::uint64_t>(x);
}

std::uint64_t get_prime(const json& params, const char* name) {
    std::uint64_t p = get_uint(params, name, 2);
    if (!is_prime(p)) throw ParameterError(name, "must be prime");
    return p;
}

std::vector<std::vector<long long>> mat_mul(const std::vector<std::vector<long long>>& a,
                                            const std::vector<std::vector<long long>>& b) {
    std::size_t d = a.size();
    std::vector<std::vector<long long>> c(d, std::vector<long long>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

void validate_virtually_abelian(const VirtuallyAbelianSpec& s) {
    if (s.d < 1) throw ParameterError("d", "must be at least 1");
    if (s.order < 1) throw ParameterError("order", "must be at least 1");
    if (s.action.size() != s.d) throw ParameterError("action", "must be a d x d matrix");
    for (const auto& row : s.action)
        if (row.size() != s.d) throw ParameterError("action", "must be a d x d matrix");
    if (s.translation.size() != s.d) throw ParameterError("translation", "must have length d");
    std::vector<std::vector<long long>> id(s.d, std::vector<long long>(s.d, 0));
    for (unsigned i = 0; i < s.d; ++i) id[i][i] = 1;
    auto pw = id;
    for (unsigned i = 0; i < s.order; ++i) pw = mat_mul(pw, s.action);
    if (pw != id) throw ParameterError("action", "M^order must be the identity");
    for (unsigned i = 0; i < s.d; ++i) {
        long long acc = 0;
        for (unsigned j = 0; j < s.d; ++j) acc += s.action[i][j] * s.translation[j];
        if (acc != s.translation[i]) throw ParameterError("translation", "must be fixed by the action");
    }
}

void validate_permutations(const FiniteGroupSpec& g) {
    if (g.degree < 1) throw ParameterError("degree", "must be at least 1");
    for (const auto& perm : g.generators) {
        if (perm.size() != g.degree) throw ParameterError("generators", "each generator must list degree images");
        std::vector<bool> seen(g.degree, false);
        for (unsigned x : perm) {
            if (x >= g.degree || seen[x]) throw ParameterError("generators", "not a permutation");
            seen[x] = true;
        }
    }
}

}  // namespace

std::string family_name(const GroupSpec& spec) {
    return std::visit(overloaded{
                          [](const TrivialSpec&) { return std::string("Trivial"); },
                          [](const ZHatSpec&) { return std::string("ZHat"); },
                          [](const ZHatPowerSpec&) { return std::string("ZHatPower"); },
                          [](const ZpPowerSpec&) { return std::string("ZpPower"); },
                          [](const CyclicSpec&) { return std::string("Cyclic"); },
                          [](const FiniteAbelianSpec&) { return std::string("FiniteAbelian"); },
                          [](const MatrixAlgebraSpec&) { return std::string("MatrixAlgebra"); },
                          [](const RingProductSpec&) { return std::string("RingProduct"); },
                          [](const GroupProductSpec&) { return std::string("GroupProduct"); },
                          [](const LamplighterSpec&) { return std::string("Lamplighter"); },
                          [](const VirtuallyAbelianSpec&) { return std::string("VirtuallyAbelian"); },
                          [](const SL2ProductSpec&) { return std::string("SL2Product"); },
                          [](const FiniteGroupSpec&) { return std::string("FiniteGroup"); },
                          [](const FreeProPSpec&) { return std::string("FreeProP"); },
                      },
                      spec.v);
}

VirtuallyAbelianSpec virtually_abelian_preset(const std::string& name) {
    VirtuallyAbelianSpec s;
    s.preset = name;
    if (name == "ZwrC2") {
        s.d = 2;
        s.action = {{0, 1}, {1, 0}};
        s.order = 2;
        s.translation = {0, 0};
    } else if (name == "Dinf") {
        s.d = 1;
        s.action = {{-1}};
        s.order = 2;
        s.translation = {0};
    } else if (name == "BS1m1") {
        s.d = 2;
        s.action = {{-1, 0}, {0, 1}};
        s.order = 2;
        s.translation = {0, 1};
    } else if (name == "ZwrC3") {
        s.d = 3;
        s.action = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
        s.order = 3;
        s.translation = {0, 0, 0};
    } else {
        throw ParameterError("preset", "unknown virtually abelian preset '" + name + "'");
    }
    return s;
}

FiniteGroupSpec finite_group_preset(const std::string& name) {
    FiniteGroupSpec g;
    g.name = name;
    if (name == "trivial") {
        g.degree = 1;
    } else if (name == "C2") {
        g.degree = 2;
        g.generators = {{1, 0}};
    } else if (name == "C4") {
        g.degree = 4;
        g.generators = {{1, 2, 3, 0}};
    } else if (name == "S3") {
        g.degree = 3;
        g.generators = {{1, 0, 2}, {1, 2, 0}};
    } else if (name == "S4") {
        g.degree = 4;
        g.generators = {{1, 0, 2, 3}, {1, 2, 3, 0}};
        g.override_source = "builtin:S4";
    } else if (name == "A4") {
        g.degree = 4;
        g.generators = {{1, 2, 0, 3}, {0, 2, 3, 1}};
    } else if (name == "S5") {
        g.degree = 5;
        g.generators = {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}};
    } else if (name == "D4") {
        g.degree = 4;
        g.generators = {{1, 2, 3, 0}, {3, 2, 1, 0}};
    } else {
        throw ParameterError("preset", "unknown finite group preset '" + name + "'");
    }
    return g;
}

GroupSpec spec_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("family") || !doc.at("family").is_string())
        throw ParseError("group spec must be an object with a string 'family'");
    const std::string family = doc.at("family").get<std::string>();
    const json params = doc.contains("params") ? doc.at("params") : json::object();
    if (!params.is_object()) throw ParseError("group spec 'params' must be an object");

    if (family == "Trivial") return TrivialSpec{};
    if (family == "ZHat") return ZHatSpec{};
    if (family == "ZHatPower" || family == "FreeAbelianPro") {
        return ZHatPowerSpec{static_cast<unsigned>(get_uint(params, "r", 1))};
    }
    if (family == "ZpPower") return ZpPowerSpec{get_prime(params, "p"), static_cast<unsigned>(get_uint(params, "r", 1))};
    if (family == "Cyclic") return CyclicSpec{get_uint(params, "m", 1)};
    if (family == "FiniteAbelian") {
        const json& m = field(params, "moduli");
        if (!m.is_array()) throw ParameterError("moduli", "must be an array");
        FiniteAbelianSpec s;
        for (const auto& x : m) {
            if (!x.is_number_integer() || x.get<long long>() < 1) throw ParameterError("moduli", "entries must be >= 1");
            s.moduli.push_back(x.get<std::uint64_t>());
        }
        return s;
    }
    if (family == "MatrixAlgebra") {
        return MatrixAlgebraSpec{static_cast<unsigned>(get_uint(params, "n", 1)), get_prime(params, "p"),
                                 static_cast<unsigned>(get_uint(params, "k", 1))};
    }
    if (family == "RingProduct" || family == "GroupProduct") {
        const json& parts = field(params, "parts");
        if (!parts.is_array() || parts.size() < 2) throw ParameterError("parts", "need at least two specs");
        std::vector<GroupSpec> v;
        for (const auto& p : parts) v.push_back(spec_from_json(p));
        if (family == "RingProduct") return RingProductSpec{std::move(v)};
        return GroupProductSpec{std::move(v)};
    }
    if (family == "Lamplighter") {
        auto a = static_cast<unsigned>(get_uint(params, "a", 2));
        if (a != 2 && a != 3) throw ParameterError("a", "must be 2 or 3");
        return LamplighterSpec{a};
    }
    if (family == "VirtuallyAbelian") {
        VirtuallyAbelianSpec s;
        if (params.contains("actions")) {
            const json& acts = params.at("actions");
            if (!acts.is_array() || acts.size() != 1)
                throw UnsupportedSpecError("VirtuallyAbelian: only cyclic point groups (one action matrix) are supported");
            json single = params;
            single["action"] = acts[0];
            single.erase("actions");
            return spec_from_json(json{{"family", family}, {"params", single}});
        }
        if (params.contains("preset") && !params.contains("action")) {
            s = virtually_abelian_preset(params.at("preset").get<std::string>());
        } else {
            if (params.contains("preset")) s.preset = params.at("preset").get<std::string>();
            s.d = static_cast<unsigned>(get_uint(params, "d", 1));
            s.order = static_cast<unsigned>(get_uint(params, "order", 1));
            try {
                s.action = field(params, "action").get<std::vector<std::vector<long long>>>();
                s.translation = params.contains("translation") ? params.at("translation").get<std::vector<long long>>()
                                                                : std::vector<long long>(s.d, 0);
            } catch (const json::exception& e) {
                throw ParameterError("action", e.what());
            }
        }
        validate_virtually_abelian(s);
        return s;
    }
    if (family == "SL2Product") {
        const json& a = field(params, "alpha");
        if (!a.is_number() || a.get<double>() < 0) throw ParameterError("alpha", "must be a non-negative number");
        SL2ProductSpec s{a.get<double>(), false};
        if (params.contains("include_small")) s.include_small = params.at("include_small").get<bool>();
        return s;
    }
    if (family == "FiniteGroup") {
        FiniteGroupSpec g;
        if (params.contains("preset") && !params.contains("generators")) {
            g = finite_group_preset(params.at("preset").get<std::string>());
            if (params.contains("override")) g.override_source = params.at("override").get<std::string>();
            return g;
        }
        g.degree = static_cast<unsigned>(get_uint(params, "degree", 1));
        if (params.contains("name")) g.name = params.at("name").get<std::string>();
        if (params.contains("override")) g.override_source = params.at("override").get<std::string>();
        const json& gens = field(params, "generators");
        if (!gens.is_array()) throw ParameterError("generators", "must be an array of permutations");
        for (const auto& perm : gens) {
            if (!perm.is_array()) throw ParameterError("generators", "must be an array of permutations");
            std::vector<unsigned> images;
            for (const auto& x : perm) {
                if (!x.is_number_integer() || x.get<long long>() < 1)
                    throw ParameterError("generators", "images are 1-based integers");
                images.push_back(x.get<unsigned>() - 1);
            }
            g.generators.push_back(std::move(images));
        }
        validate_permutations(g);
        return g;
    }
    if (family == "FreeProP") {
        return FreeProPSpec{get_prime(params, "p"), static_cast<unsigned>(get_uint(params, "r", 1))};
    }
    throw ParseError("unknown group family '" + family + "'");
}

json spec_to_json(const GroupSpec& spec) {
    json params = json::object();
    std::visit(overloaded{
                   [](const TrivialSpec&) {},
                   [](const ZHatSpec&) {},
                   [&](const ZHatPowerSpec& s) { params["r"] = s.r; },
                   [&](const ZpPowerSpec& s) {
                       params["p"] = s.p;
                       params["r"] = s.r;
                   },
                   [&](const CyclicSpec& s) { params["m"] = s.m; },
                   [&](const FiniteAbelianSpec& s) { params["moduli"] = s.moduli; },
                   [&](const MatrixAlgebraSpec& s) {
                       params["n"] = s.n;
                       params["p"] = s.p;
                       params["k"] = s.k;
                   },
                   [&](const RingProductSpec& s) {
                       params["parts"] = json::array();
                       for (const auto& p : s.parts) params["parts"].push_back(spec_to_json(p));
                   },
                   [&](const GroupProductSpec& s) {
                       params["parts"] = json::array();
                       for (const auto& p : s.parts) params["parts"].push_back(spec_to_json(p));
                   },
                   [&](const LamplighterSpec& s) { params["a"] = s.a; },
                   [&](const VirtuallyAbelianSpec& s) {
                       if (!s.preset.empty()) params["preset"] = s.preset;
                       params["d"] = s.d;
                       params["action"] = s.action;
                       params["order"] = s.order;
                       params["translation"] = s.translation;
                   },
                   [&](const SL2ProductSpec& s) {
                       params["alpha"] = s.alpha;
                       if (s.include_small) params["include_small"] = true;
                   },
                   [&](const FiniteGroupSpec& g) {
                       if (!g.name.empty()) params["name"] = g.name;
                       params["degree"] = g.degree;
                       json gens = json::array();
                       for (const auto& perm : g.generators) {
                           json row = json::array();
                           for (unsigned x : perm) row.push_back(x + 1);
                           gens.push_back(row);
                       }
                       params["generators"] = gens;
                       if (!g.override_source.empty()) params["override"] = g.override_source;
                   },
                   [&](const FreeProPSpec& s) {
                       params["p"] = s.p;
                       params["r"] = s.r;
                   },
               },
               spec.v);
    return json{{"family", family_name(spec)}, {"params", params}};
}

GroupSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("group spec: ") + e.what());
    }
    return spec_from_json(doc);
}

UbergConstant default_uberg(const GroupSpec& spec) {
    return std::visit(
        overloaded{
            [](const TrivialSpec&) { return UbergConstant{0, 1, true}; },
            [](const ZHatSpec&) { return UbergConstant{1, 1, true}; },
            [](const ZHatPowerSpec& s) { return UbergConstant{static_cast<double>(s.r), 1, true}; },
            [](const ZpPowerSpec& s) { return UbergConstant{static_cast<double>(s.r), 1, true}; },
            [](const CyclicSpec& s) { return UbergConstant{0, static_cast<double>(s.m), true}; },
            [](const FiniteAbelianSpec& s) {
                double K = 1;
                for (auto m : s.moduli) K *= static_cast<double>(m);
                return UbergConstant{0, K, true};
            },
            [](const MatrixAlgebraSpec& s) { return UbergConstant{0, static_cast<double>(s.k), true}; },
            [](const RingProductSpec& s) {
                UbergConstant out{0, 0, true};
                for (const auto& p : s.parts) {
                    auto u = default_uberg(p);
                    out.known = out.known && u.known;
                    out.c = std::max(out.c, u.c);
                    out.K += u.K;
                }
                return out;
            },
            [](const GroupProductSpec& s) {
                // The divisor-count factor of the convolution is absorbed by one extra unit of c.
                UbergConstant out{1, 1, true};
                for (const auto& p : s.parts) {
                    auto u = default_uberg(p);
                    out.known = out.known && u.known;
                    out.c += u.c;
                    out.K *= u.K;
                }
                return out;
            },
            [](const LamplighterSpec& s) { return s.a == 2 ? UbergConstant{1, 2, true} : UbergConstant{2, 2, true}; },
            [](const VirtuallyAbelianSpec& s) {
                if (s.preset == "ZwrC2") return UbergConstant{1, 2, true};
                return UbergConstant{static_cast<double>(s.d), std::ldexp(1.0, static_cast<int>(s.d)) * s.order, true};
            },
            [](const SL2ProductSpec&) { return UbergConstant{}; },
            [](const FiniteGroupSpec& g) {
                return UbergConstant{0, static_cast<double>(PermGroup(g).order()), true};
            },
            [](const FreeProPSpec&) { return UbergConstant{}; },
        },
        spec.v);
}

KnownAbscissa known_abscissa(const GroupSpec& spec) {
    return std::visit(overloaded{
                          [](const TrivialSpec&) { return KnownAbscissa{1, true}; },
                          [](const ZHatSpec&) { return KnownAbscissa{2, true}; },
                          [](const ZHatPowerSpec& s) { return KnownAbscissa{s.r + 1.0, true}; },
                          [](const CyclicSpec&) { return KnownAbscissa{1, true}; },
                          [](const FiniteAbelianSpec&) { return KnownAbscissa{1, true}; },
                          [](const FiniteGroupSpec&) { return KnownAbscissa{1, true}; },
                          [](const LamplighterSpec&) { return KnownAbscissa{2, true}; },
                          [](const SL2ProductSpec& s) { return KnownAbscissa{s.alpha / 2 + 1, true}; },
                          [](const auto&) { return KnownAbscissa{}; },
                      },
                      spec.v);
}

}  // namespace repzeta

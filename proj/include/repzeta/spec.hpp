#pragma once

#include "repzeta/bigint.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace repzeta {

struct GroupSpec;

struct TrivialSpec {};
struct ZHatSpec {};
struct ZHatPowerSpec {
    unsigned r = 1;
};
struct ZpPowerSpec {
    std::uint64_t p = 2;
    unsigned r = 1;
};
struct CyclicSpec {
    std::uint64_t m = 1;
};
struct FiniteAbelianSpec {
    std::vector<std::uint64_t> moduli;
};
struct MatrixAlgebraSpec {
    unsigned n = 1;
    std::uint64_t p = 2;
    unsigned k = 1;
};
struct RingProductSpec {
    std::vector<GroupSpec> parts;
};
struct GroupProductSpec {
    std::vector<GroupSpec> parts;
};
struct LamplighterSpec {
    unsigned a = 2;
};

// Z^d extended by an element t acting through the integer matrix M, with
// t^m = a0 in Z^d. Presets fill in M, m and a0.
struct VirtuallyAbelianSpec {
    std::string preset;
    unsigned d = 1;
    std::vector<std::vector<long long>> action;
    unsigned order = 1;
    std::vector<long long> translation;
};

// G_alpha: SL(2,p)^floor(p^alpha) over primes p > 3, or over all primes
// when include_small is set.
struct SL2ProductSpec {
    double alpha = 1.0;
    bool include_small = false;
};

// Permutations are 0-based internally and 1-based in JSON.
struct FiniteGroupSpec {
    std::string name;
    unsigned degree = 1;
    std::vector<std::vector<unsigned>> generators;
    std::string override_source;
};

struct FreeProPSpec {
    std::uint64_t p = 2;
    unsigned r = 2;
};

using SpecVariant = std::variant<TrivialSpec, ZHatSpec, ZHatPowerSpec, ZpPowerSpec, CyclicSpec, FiniteAbelianSpec,
                                 MatrixAlgebraSpec, RingProductSpec, GroupProductSpec, LamplighterSpec,
                                 VirtuallyAbelianSpec, SL2ProductSpec, FiniteGroupSpec, FreeProPSpec>;

struct GroupSpec {
    SpecVariant v;

    GroupSpec() : v(TrivialSpec{}) {}
    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, GroupSpec> && std::is_constructible_v<SpecVariant, T>)
    GroupSpec(T t) : v(std::move(t)) {}
};

std::string family_name(const GroupSpec& spec);

// Throws ParseError for malformed documents and ParameterError for
// out-of-range values.
GroupSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const GroupSpec& spec);
GroupSpec parse_spec(const std::string& text);

VirtuallyAbelianSpec virtually_abelian_preset(const std::string& name);
FiniteGroupSpec finite_group_preset(const std::string& name);

// Growth envelope count <= K * q^(c n) used by tail estimates.
struct UbergConstant {
    double c = 0;
    double K = 1;
    bool known = false;
};
UbergConstant default_uberg(const GroupSpec& spec);

// Documented abscissa for families where it is known in closed form.
struct KnownAbscissa {
    double value = 0;
    bool known = false;
};
KnownAbscissa known_abscissa(const GroupSpec& spec);

}  // namespace repzeta

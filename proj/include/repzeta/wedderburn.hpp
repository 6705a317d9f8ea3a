#pragma once

#include "repzeta/spec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace repzeta {

constexpr std::size_t kDefaultGroupCap = 200;

// Elements are stored as image arrays; element 0 is the identity and
// mul(a, b) is the composition a after b.
class PermGroup {
public:
    PermGroup(const FiniteGroupSpec& spec, std::size_t cap = kDefaultGroupCap);

    std::size_t order() const { return elements_.size(); }
    unsigned degree() const { return degree_; }
    const std::vector<std::uint8_t>& element(std::size_t i) const { return elements_[i]; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::size_t index_of(const std::vector<std::uint8_t>& perm) const;
    std::size_t element_order(std::size_t a) const;
    std::uint64_t exponent() const;

    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    std::size_t class_of(std::size_t a) const { return class_of_[a]; }
    const std::vector<std::size_t>& generator_indices() const { return generators_; }

private:
    unsigned degree_;
    std::vector<std::vector<std::uint8_t>> elements_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> generators_;
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::size_t> class_of_;
};

struct WedderburnComponent {
    unsigned n = 1;  // matrix size
    unsigned k = 1;  // degree of the centre over the base field
    bool operator==(const WedderburnComponent&) const = default;
    bool operator<(const WedderburnComponent& o) const { return n != o.n ? n < o.n : k < o.k; }
};

struct SemisimpleDecomposition {
    std::uint64_t p = 2;
    unsigned j = 1;
    std::vector<WedderburnComponent> components;  // sorted
};

// F_q[G] with q = p^j and p not dividing |G|. Throws ModularCaseError
// otherwise.
SemisimpleDecomposition decompose_group_algebra(const PermGroup& G, std::uint64_t p, unsigned j = 1);

// Number of absolutely irreducible n-dimensional representations over
// F_{q^j} where q is the decomposition's base field.
std::uint64_t counts_from_decomposition(const SemisimpleDecomposition& d, unsigned j, unsigned n);

struct OverrideEntry {
    std::uint64_t p = 2;
    unsigned j = 1;
    unsigned n = 1;
    std::uint64_t count = 0;
    std::string source;
    // Applies at every field degree divisible by j, contributing count each time.
    bool extend = false;
};

struct RamifiedOverride {
    std::string group;
    std::vector<OverrideEntry> entries;

    bool covers(std::uint64_t p) const;
    // Count at (p, j, n) for a covered prime.
    std::uint64_t lookup(std::uint64_t p, unsigned j, unsigned n) const;
};

RamifiedOverride parse_ramified_override(const std::string& text);
RamifiedOverride load_ramified_override(const std::string& path);
// Built-in datasets by id, e.g. "S4".
RamifiedOverride builtin_override(const std::string& id);
// Accepts "builtin:<id>", a file path, or an empty string (no data).
RamifiedOverride resolve_override(const std::string& source);

}  // namespace repzeta

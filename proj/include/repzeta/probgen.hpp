#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/repcount.hpp"
#include "repzeta/spec.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace repzeta {

// M_n(F_{p^k}).
struct MatrixComponent {
    unsigned n = 1;
    std::uint64_t p = 2;
    unsigned k = 1;
};

struct SemisimpleRingSpec {
    std::vector<MatrixComponent> components;
};

void validate(const SemisimpleRingSpec& spec);

// prod over components of prod_{i<n} (1 - p^{ki} / p^{l k n}).
Rational exact_generation_probability(const SemisimpleRingSpec& spec, unsigned ell);
double log_generation_probability(const SemisimpleRingSpec& spec, unsigned ell);

struct McEstimate {
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t seed = 0;
};

// Trial t draws from CounterRng(seed, t), so the result does not depend on
// the number of threads. threads = 0 uses the hardware concurrency.
McEstimate mc_generation_probability(const SemisimpleRingSpec& spec, unsigned ell, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads = 0);

// Components M_d(F_{p^e}) of the semisimple quotient, one per Frobenius orbit
// of absolutely irreducible representations new at level e, for p^{ed} <= X.
SemisimpleRingSpec truncated_semisimple_quotient(const GroupSpec& spec, std::uint64_t X,
                                                 CountMode mode = CountMode::exact);

// MatrixAlgebra and ring products of them: the exact component list.
std::optional<SemisimpleRingSpec> finite_ring_components(const GroupSpec& spec);

struct GenerationReport {
    std::string family;
    unsigned ell = 1;
    std::uint64_t X = 0;
    std::size_t components = 0;
    bool truncated = true;
    std::optional<Rational> exact;
    double exact_value = 0;
    McEstimate mc;
    // 1/zeta_G(ell) lies in [zeta_reciprocal_lo, zeta_reciprocal_hi].
    double zeta_reciprocal = 0;
    double zeta_reciprocal_lo = 0;
    double zeta_reciprocal_hi = 0;
    double tail_bound = 0;
    bool exact_within_zeta = false;
    // |mc - exact| <= 4 stderr (true when no trials were run).
    bool mc_within_4sigma = true;
};

// Exact rationals are kept when the component list is at most this long.
inline constexpr std::size_t kExactComponentLimit = 4096;

GenerationReport verify_reciprocal_identity(const GroupSpec& spec, unsigned ell, std::uint64_t X,
                                            std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

nlohmann::json to_json(const GenerationReport& r);
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_row(const GenerationReport& r);

}  // namespace repzeta

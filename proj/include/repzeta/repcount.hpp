#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/spec.hpp"

#include <cstdint>
#include <string>

namespace repzeta {

enum class Exactness { exact, lower_bound, upper_bound };
std::string to_string(Exactness e);

// exact: refuse anything that is not an exact count.
// upper_bound: accept upper-bound envelopes for bounds-only families.
// characteristic_only: for SL2Product, the exact defining-characteristic
// stream (a lower bound for the full group).
enum class CountMode { exact, upper_bound, characteristic_only };
CountMode parse_count_mode(const std::string& text);
std::string to_string(CountMode m);

struct CountQuery {
    std::uint64_t p = 2;
    unsigned j = 1;
    unsigned n = 1;
};

struct CountResult {
    BigInt value;
    Exactness exactness = Exactness::exact;
};

// r*(G, F_{p^j}, n).
CountResult count_abs_irr(const GroupSpec& spec, const CountQuery& q, CountMode mode = CountMode::exact);

// Sum over d | n of r*(A, d) r*(B, n/d).
CountResult convolve_product(const GroupSpec& a, const GroupSpec& b, const CountQuery& q,
                             CountMode mode = CountMode::exact);

// Number of sequences in (Z/a)^Z of exact period n.
BigInt periodic_orbit_count(unsigned a, unsigned n);

// Enumerates exact-period-n sequences over Z/a, keeps the shift orbits that
// the q-power map fixes, and multiplies by the q-1 scalars.
BigInt lamplighter_orbit_oracle(unsigned a, std::uint64_t q, unsigned n);

// Closed form of r*(C_a wr Z, F_q, n).
BigInt lamplighter_count(unsigned a, const BigInt& q, std::uint64_t p, unsigned n);

// r(G, F_{p^j}, n), irreducible but not necessarily absolutely irreducible.
CountResult count_irr(const GroupSpec& spec, const CountQuery& q, CountMode mode = CountMode::exact);

// m*(e, d) at base field F_{p^j}: absolutely irreducible d-dimensional
// representations whose field of definition is exactly F_{p^{je}}.
BigInt new_at_level(const GroupSpec& spec, std::uint64_t p, unsigned j, unsigned e, unsigned d,
                    CountMode mode = CountMode::exact);

// Defining-characteristic stream of G_alpha at characteristic p: tensor
// products of L(0..p-1) over floor(p^alpha) copies. Zero for excluded p.
BigInt sl2_characteristic_count(const SL2ProductSpec& s, std::uint64_t p, unsigned n);
// Upper envelope for the cross-characteristic part in dimension n.
BigInt sl2_cross_envelope(const SL2ProductSpec& s, std::uint64_t p, unsigned n);
std::uint64_t sl2_copies(const SL2ProductSpec& s, std::uint64_t p);

}  // namespace repzeta

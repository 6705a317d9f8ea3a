#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/spec.hpp"

#include <cstdint>
#include <vector>

namespace repzeta {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Diagonal of a Smith-type diagonalisation (unimodular row and column
// operations); zeros included, length min(rows, cols).
std::vector<BigInt> smith_diagonal(IntMatrix m);

// Number of x in (Z/N)^cols with m x = 0 mod N.
BigInt kernel_size_mod(const IntMatrix& m, const BigInt& N);

// r*(Z^d x| <t>, F_q, n) by orbit counting: classes are a P-orbit of
// characters of Z^d together with an extension to the stabiliser, and
// the Frobenius-stable ones are counted through kernel sizes mod q^m - 1.
BigInt clifford_count(const VirtuallyAbelianSpec& s, const BigInt& q, unsigned n);

// Same count by explicit enumeration of characters with values in
// F_{q^m}. Throws CapabilityError beyond the enumeration cap.
BigInt virtually_abelian_orbit_oracle(const VirtuallyAbelianSpec& s, std::uint64_t q, unsigned n,
                                      std::uint64_t cap = 20000000);

}  // namespace repzeta

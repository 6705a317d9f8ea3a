#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/rng.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace repzeta {

struct FieldDesc {
    std::uint64_t p = 0;
    unsigned j = 0;
    std::uint64_t q = 0;
    // Monic modulus over F_p, coefficients from x^0 up to x^j.
    std::vector<std::uint64_t> modulus;
};

// F_{p^j}. An element is the integer sum c_i p^i of its residue
// coefficients, so elements are exactly 0..q-1.
class GF {
public:
    using Elem = std::uint64_t;

    GF(std::uint64_t p, unsigned j);

    const FieldDesc& desc() const { return desc_; }
    std::uint64_t p() const { return desc_.p; }
    unsigned j() const { return desc_.j; }
    std::uint64_t q() const { return desc_.q; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, const BigInt& e) const;
    Elem pow(Elem a, std::uint64_t e) const;
    Elem frobenius(Elem a) const { return pow(a, desc_.p); }

    std::vector<std::uint64_t> coefficients(Elem a) const;
    Elem from_coefficients(const std::vector<std::uint64_t>& c) const;
    std::string modulus_string() const;

private:
    Elem mul_poly(Elem a, Elem b) const;

    FieldDesc desc_;
    bool tabled_ = false;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

std::shared_ptr<const GF> make_field(std::uint64_t p, unsigned j);

// F_{p^k} is a subfield of F_{p^j} iff k | j.
bool subfield_contained(unsigned k, unsigned j);

// Polynomials over F_p with coefficients from x^0 upwards.
using PrimePoly = std::vector<std::uint64_t>;
bool is_irreducible_mod_p(const PrimePoly& f, std::uint64_t p);

// Polynomials over a GF, coefficients from x^0 upwards, no trailing zeros.
using Poly = std::vector<GF::Elem>;

void poly_trim(Poly& a);
int poly_degree(const Poly& a);
Poly poly_add(const GF& F, const Poly& a, const Poly& b);
Poly poly_sub(const GF& F, const Poly& a, const Poly& b);
Poly poly_mul(const GF& F, const Poly& a, const Poly& b);
void poly_divmod(const GF& F, const Poly& a, const Poly& b, Poly& quot, Poly& rem);
Poly poly_mod(const GF& F, const Poly& a, const Poly& m);
Poly poly_monic(const GF& F, const Poly& a);
Poly poly_gcd(const GF& F, Poly a, Poly b);
Poly poly_powmod(const GF& F, const Poly& base, const BigInt& e, const Poly& m);
Poly poly_derivative(const GF& F, const Poly& a);
// Inverse of a modulo m when gcd(a, m) = 1.
Poly poly_invmod(const GF& F, const Poly& a, const Poly& m);

// Monic irreducible factors of a squarefree monic f, sorted by
// (degree, coefficients). Distinct-degree then equal-degree splitting.
std::vector<Poly> factor_squarefree(const GF& F, const Poly& f, CounterRng& rng);

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<GF::Elem> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    GF::Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    GF::Elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::size_t rank(const GF& F, Matrix m);
Matrix transpose(const Matrix& m);
Matrix random_matrix(const GF& F, std::size_t rows, std::size_t cols, CounterRng& rng);

}  // namespace repzeta

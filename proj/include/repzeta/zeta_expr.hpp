#pragma once

#include "repzeta/bigint.hpp"
#include "repzeta/zeta.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace repzeta {

// Expression tree for closed-form zeta functions in the variable s.
//   zeta      zeta(k s - a)                         (zeta a) or (zeta a k)
//   dedekind  zeta_K, K the fixed field of <h...> in (Z/m)^x
//                                                   (dedekind m (h g1 g2 ...))
//   ratfac    (1 - M^{-a s + b})^e                  (ratfac M a b e)
//   euler     prod over p = r mod m of (1 - c p^{a - k s})^{-1}; m = 0
//             selects the single prime p = r     (euler c a k m r)
//   sharp     f^{#n}(s) = prod_{j<n} f(n s - j)     (sharp n f)
//   power     f^e, e an integer (or 1/2-type rational when allowed)
//                                                   (power f e)
//   product                                         (product f g ...)
struct ZetaExpr {
    enum class Kind { zeta, dedekind, ratfac, euler, sharp, power, product };
    Kind kind = Kind::product;

    long a = 0;         // zeta, ratfac, euler
    unsigned k = 1;     // zeta, euler dilation
    std::uint64_t m = 1;  // dedekind conductor, euler modulus
    std::vector<std::uint64_t> gens;  // dedekind subgroup generators
    std::uint64_t M = 2;  // ratfac base
    long b = 0;           // ratfac
    int e = 1;            // ratfac sign
    long c = 1;           // euler coefficient
    std::uint64_t r = 0;  // euler residue
    unsigned n = 1;       // sharp
    Rational exponent = 1;  // power
    std::vector<ZetaExpr> children;

    static ZetaExpr riemann(long shift, unsigned dilation = 1);
    static ZetaExpr dedekind_atom(std::uint64_t conductor, std::vector<std::uint64_t> subgroup);
    static ZetaExpr rational_factor(std::uint64_t base, long a, long b, int sign);
    static ZetaExpr euler_atom(long coefficient, long a, unsigned dilation, std::uint64_t modulus,
                               std::uint64_t residue);
    static ZetaExpr sharp_of(unsigned n, ZetaExpr child);
    static ZetaExpr power_of(ZetaExpr child, Rational exponent);
    static ZetaExpr product_of(std::vector<ZetaExpr> children);
};

bool operator==(const ZetaExpr& x, const ZetaExpr& y);

// Throws ParameterError on invariant violations (n >= 1, M >= 2, a > b >= 0,
// e = +-1, non-integer power unless allowed).
void validate(const ZetaExpr& e, bool allow_fractional_powers = false);

std::string to_sexpr(const ZetaExpr& e);
ZetaExpr parse_sexpr(const std::string& text, bool allow_fractional_powers = false);

// Splitting of p in the abelian field of (m, H): ramification index,
// residue degree, number of primes. Exact at ramified p as well.
struct PrimeSplitting {
    unsigned e = 1;
    unsigned f = 1;
    unsigned g = 1;
};
PrimeSplitting dedekind_local_data(std::uint64_t m, const std::vector<std::uint64_t>& gens, std::uint64_t p);
unsigned field_degree(std::uint64_t m, const std::vector<std::uint64_t>& gens);

struct EvalOptions {
    double pole_epsilon = 1e-9;
};

// Real evaluation with Euler products truncated at primes <= X. Throws
// PoleError near a pole and ConvergenceError where an Euler product does not
// converge.
double eval_closed_form(const ZetaExpr& e, double s, std::uint64_t X, const EvalOptions& opts = {});
double log_eval_closed_form(const ZetaExpr& e, double s, std::uint64_t X, const EvalOptions& opts = {});

// Exact value at an integer s for expressions built from ratfac atoms with
// product, sharp and integer powers. Other atoms raise UnsupportedSpecError.
Rational eval_closed_form_exact(const ZetaExpr& e, long s);

// prod_{i<n} (1 - p^{-kns+ki})^{-1}, the zeta function of M_n(F_{p^k}).
ZetaExpr matrix_algebra_zeta(unsigned n, std::uint64_t p, unsigned k);

// Exact local factor at p as a series in T = p^{-s} to degree D.
Series closed_form_local_factor(const ZetaExpr& e, std::uint64_t p, unsigned D);

struct ClosedFormPreset {
    std::string name;
    ZetaExpr expr;
    bool rational_local_factors = true;
    bool allow_fractional_powers = false;
    // Primes at which the formula is only claimed up to a finite factor.
    std::vector<std::uint64_t> excluded_primes;
    // Number of rational irreducible characters, the expected pole order at 1.
    unsigned pole_order_at_one = 0;
    std::string note;
};

// Names: C_p (param p), ZHat^r (param r), S4, S_n (param n, degrees from the
// hook length formula), ZwrC2, Dinf, ZwrC3, BS1m1, C2wrZ, C3wrZ, eta_ZwrC2.
ClosedFormPreset closed_form_preset(const std::string& name, unsigned param = 0);
std::vector<std::string> closed_form_preset_names();
// prod over the degree multiset of zeta^{#d}(s).
ClosedFormPreset symmetric_shape_preset(const std::vector<unsigned>& degrees, unsigned n);
std::vector<unsigned> symmetric_group_degrees(unsigned n);

}  // namespace repzeta

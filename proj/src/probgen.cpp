#include "repzeta/probgen.hpp"

#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/gf.hpp"
#include "repzeta/rng.hpp"
#include "repzeta/zeta.hpp"
#include "repzeta/zeta_expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

namespace repzeta {

void validate(const SemisimpleRingSpec& spec) {
    for (const auto& c : spec.components) {
        if (c.n < 1) throw ParameterError("n", "matrix size must be at least 1");
        if (c.k < 1) throw ParameterError("k", "residue degree must be at least 1");
        if (!is_prime(c.p)) throw ParameterError("p", std::to_string(c.p) + " is not prime");
    }
}

Rational exact_generation_probability(const SemisimpleRingSpec& spec, unsigned ell) {
    if (ell < 1) throw ParameterError("ell", "must be at least 1");
    validate(spec);
    Rational out = 1;
    for (const auto& c : spec.components) {
        BigInt qk = ipow(BigInt(c.p), c.k);
        BigInt top = ipow(qk, ell * c.n);
        BigInt qi = 1;
        for (unsigned i = 0; i < c.n; ++i) {
            out *= Rational(top - qi, top);
            qi *= qk;
        }
    }
    return out;
}

double log_generation_probability(const SemisimpleRingSpec& spec, unsigned ell) {
    if (ell < 1) throw ParameterError("ell", "must be at least 1");
    validate(spec);
    double out = 0;
    for (const auto& c : spec.components) {
        double lq = c.k * std::log(static_cast<double>(c.p));
        for (unsigned i = 0; i < c.n; ++i) out += std::log1p(-std::exp(lq * (i - static_cast<double>(ell) * c.n)));
    }
    return out;
}

namespace {

struct PreparedComponent {
    unsigned n;
    std::shared_ptr<const GF> field;
};

bool trial_generates(const std::vector<PreparedComponent>& comps, unsigned ell, CounterRng& rng) {
    for (const auto& c : comps) {
        const GF& F = *c.field;
        if (c.n == 1) {
            bool nonzero = false;
            for (unsigned i = 0; i < ell; ++i) nonzero |= rng.below(F.q()) != 0;
            if (!nonzero) return false;
            continue;
        }
        Matrix m = random_matrix(F, c.n, static_cast<std::size_t>(c.n) * ell, rng);
        if (rank(F, std::move(m)) != c.n) return false;
    }
    return true;
}

}  // namespace

McEstimate mc_generation_probability(const SemisimpleRingSpec& spec, unsigned ell, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads) {
    if (ell < 1) throw ParameterError("ell", "must be at least 1");
    if (trials < 1) throw ParameterError("trials", "must be at least 1");
    validate(spec);
    std::vector<PreparedComponent> comps;
    for (const auto& c : spec.components) comps.push_back({c.n, make_field(c.p, c.k)});
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
    std::vector<std::uint64_t> hits(workers, 0);
    auto run = [&](unsigned w) {
        std::uint64_t lo = trials * w / workers, hi = trials * (w + 1) / workers;
        std::uint64_t h = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
            CounterRng rng(seed, t);
            h += trial_generates(comps, ell, rng);
        }
        hits[w] = h;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    McEstimate out;
    out.trials = trials;
    out.seed = seed;
    for (auto h : hits) out.successes += h;
    out.estimate = static_cast<double>(out.successes) / static_cast<double>(trials);
    out.stderr_ = std::sqrt(out.estimate * (1 - out.estimate) / static_cast<double>(trials));
    return out;
}

SemisimpleRingSpec truncated_semisimple_quotient(const GroupSpec& spec, std::uint64_t X, CountMode mode) {
    if (X < 2) throw ParameterError("X", "must be at least 2");
    SemisimpleRingSpec out;
    for (auto p : primes_up_to(X)) {
        const double lp = std::log(static_cast<double>(p));
        const double lx = std::log(static_cast<double>(X)) + 1e-12;
        for (unsigned ed = 1; ed * lp <= lx; ++ed) {
            for (auto e : divisors(ed)) {
                unsigned d = static_cast<unsigned>(ed / e);
                BigInt m = new_at_level(spec, p, 1, static_cast<unsigned>(e), d, mode);
                if (m == 0) continue;
                if (m % e != 0) throw CapabilityError("internal consistency: Frobenius orbits do not fuse evenly");
                BigInt orbits = m / e;
                if (orbits > 1000000) throw CapabilityError("truncated quotient has too many components");
                for (BigInt i = 0; i < orbits; ++i) out.components.push_back({d, p, static_cast<unsigned>(e)});
            }
        }
    }
    return out;
}

std::optional<SemisimpleRingSpec> finite_ring_components(const GroupSpec& spec) {
    if (auto m = std::get_if<MatrixAlgebraSpec>(&spec.v)) return SemisimpleRingSpec{{{m->n, m->p, m->k}}};
    if (auto r = std::get_if<RingProductSpec>(&spec.v)) {
        SemisimpleRingSpec out;
        for (const auto& part : r->parts) {
            auto sub = finite_ring_components(part);
            if (!sub) return std::nullopt;
            out.components.insert(out.components.end(), sub->components.begin(), sub->components.end());
        }
        return out;
    }
    return std::nullopt;
}

GenerationReport verify_reciprocal_identity(const GroupSpec& spec, unsigned ell, std::uint64_t X,
                                            std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    if (ell < 1) throw ParameterError("ell", "must be at least 1");
    GenerationReport rep;
    rep.family = family_name(spec);
    rep.ell = ell;
    rep.X = X;
    SemisimpleRingSpec ring;
    if (auto finite = finite_ring_components(spec)) {
        ring = *finite;
        rep.truncated = false;
        std::vector<ZetaExpr> parts;
        for (const auto& c : ring.components) parts.push_back(matrix_algebra_zeta(c.n, c.p, c.k));
        Rational z = eval_closed_form_exact(ZetaExpr::product_of(parts), ell);
        rep.zeta_reciprocal = to_double(1 / z);
        rep.zeta_reciprocal_lo = rep.zeta_reciprocal_hi = rep.zeta_reciprocal;
    } else {
        auto a = known_abscissa(spec);
        auto uberg = default_uberg(spec);
        if (!uberg.known) throw CapabilityError(rep.family + " has no growth constant for a tail bound");
        double threshold = a.known ? a.value : uberg.c + 1;
        if (!(ell > threshold))
            throw ConvergenceError("ell = " + std::to_string(ell) + " is not above the abscissa " +
                                   std::to_string(threshold) + " of " + rep.family);
        if (!(ell > uberg.c + 1))
            throw ConvergenceError("ell = " + std::to_string(ell) + " is not above c + 1 = " +
                                   std::to_string(uberg.c + 1) + "; the tail bound is undefined");
        auto lz = log_zeta_truncated(spec, ell, X, uberg);
        rep.tail_bound = lz.tail_bound;
        rep.zeta_reciprocal = std::exp(-lz.value);
        rep.zeta_reciprocal_hi = rep.zeta_reciprocal;
        rep.zeta_reciprocal_lo = std::exp(-lz.value - lz.tail_bound);
        ring = truncated_semisimple_quotient(spec, X);
    }
    rep.components = ring.components.size();
    rep.exact_value = std::exp(log_generation_probability(ring, ell));
    if (ring.components.size() <= kExactComponentLimit) {
        rep.exact = exact_generation_probability(ring, ell);
        rep.exact_value = to_double(*rep.exact);
    }
    const double slack = 1e-12 * std::max(1.0, rep.zeta_reciprocal);
    rep.exact_within_zeta =
        rep.exact_value >= rep.zeta_reciprocal_lo - slack && rep.exact_value <= rep.zeta_reciprocal_hi + slack;
    if (trials > 0) {
        rep.mc = mc_generation_probability(ring, ell, trials, seed, threads);
        double sigma = std::max(rep.mc.stderr_, 1.0 / static_cast<double>(trials));
        rep.mc_within_4sigma = std::abs(rep.mc.estimate - rep.exact_value) <= 4 * sigma;
    } else {
        rep.mc.seed = seed;
    }
    return rep;
}

nlohmann::json to_json(const GenerationReport& r) {
    nlohmann::json j;
    j["family"] = r.family;
    j["ell"] = r.ell;
    j["X"] = r.X;
    j["truncated"] = r.truncated;
    j["components"] = r.components;
    j["exact"] = r.exact ? nlohmann::json(to_string(*r.exact)) : nlohmann::json(nullptr);
    j["exact_value"] = r.exact_value;
    j["mc"] = {{"estimate", r.mc.estimate},
               {"stderr", r.mc.stderr_},
               {"trials", r.mc.trials},
               {"successes", r.mc.successes},
               {"seed", r.mc.seed}};
    j["zeta_reciprocal"] = {{"value", r.zeta_reciprocal},
                            {"lo", r.zeta_reciprocal_lo},
                            {"hi", r.zeta_reciprocal_hi},
                            {"tail_bound", r.tail_bound}};
    j["exact_within_zeta"] = r.exact_within_zeta;
    j["mc_within_4sigma"] = r.mc_within_4sigma;
    return j;
}

std::vector<std::string> report_csv_header() {
    return {"family", "ell", "X", "components", "exact_value", "mc_estimate", "mc_stderr", "trials", "seed",
            "zeta_reciprocal", "zeta_reciprocal_lo", "zeta_reciprocal_hi", "exact_within_zeta", "mc_within_4sigma"};
}

std::vector<std::string> report_csv_row(const GenerationReport& r) {
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    return {r.family,
            std::to_string(r.ell),
            std::to_string(r.X),
            std::to_string(r.components),
            num(r.exact_value),
            num(r.mc.estimate),
            num(r.mc.stderr_),
            std::to_string(r.mc.trials),
            std::to_string(r.mc.seed),
            num(r.zeta_reciprocal),
            num(r.zeta_reciprocal_lo),
            num(r.zeta_reciprocal_hi),
            r.exact_within_zeta ? "true" : "false",
            r.mc_within_4sigma ? "true" : "false"};
}

}  // namespace repzeta

#pragma once

#include "repzeta/repcount.hpp"
#include "repzeta/spec.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace repzeta {

struct AbscissaEstimate {
    double value = 0;
    double x_lo = 0;
    double x_hi = 0;
    // Root mean square of the regression residuals.
    double residual = 0;
    std::size_t samples = 0;
};

struct AbscissaOptions {
    double lo = 0.5;
    double hi = 1.0;
    unsigned points = 40;
    CountMode mode = CountMode::exact;
    // Regress log(S(x) log x) instead of log S(x), removing the prime
    // number theorem's 1/log x factor.
    bool log_correction = true;
};

// Least-squares slope of log S(x) against log x on a geometric grid in
// [X^lo, X^hi], S(x) = sum over p^{nj} <= x of (count/j) weight.
AbscissaEstimate estimate_abscissa(const GroupSpec& spec, std::uint64_t X, const AbscissaOptions& opts = {});

// A value a(G) with the tolerance it is known to.
struct AbscissaRecord {
    std::string label;
    double value = 0;
    double tolerance = 0;
    std::string source;
};

enum class RelationKind { quotient, open_subgroup, product, split_extension, finite, index_ratio };
std::string to_string(RelationKind k);

// quotient {G, Q}: a(Q) <= a(G).
// open_subgroup {G, H}, index i: a(G) <= a(H) + 1 - 1/i and a(H) <= i a(G).
// product {G x H, G, H}: a(G x H) <= a(G) + a(H).
// split_extension {G, K, Q}: a(G) <= a(K) + a(Q) + 1.
// finite {G}: a(G) = 1.
// index_ratio {G, H}, index i: a(H) / a(G) <= i.
struct AbscissaRelation {
    RelationKind kind = RelationKind::quotient;
    std::vector<std::string> labels;
    double index = 1;
};

struct AuditCheck {
    std::string relation;
    std::string statement;
    double lhs = 0;
    double rhs = 0;
    // rhs - lhs, with tolerances added in the permissive direction.
    double slack = 0;
    bool ok = true;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    std::vector<AuditCheck> violations;
};

AuditReport abscissa_bound_audit(const std::vector<AbscissaRecord>& records,
                                 const std::vector<AbscissaRelation>& relations);

struct AuditTable {
    std::vector<AbscissaRecord> records;
    std::vector<AbscissaRelation> relations;
};

RelationKind parse_relation_kind(const std::string& text);
// {"records": [{label, value, tolerance, source}], "relations": [{kind, labels, index}]}
AuditTable audit_table_from_json(const nlohmann::json& doc);

// Trivial, C2 (estimated at X), ZHat, ZHat^2, ZHat^3, Z_3, the lamplighter
// and free pro-3 groups F_r (r = 2..5 and 20) with their index 3 subgroups.
AuditTable builtin_audit_table(std::uint64_t X = 1000000);

}  // namespace repzeta

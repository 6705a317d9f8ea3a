#include "repzeta/abscissa.hpp"

#include "repzeta/arith.hpp"

#include "repzeta/errors.hpp"
#include "repzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace repzeta {

AbscissaEstimate estimate_abscissa(const GroupSpec& spec, std::uint64_t X, const AbscissaOptions& opts) {
    if (!(opts.lo > 0 && opts.hi <= 1 && opts.lo < opts.hi)) throw ParameterError("window", "need 0 < lo < hi <= 1");
    if (X < 4) throw InsufficientDataError("abscissa estimate needs X >= 4");
    const double lx = std::log(static_cast<double>(X));
    std::vector<double> grid;
    for (unsigned i = 0; i < opts.points; ++i) {
        double t = opts.lo + (opts.hi - opts.lo) * i / (opts.points - 1.0);
        double x = std::floor(std::exp(t * lx) + 1e-9);
        if (grid.empty() || x > grid.back()) grid.push_back(x);
    }
    std::vector<double> bins(grid.size(), 0.0);
    for_each_term(
        spec, static_cast<std::uint64_t>(grid.back()),
        [&](const TermRecord& t) {
            double norm = t.j * t.n * std::log(static_cast<double>(t.p));
            double q = std::exp(norm);
            auto it = std::lower_bound(grid.begin(), grid.end(), q * (1 - 1e-12));
            if (it == grid.end()) return;
            bins[it - grid.begin()] += t.count.convert_to<double>() * t.weight.convert_to<double>() / t.j;
        },
        opts.mode);
    std::vector<double> xs, ys, used;
    double running = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        running += bins[i];
        if (running <= 0 || grid[i] < 3) continue;
        double lxi = std::log(grid[i]);
        used.push_back(grid[i]);
        xs.push_back(lxi);
        ys.push_back(std::log(running) + (opts.log_correction ? std::log(lxi) : 0.0));
    }
    if (xs.size() < 8)
        throw InsufficientDataError("only " + std::to_string(xs.size()) + " sample points in the window");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    AbscissaEstimate out;
    out.value = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (my + out.value * (xs[i] - mx));
        rss += r * r;
    }
    out.residual = std::sqrt(rss / xs.size());
    out.x_lo = used.front();
    out.x_hi = used.back();
    out.samples = xs.size();
    return out;
}

std::string to_string(RelationKind k) {
    switch (k) {
        case RelationKind::quotient: return "quotient";
        case RelationKind::open_subgroup: return "open_subgroup";
        case RelationKind::product: return "product";
        case RelationKind::split_extension: return "split_extension";
        case RelationKind::finite: return "finite";
        case RelationKind::index_ratio: return "index_ratio";
    }
    return "?";
}

AuditReport abscissa_bound_audit(const std::vector<AbscissaRecord>& records,
                                 const std::vector<AbscissaRelation>& relations) {
    std::map<std::string, AbscissaRecord> by_label;
    for (const auto& r : records) by_label[r.label] = r;
    auto get = [&](const std::string& label) -> const AbscissaRecord& {
        auto it = by_label.find(label);
        if (it == by_label.end()) throw UsageError("audit relation names unknown record '" + label + "'");
        return it->second;
    };
    AuditReport rep;
    auto add = [&](const AbscissaRelation& rel, std::string statement, double lhs, double rhs, double tol) {
        AuditCheck c;
        c.relation = to_string(rel.kind);
        c.statement = std::move(statement);
        c.lhs = lhs;
        c.rhs = rhs;
        c.slack = rhs - lhs + tol;
        c.ok = c.slack >= 0;
        rep.checks.push_back(c);
        if (!c.ok) rep.violations.push_back(c);
    };
    auto need = [](const AbscissaRelation& rel, std::size_t n) {
        if (rel.labels.size() != n)
            throw UsageError(to_string(rel.kind) + " relation needs " + std::to_string(n) + " labels");
    };
    for (const auto& rel : relations) {
        switch (rel.kind) {
            case RelationKind::quotient: {
                need(rel, 2);
                const auto& g = get(rel.labels[0]);
                const auto& q = get(rel.labels[1]);
                add(rel, "a(" + q.label + ") <= a(" + g.label + ")", q.value, g.value, q.tolerance + g.tolerance);
                break;
            }
            case RelationKind::open_subgroup: {
                need(rel, 2);
                const auto& g = get(rel.labels[0]);
                const auto& h = get(rel.labels[1]);
                double i = rel.index;
                add(rel, "a(" + g.label + ") <= a(" + h.label + ") + 1 - 1/i", g.value, h.value + 1 - 1 / i,
                    g.tolerance + h.tolerance);
                add(rel, "a(" + h.label + ") <= i a(" + g.label + ")", h.value, i * g.value,
                    h.tolerance + i * g.tolerance);
                break;
            }
            case RelationKind::product: {
                need(rel, 3);
                const auto& gh = get(rel.labels[0]);
                const auto& g = get(rel.labels[1]);
                const auto& h = get(rel.labels[2]);
                add(rel, "a(" + gh.label + ") <= a(" + g.label + ") + a(" + h.label + ")", gh.value, g.value + h.value,
                    gh.tolerance + g.tolerance + h.tolerance);
                break;
            }
            case RelationKind::split_extension: {
                need(rel, 3);
                const auto& g = get(rel.labels[0]);
                const auto& k = get(rel.labels[1]);
                const auto& q = get(rel.labels[2]);
                add(rel, "a(" + g.label + ") <= a(" + k.label + ") + a(" + q.label + ") + 1", g.value,
                    k.value + q.value + 1, g.tolerance + k.tolerance + q.tolerance);
                break;
            }
            case RelationKind::finite: {
                need(rel, 1);
                const auto& g = get(rel.labels[0]);
                add(rel, "a(" + g.label + ") <= 1", g.value, 1.0, g.tolerance);
                add(rel, "a(" + g.label + ") >= 1", 1.0, g.value, g.tolerance);
                break;
            }
            case RelationKind::index_ratio: {
                need(rel, 2);
                const auto& g = get(rel.labels[0]);
                const auto& h = get(rel.labels[1]);
                double ratio = h.value / g.value;
                double tol = (h.tolerance + ratio * g.tolerance) / g.value;
                add(rel, "a(" + h.label + ") / a(" + g.label + ") <= i", ratio, rel.index, tol);
                break;
            }
        }
    }
    return rep;
}

RelationKind parse_relation_kind(const std::string& text) {
    for (auto k : {RelationKind::quotient, RelationKind::open_subgroup, RelationKind::product,
                   RelationKind::split_extension, RelationKind::finite, RelationKind::index_ratio})
        if (to_string(k) == text) return k;
    throw ParseError("unknown relation kind '" + text + "'");
}

AuditTable audit_table_from_json(const nlohmann::json& doc) {
    AuditTable t;
    try {
        for (const auto& r : doc.at("records"))
            t.records.push_back({r.at("label").get<std::string>(), r.at("value").get<double>(),
                                 r.value("tolerance", 0.0), r.value("source", std::string())});
        for (const auto& r : doc.at("relations"))
            t.relations.push_back({parse_relation_kind(r.at("kind").get<std::string>()),
                                   r.at("labels").get<std::vector<std::string>>(), r.value("index", 1.0)});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("audit table: ") + e.what());
    }
    return t;
}

AuditTable builtin_audit_table(std::uint64_t X) {
    AuditTable t;
    auto est = estimate_abscissa(CyclicSpec{2}, X);
    const double kp = named_constant("K_prime_profile", {{"p", 3}}).value;
    t.records = {{"Trivial", 1, 0, "closed form"},
                 {"C2", est.value, 0.05, "estimate"},
                 {"ZHat", 2, 0, "closed form"},
                 {"ZHat2", 3, 0, "closed form"},
                 {"ZHat3", 4, 0, "closed form"},
                 {"Z3", 1, 0, "closed form"},
                 {"Lamplighter2", 2, 0, "closed form"}};
    using K = RelationKind;
    t.relations = {{K::finite, {"Trivial"}, 1},
                   {K::finite, {"C2"}, 1},
                   {K::quotient, {"ZHat", "Trivial"}, 1},
                   {K::quotient, {"ZHat", "C2"}, 1},
                   {K::quotient, {"ZHat", "Z3"}, 1},
                   {K::quotient, {"ZHat2", "ZHat"}, 1},
                   {K::quotient, {"ZHat3", "ZHat2"}, 1},
                   {K::quotient, {"Lamplighter2", "ZHat"}, 1},
                   {K::quotient, {"Lamplighter2", "C2"}, 1},
                   {K::open_subgroup, {"ZHat", "ZHat"}, 2},
                   {K::open_subgroup, {"C2", "Trivial"}, 2},
                   {K::product, {"ZHat2", "ZHat", "ZHat"}, 1},
                   {K::product, {"ZHat3", "ZHat2", "ZHat"}, 1},
                   {K::split_extension, {"ZHat2", "ZHat", "ZHat"}, 1},
                   {K::split_extension, {"ZHat3", "ZHat2", "ZHat"}, 1}};
    std::string prev;
    for (unsigned r : {2u, 3u, 4u, 5u, 20u}) {
        std::string g = "F" + std::to_string(r) + "_3";
        std::string h = "F" + std::to_string(3 * (r - 1) + 1) + "_3";
        t.records.push_back({g, (r - 1) / kp + 1, 0, "closed form"});
        t.records.push_back({h, 3 * (r - 1) / kp + 1, 0, "closed form"});
        t.relations.push_back({K::quotient, {g, "Z3"}, 1});
        t.relations.push_back({K::open_subgroup, {g, h}, 3});
        t.relations.push_back({K::index_ratio, {g, h}, 3});
        if (!prev.empty()) t.relations.push_back({K::quotient, {g, prev}, 1});
        prev = g;
    }
    return t;
}

}  // namespace repzeta

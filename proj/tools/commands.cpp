#include "commands.hpp"

#include "repzeta/abscissa.hpp"
#include "repzeta/arith.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/probgen.hpp"
#include "repzeta/repcount.hpp"
#include "repzeta/table.hpp"
#include "repzeta/wedderburn.hpp"
#include "repzeta/zeta.hpp"
#include "repzeta/zeta_expr.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace repzeta::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Result {
    std::optional<Table> table;
    std::optional<ojson> object;
};

struct LoadedSpec {
    std::string label;
    GroupSpec spec;
};

std::string module_name = "cli";

ojson big(const BigInt& x) {
    if (x >= 0 && fits_u64(x)) return x.convert_to<std::uint64_t>();
    if (x < 0 && -x < BigInt(1) << 62) return x.convert_to<long long>();
    return to_string(x);
}

ojson rationals(const std::vector<Rational>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) {
        if (denominator(x) == 1 && abs(numerator(x)) < BigInt(1) << 62)
            a.push_back(numerator(x).convert_to<long long>());
        else
            a.push_back(to_string(x));
    }
    return a;
}

ojson bigs(const std::vector<BigInt>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(big(x));
    return a;
}

LoadedSpec load_spec(const std::string& arg) {
    std::string saved = module_name;
    module_name = "spec";
    LoadedSpec out;
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw UsageError("empty --spec");
    if (arg[first] != '{') {
        std::ifstream in(arg);
        if (!in) throw UsageError("cannot read spec file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        out.label = std::filesystem::path(arg).stem().string();
    }
    out.spec = parse_spec(text);
    if (out.label.empty()) out.label = family_name(out.spec);
    module_name = saved;
    return out;
}

const std::string& single_spec(const CommandConfig& cfg) {
    if (cfg.specs.size() != 1) throw UsageError(cfg.command + " needs exactly one --spec");
    return cfg.specs[0];
}

void need_prime(std::uint64_t p) {
    if (p == 0) throw UsageError("--p is required");
    if (!is_prime(p)) throw ParameterError("p", std::to_string(p) + " is not prime");
}

Result cmd_count(const CommandConfig& cfg) {
    auto ls = load_spec(single_spec(cfg));
    module_name = "repcount";
    CountMode mode = parse_count_mode(cfg.mode);
    if (cfg.stream) {
        module_name = "zeta";
        Table t;
        t.columns = {"p", "j", "n", "count", "weight", "exactness"};
        for (const auto& r : term_stream(ls.spec, cfg.X, mode))
            t.add_row({r.p, r.j, r.n, big(r.count), big(r.weight), to_string(r.exactness)});
        return {t, std::nullopt};
    }
    need_prime(cfg.p);
    CountQuery q{cfg.p, cfg.j, cfg.n};
    auto r = cfg.irr ? count_irr(ls.spec, q, mode) : count_abs_irr(ls.spec, q, mode);
    ojson o;
    o["family"] = family_name(ls.spec);
    o["kind"] = cfg.irr ? "irreducible" : "absolutely_irreducible";
    o["p"] = cfg.p;
    o["j"] = cfg.j;
    o["n"] = cfg.n;
    o["count"] = big(r.value);
    o["exactness"] = to_string(r.exactness);
    return {std::nullopt, o};
}

Result cmd_zeta(const CommandConfig& cfg) {
    auto ls = load_spec(single_spec(cfg));
    module_name = "zeta";
    if (!cfg.s) throw UsageError("--s is required");
    UbergConstant u = default_uberg(ls.spec);
    if (cfg.c) {
        u.c = *cfg.c;
        u.known = true;
    }
    if (!u.known) throw CapabilityError(family_name(ls.spec) + " has no documented growth constant; pass --c");
    LogZetaOptions opts;
    opts.mode = parse_count_mode(cfg.mode);
    opts.monitor = cfg.monitor;
    auto r = log_zeta_truncated(ls.spec, *cfg.s, cfg.X, u, opts);
    ojson o;
    o["family"] = family_name(ls.spec);
    o["s"] = *cfg.s;
    o["X"] = cfg.X;
    o["c"] = u.c;
    o["K"] = u.K;
    o["value"] = r.value;
    o["tail_bound"] = std::isfinite(r.tail_bound) ? ojson(r.tail_bound) : ojson(nullptr);
    o["diverging"] = r.diverging;
    o["terms"] = r.terms;
    return {std::nullopt, o};
}

ZetaExpr expr_from(const CommandConfig& cfg, bool& fractional) {
    module_name = "zeta";
    if (!cfg.preset.empty()) {
        auto preset = closed_form_preset(cfg.preset, cfg.param);
        fractional = preset.allow_fractional_powers;
        return preset.expr;
    }
    fractional = true;
    return parse_sexpr(cfg.expr, true);
}

Result cmd_local_factor(const CommandConfig& cfg) {
    need_prime(cfg.p);
    Table t;
    if (!cfg.preset.empty() || !cfg.expr.empty()) {
        bool fractional = false;
        auto e = expr_from(cfg, fractional);
        auto z = closed_form_local_factor(e, cfg.p, cfg.D);
        auto u = log_coeffs_from_series(z);
        t.columns = {"m", "z_m", "u_m"};
        for (unsigned m = 0; m <= cfg.D; ++m)
            t.add_row({m, to_string(z[m]), m ? ojson(to_string(u[m - 1])) : ojson(nullptr)});
        return {t, std::nullopt};
    }
    auto ls = load_spec(single_spec(cfg));
    module_name = "zeta";
    CountMode mode = parse_count_mode(cfg.mode);
    auto u = cfg.irr ? local_log_coeffs_irr(ls.spec, cfg.p, cfg.D, mode) : local_log_coeffs(ls.spec, cfg.p, cfg.D, mode);
    auto z = series_from_log_coeffs(to_rationals(u), cfg.D);
    t.columns = {"m", "u_m", "z_m"};
    for (unsigned m = 0; m <= cfg.D; ++m) t.add_row({m, m ? big(u[m - 1]) : ojson(nullptr), to_string(z[m])});
    return {t, std::nullopt};
}

std::vector<Rational> parse_sequence(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw UsageError("empty entry in --u");
        out.push_back(parse_rational(item.substr(a, b - a + 1)));
    }
    return out;
}

Result cmd_rationality(const CommandConfig& cfg) {
    std::vector<Rational> u;
    ojson o;
    if (!cfg.sequence.empty()) {
        module_name = "zeta";
        u = parse_sequence(cfg.sequence);
    } else {
        auto ls = load_spec(single_spec(cfg));
        need_prime(cfg.p);
        module_name = "zeta";
        u = to_rationals(local_log_coeffs(ls.spec, cfg.p, cfg.D, parse_count_mode(cfg.mode)));
        o["family"] = family_name(ls.spec);
        o["p"] = cfg.p;
    }
    if (u.empty()) throw UsageError("rationality needs a non-empty sequence");
    auto r = detect_rational_local_factor(u, cfg.max_order);
    o["D"] = u.size();
    o["status"] = to_string(r.status);
    o["order"] = r.order;
    if (r.status == DetectionStatus::found) {
        o["alphas"] = bigs(r.factor.alphas);
        o["betas"] = bigs(r.factor.betas);
    }
    if (r.rational()) {
        o["numerator"] = rationals(r.numerator);
        o["denominator"] = rationals(r.denominator);
    }
    o["hankel_ranks"] = r.hankel_ranks;
    o["diagnosis"] = r.diagnosis;
    return {std::nullopt, o};
}

Result cmd_abscissa(const CommandConfig& cfg) {
    if (cfg.specs.empty()) throw UsageError("abscissa needs at least one --spec");
    std::vector<std::pair<std::string, GroupSpec>> specs;
    for (const auto& s : cfg.specs) {
        auto ls = load_spec(s);
        specs.emplace_back(ls.label, ls.spec);
    }
    module_name = "zeta";
    AbscissaOptions opts;
    opts.lo = cfg.lo;
    opts.hi = cfg.hi;
    opts.mode = parse_count_mode(cfg.mode);
    return {abscissa_sweep_table(specs, cfg.X, opts), std::nullopt};
}

Result cmd_constants(const CommandConfig& cfg) {
    module_name = "arith";
    if (cfg.list) {
        Table t;
        t.columns = {"id"};
        for (const auto& id : named_constant_ids()) t.add_row({id});
        return {t, std::nullopt};
    }
    if (cfg.id.empty()) throw UsageError("constants needs --id or --list");
    nlohmann::json params = nlohmann::json::object();
    if (!cfg.params.empty()) {
        try {
            params = nlohmann::json::parse(cfg.params);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("--params: ") + e.what());
        }
    }
    auto v = named_constant(cfg.id, params);
    if (!v.profile.empty() && cfg.format == "csv") {
        Table t;
        t.columns = {"k", "pp_min", "f_p", "running_inf"};
        for (const auto& row : v.profile) t.add_row({row.k, big(row.pp_min), row.value, row.running_inf});
        return {t, std::nullopt};
    }
    ojson o;
    o["id"] = v.id;
    o["value"] = v.value;
    o["exact"] = v.exact ? ojson(to_string(*v.exact)) : ojson(nullptr);
    if (!v.extras.empty()) {
        ojson ex = ojson::object();
        for (const auto& [k, x] : v.extras) ex[k] = x;
        o["extras"] = ex;
    }
    if (!v.profile.empty()) {
        ojson prof = ojson::array();
        for (const auto& row : v.profile)
            prof.push_back({{"k", row.k}, {"pp_min", big(row.pp_min)}, {"f_p", row.value}, {"running_inf", row.running_inf}});
        o["profile"] = prof;
    }
    return {std::nullopt, o};
}

SemisimpleRingSpec parse_ring(const std::string& text) {
    SemisimpleRingSpec spec;
    std::stringstream ss(text);
    std::string comp;
    while (std::getline(ss, comp, ';')) {
        std::stringstream cs(comp);
        std::string a, b, c;
        if (!std::getline(cs, a, ',') || !std::getline(cs, b, ',') || !std::getline(cs, c, ','))
            throw UsageError("--ring components are n,p,k separated by ';'");
        try {
            spec.components.push_back({static_cast<unsigned>(std::stoul(a)), std::stoull(b),
                                       static_cast<unsigned>(std::stoul(c))});
        } catch (const std::exception&) {
            throw UsageError("--ring component '" + comp + "' is not three integers");
        }
    }
    if (spec.components.empty()) throw UsageError("--ring is empty");
    return spec;
}

Result cmd_verify_prob(const CommandConfig& cfg) {
    if (!cfg.ring.empty()) {
        module_name = "probgen";
        auto ring = parse_ring(cfg.ring);
        auto exact = exact_generation_probability(ring, cfg.ell);
        ojson o;
        o["ring"] = cfg.ring;
        o["ell"] = cfg.ell;
        o["exact"] = to_string(exact);
        o["exact_value"] = to_double(exact);
        if (cfg.trials > 0) {
            auto m = mc_generation_probability(ring, cfg.ell, cfg.trials, cfg.seed, cfg.threads);
            o["mc"] = {{"estimate", m.estimate},
                       {"stderr", m.stderr_},
                       {"trials", m.trials},
                       {"successes", m.successes},
                       {"seed", m.seed}};
            o["mc_within_4sigma"] = std::abs(m.estimate - to_double(exact)) <= 4 * m.stderr_;
        }
        return {std::nullopt, o};
    }
    auto ls = load_spec(single_spec(cfg));
    module_name = "probgen";
    auto rep = verify_reciprocal_identity(ls.spec, cfg.ell, cfg.X, cfg.trials, cfg.seed, cfg.threads);
    Table t;
    t.columns = report_csv_header();
    std::vector<ojson> row;
    for (auto& cell : report_csv_row(rep)) row.push_back(cell);
    t.add_row(row);
    ojson o = ojson::parse(to_json(rep).dump());
    return {t, o};
}

Result cmd_audit(const CommandConfig& cfg) {
    module_name = "zeta";
    AuditTable table;
    if (!cfg.table.empty()) {
        std::ifstream in(cfg.table);
        if (!in) throw UsageError("cannot read audit table '" + cfg.table + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("audit table: ") + e.what());
        }
        table = audit_table_from_json(doc);
    } else {
        table = builtin_audit_table(cfg.X);
    }
    auto rep = abscissa_bound_audit(table.records, table.relations);
    Table t;
    t.columns = {"relation", "statement", "lhs", "rhs", "slack", "ok"};
    for (const auto& c : rep.checks) t.add_row({c.relation, c.statement, c.lhs, c.rhs, c.slack, c.ok});
    ojson checks = ojson::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"relation", c.relation},
                          {"statement", c.statement},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"slack", c.slack},
                          {"ok", c.ok}});
    ojson o;
    o["checks"] = checks;
    o["violations"] = rep.violations.size();
    return {t, o};
}

Result cmd_decompose(const CommandConfig& cfg) {
    auto ls = load_spec(single_spec(cfg));
    module_name = "wedderburn";
    auto fg = std::get_if<FiniteGroupSpec>(&ls.spec.v);
    if (!fg) throw UsageError("decompose needs a FiniteGroup spec");
    need_prime(cfg.p);
    PermGroup G(*fg);
    auto d = decompose_group_algebra(G, cfg.p, cfg.j);
    Table t;
    t.columns = {"n", "k"};
    ojson comps = ojson::array();
    for (const auto& c : d.components) {
        t.add_row({c.n, c.k});
        comps.push_back({{"n", c.n}, {"k", c.k}});
    }
    ojson o;
    o["group"] = fg->name.empty() ? std::string("FiniteGroup") : fg->name;
    o["order"] = G.order();
    o["p"] = d.p;
    o["j"] = d.j;
    o["components"] = comps;
    return {t, o};
}

Table flatten(const ojson& o) {
    Table t;
    std::vector<ojson> row;
    for (auto it = o.begin(); it != o.end(); ++it) {
        t.columns.push_back(it.key());
        row.push_back(it->is_structured() ? ojson(it->dump()) : *it);
    }
    t.add_row(row);
    return t;
}

std::string render(const Result& r, TableFormat f) {
    if (f == TableFormat::json) return r.object ? r.object->dump(2) + "\n" : emit_table(*r.table, f);
    return r.table ? emit_table(*r.table, f) : emit_table(flatten(*r.object), f);
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const ShapeError*>(&e)) return "shape";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const UsageError*>(&e)) return "usage";
    if (dynamic_cast<const ParameterError*>(&e)) return "parameter";
    if (dynamic_cast<const NotAUnitError*>(&e)) return "not_a_unit";
    if (dynamic_cast<const SearchCeilingExceeded*>(&e)) return "search_ceiling";
    if (dynamic_cast<const SameCharacteristicError*>(&e)) return "same_characteristic";
    if (dynamic_cast<const ModularCaseError*>(&e)) return "modular_case";
    if (dynamic_cast<const PoleError*>(&e)) return "pole";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient_data";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const UnsupportedSpecError*>(&e)) return "unsupported_spec";
    if (dynamic_cast<const CapabilityError*>(&e)) return "capability";
    return "internal";
}

}  // namespace

std::uint64_t default_seed() {
    if (const char* env = std::getenv("REPZETA_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("REPZETA_SEED is not an integer: ") + env);
        }
    }
    return kDefaultSeed;
}

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    module_name = "cli";
    try {
        TableFormat f = parse_table_format(cfg.format);
        Result r;
        if (cfg.command == "count")
            r = cmd_count(cfg);
        else if (cfg.command == "zeta")
            r = cmd_zeta(cfg);
        else if (cfg.command == "local-factor")
            r = cmd_local_factor(cfg);
        else if (cfg.command == "rationality")
            r = cmd_rationality(cfg);
        else if (cfg.command == "abscissa")
            r = cmd_abscissa(cfg);
        else if (cfg.command == "constants")
            r = cmd_constants(cfg);
        else if (cfg.command == "verify-prob")
            r = cmd_verify_prob(cfg);
        else if (cfg.command == "audit")
            r = cmd_audit(cfg);
        else if (cfg.command == "decompose")
            r = cmd_decompose(cfg);
        else
            throw UsageError("unknown command '" + cfg.command + "'");
        module_name = "cli";
        std::string text = render(r, f);
        if (cfg.output.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg.output, std::ios::binary);
            if (!file) throw UsageError("cannot write '" + cfg.output + "'");
            file << text;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "repzeta: " << module_name << " error [" << error_code(e) << "]: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "repzeta: " << module_name << " error [" << error_code(e) << "]: " << e.what() << "\n";
        return 2;
    } catch (const CapabilityError& e) {
        err << "repzeta: " << module_name << " error [" << error_code(e) << "]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "repzeta: " << module_name << " error [internal]: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace repzeta::cli

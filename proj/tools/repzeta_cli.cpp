#include "commands.hpp"

#include "repzeta/errors.hpp"

#include "CLI11.hpp"

#include <iostream>

using repzeta::cli::CommandConfig;

namespace {

void add_output(CLI::App* sub, CommandConfig& cfg) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", cfg.output, "write to a file instead of stdout");
}

void add_spec(CLI::App* sub, CommandConfig& cfg, bool required = false) {
    auto* o = sub->add_option("--spec", cfg.specs, "group spec: a JSON file or an inline JSON object");
    if (required) o->required();
}

void add_mode(CLI::App* sub, CommandConfig& cfg) {
    sub->add_option("--mode", cfg.mode, "exact, upper_bound or characteristic_only");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representation zeta functions of profinite groups and rings"};
    app.require_subcommand(1);
    CommandConfig cfg;
    try {
        cfg.seed = repzeta::cli::default_seed();
    } catch (const repzeta::UsageError& e) {
        std::cerr << "repzeta: cli error [usage]: " << e.what() << "\n";
        return 1;
    }

    auto* count = app.add_subcommand("count", "count absolutely irreducible representations");
    add_spec(count, cfg, true);
    count->add_option("--p", cfg.p, "characteristic");
    count->add_option("--j", cfg.j, "field degree");
    count->add_option("--n", cfg.n, "dimension");
    count->add_flag("--irr", cfg.irr, "count irreducible rather than absolutely irreducible");
    count->add_flag("--stream", cfg.stream, "emit the term stream up to --X");
    count->add_option("--X", cfg.X, "term stream bound");
    add_mode(count, cfg);
    add_output(count, cfg);

    auto* zeta = app.add_subcommand("zeta", "truncated log zeta with a tail bound");
    add_spec(zeta, cfg, true);
    zeta->add_option("--s", cfg.s, "real argument")->required();
    zeta->add_option("--X", cfg.X, "truncation bound");
    zeta->add_option("--c", cfg.c, "growth constant c with count <= K q^(cn)");
    zeta->add_flag("--monitor", cfg.monitor, "return partial sums with a divergence flag below c + 1");
    add_mode(zeta, cfg);
    add_output(zeta, cfg);

    auto* local = app.add_subcommand("local-factor", "local log coefficients and Euler factor series");
    add_spec(local, cfg);
    local->add_option("--p", cfg.p, "prime")->required();
    local->add_option("--D", cfg.D, "degree");
    local->add_flag("--irr", cfg.irr, "use irreducible counts (eta)");
    local->add_option("--preset", cfg.preset, "closed-form preset name");
    local->add_option("--param", cfg.param, "preset parameter");
    local->add_option("--expr", cfg.expr, "closed-form s-expression");
    add_mode(local, cfg);
    add_output(local, cfg);

    auto* rat = app.add_subcommand("rationality", "detect a rational local factor");
    add_spec(rat, cfg);
    rat->add_option("--p", cfg.p, "prime");
    rat->add_option("--D", cfg.D, "number of coefficients");
    rat->add_option("--u", cfg.sequence, "comma-separated log coefficients instead of a spec");
    rat->add_option("--max-order", cfg.max_order, "largest accepted recurrence order");
    add_mode(rat, cfg);
    add_output(rat, cfg);

    auto* absc = app.add_subcommand("abscissa", "estimate abscissae of convergence");
    add_spec(absc, cfg, true);
    absc->add_option("--X", cfg.X, "largest norm");
    absc->add_option("--lo", cfg.lo, "window start as a power of X");
    absc->add_option("--hi", cfg.hi, "window end as a power of X");
    add_mode(absc, cfg);
    add_output(absc, cfg);

    auto* cons = app.add_subcommand("constants", "named constants");
    cons->add_option("--id", cfg.id, "constant id");
    cons->add_option("--params", cfg.params, "parameters as a JSON object");
    cons->add_flag("--list", cfg.list, "list the ids");
    add_output(cons, cfg);

    auto* prob = app.add_subcommand("verify-prob", "generation probabilities and the reciprocal identity");
    add_spec(prob, cfg);
    prob->add_option("--ring", cfg.ring, "semisimple ring as n,p,k;n,p,k;...");
    prob->add_option("--ell", cfg.ell, "number of random elements");
    prob->add_option("--X", cfg.X, "truncation bound");
    prob->add_option("--trials", cfg.trials, "Monte Carlo trials");
    prob->add_option("--seed", cfg.seed, "seed (default 1729 or REPZETA_SEED)");
    prob->add_option("--threads", cfg.threads, "worker cap, 0 for all cores");
    add_output(prob, cfg);

    auto* audit = app.add_subcommand("audit", "check abscissa inequalities");
    audit->add_option("--table", cfg.table, "JSON table of records and relations (default: built-in)");
    audit->add_option("--X", cfg.X, "bound for the estimated records of the built-in table");
    add_output(audit, cfg);

    auto* dec = app.add_subcommand("decompose", "Wedderburn components of F_q[G]");
    add_spec(dec, cfg, true);
    dec->add_option("--p", cfg.p, "characteristic")->required();
    dec->add_option("--j", cfg.j, "field degree");
    add_output(dec, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "repzeta: cli error [usage]: " << e.what() << "\n";
        return 1;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return repzeta::cli::run(cfg, std::cout, std::cerr);
}

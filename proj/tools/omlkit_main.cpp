// omlkit: computations on finite orthomodular lattices given as Greechie
// diagrams -- equation checking, n-Go scanning, strong-state verdicts, and
// Mayet-Godowski equation generation.

#include <iostream>

#include <CLI11.hpp>

#include "omlkit/batch.hpp"

int main(int argc, char** argv) {
    CLI::App app{"omlkit: orthomodular lattice toolkit over Greechie diagrams"};
    app.require_subcommand(1);

    omlkit::RunConfig cfg;
    unsigned seed_order = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input_path, "diagram file (one diagram per line, '#' comments)")
            ->required();
        sub->add_flag("--json", cfg.json_output, "JSON-lines output");
        return sub;
    };

    auto* parse = add_common(app.add_subcommand("parse", "validate diagram lines"));
    auto* check = add_common(
        app.add_subcommand("check", "check an equation on each lattice by exhaustive search"));
    check->add_option("--eq", cfg.eq_text, "equation text, e.g. \"a ^ (a' v b) =< b\"");
    check->add_option("--eq-file", cfg.eq_file, "file with the equation text");
    check->add_option("--var-cap", cfg.var_cap, "max variables for the search (default 10)");
    check->add_flag("--no-verify", cfg.no_verify, "skip the lattice law check");
    auto* ngo = add_common(
        app.add_subcommand("ngo", "first n at which n-Go fails, or convergence certificate"));
    ngo->add_option("--cutoff", cfg.cutoff, "largest n to test (default 100)");
    ngo->add_flag("--no-verify", cfg.no_verify, "skip the lattice law check");
    auto* states = add_common(
        app.add_subcommand("states", "decide whether each lattice admits a strong set of states"));
    states->add_flag("--all-pairs", cfg.all_pairs, "report every refuting pair, not just the first");
    states->add_flag("--no-verify", cfg.no_verify, "skip the lattice law check");
    auto* lpdump = add_common(
        app.add_subcommand("lp-dump", "emit the state LP for one pair in lp_solve notation"));
    lpdump->add_option("--pair", cfg.pair, "element pair, e.g. a1,a7'")->required();
    lpdump->add_flag("--no-verify", cfg.no_verify, "skip the lattice law check");
    auto* mge = add_common(app.add_subcommand(
        "mge", "generate a Mayet-Godowski equation from each lattice refuting strong states"));
    auto* seed_opt =
        mge->add_option("--seed-order", seed_order, "permute the block relaxation order");
    mge->add_flag("--no-verify", cfg.no_verify, "skip the lattice law check");

    CLI11_PARSE(app, argc, argv);

    if (parse->parsed()) cfg.cmd = omlkit::RunConfig::Cmd::Parse;
    if (check->parsed()) cfg.cmd = omlkit::RunConfig::Cmd::Check;
    if (ngo->parsed()) cfg.cmd = omlkit::RunConfig::Cmd::Ngo;
    if (states->parsed()) cfg.cmd = omlkit::RunConfig::Cmd::States;
    if (lpdump->parsed()) cfg.cmd = omlkit::RunConfig::Cmd::LpDump;
    if (mge->parsed()) {
        cfg.cmd = omlkit::RunConfig::Cmd::Mge;
        if (seed_opt->count()) cfg.seed_order = seed_order;
    }

    try {
        return omlkit::run(cfg, std::cout, std::cerr);
    } catch (const std::logic_error& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

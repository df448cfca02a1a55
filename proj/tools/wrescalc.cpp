// wrescalc: boundary and interior residue tables, fixture verification, numeric oracle.
#include <iostream>

#include <CLI11.hpp>

#include "wres/cli.hpp"

namespace {

void add_common(CLI::App *cmd, wres::RunConfig &cfg, bool with_seeds) {
    cmd->add_option("--dim", cfg.dimension, "dimension (4 or 6)");
    cmd->add_option("--target", cfg.target, "boundary | interior | both");
    cmd->add_option("--cases", cfg.cases, "a1,a2,a3,b,c or all")->delimiter(',');
    cmd->add_option("--format", cfg.format, "json | markdown");
    cmd->add_option("--precision", cfg.precision, "decimal digits for the oracle (16 = doubles)");
    cmd->add_option("--fixtures", cfg.fixture_dir, "fixture directory");
    if (with_seeds) cmd->add_option("--seeds", cfg.seeds, "comma-separated seeds")->delimiter(',');
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Residue tables for the deformed de Rham operator"};
    app.require_subcommand(1);
    wres::RunConfig cfg;
    cfg.precision = wres::default_precision();
    auto *compute = app.add_subcommand("compute", "compute boundary and interior tables");
    auto *verify = app.add_subcommand("verify", "compare against stored tables");
    auto *oracle = app.add_subcommand("oracle", "numeric oracle records");
    add_common(compute, cfg, false);
    add_common(verify, cfg, true);
    add_common(oracle, cfg, true);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : wres::kUsage;
    }
    if (compute->parsed()) return wres::cmd_compute(cfg, std::cout, std::cerr);
    if (verify->parsed()) return wres::cmd_verify(cfg, std::cout, std::cerr);
    return wres::cmd_oracle(cfg, std::cout, std::cerr);
}

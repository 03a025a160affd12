#include <iostream>

#include <CLI11.hpp>

#include "megsched/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-timescale scheduler for a multi-energy industrial park"};
    app.require_subcommand(1);

    megsched::CliOptions opts;
    std::string config, out, mode;
    std::uint64_t seed = 0;
    bool cold = false, warm = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config, "JSON config (default: built-in benchmark)");
        sub->add_option("-s,--seed", seed, "Synthetic trace seed");
        sub->add_option("-o,--out", out, "Output directory");
        sub->add_option("-m,--mode", mode, "Inner loop mode")->check(CLI::IsMember({"plain", "fast"}));
        auto* c = sub->add_flag("--cold-start", cold, "Start every slot from zero multipliers");
        sub->add_flag("--warm-start", warm, "Start every slot from the previous slot's multipliers")->excludes(c);
    };
    auto* run = app.add_subcommand("run", "Run one case and write telemetry");
    auto* compare = app.add_subcommand("compare", "Run all cases and both inner modes on the same traces");
    auto* validate = app.add_subcommand("validate", "Check config and traces without simulating");
    for (auto* sub : {run, compare, validate}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (!config.empty()) opts.config = config;
    if (!out.empty()) opts.out = out;
    if (app.get_subcommands().front()->count("--seed")) opts.seed = seed;
    if (mode == "plain") opts.mode = megsched::InnerMode::Plain;
    if (mode == "fast") opts.mode = megsched::InnerMode::Fast;
    if (cold) opts.warm_start = false;
    if (warm) opts.warm_start = true;

    if (run->parsed()) return megsched::cmd_run(opts, std::cout, std::cerr);
    if (compare->parsed()) return megsched::cmd_compare(opts, std::cout, std::cerr);
    return megsched::cmd_validate(opts, std::cout, std::cerr);
}

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "d2dsim/config.hpp"
#include "d2dsim/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Link-level Monte Carlo simulator for relay-assisted D2D links"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    unsigned workers_override = 1;

    const std::pair<const char*, const char*> commands[] = {
        {"sweep", "estimate outage curves over the SNR grid and write CSV"},
        {"select", "pick the best relay per pair from the topology"},
        {"match", "assign relays to pairs one-to-one by max total utility"},
        {"validate", "run the built-in invariant checks"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "config file (defaults apply without one)");
        sub->add_option("--seed", seed_override, "master seed override");
        sub->add_option("--workers", workers_override, "worker thread count")
            ->check(CLI::Range(1u, 4096u));
        sub->add_option("--out", out_override, "output CSV path override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();

    d2dsim::RunConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = d2dsim::parse_config_file(config_path);
        } catch (const d2dsim::ConfigError& ex) {
            std::cerr << "config error: " << ex.what() << "\n";
            return 1;
        }
    }

    // Flags beat config values, which beat the built-in defaults.
    cfg.command = sub->get_name();
    if (sub->count("--seed") > 0) cfg.scenario.master_seed = seed_override;
    if (sub->count("--workers") > 0) cfg.workers = workers_override;
    if (sub->count("--out") > 0) cfg.output_path = out_override;

    return d2dsim::run(cfg, std::cout, std::cerr);
}

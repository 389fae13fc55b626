#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "icebox/errors.hpp"
#include "icebox/experiment.hpp"

using icebox::Bc;
using icebox::ChainKind;
using icebox::ExperimentConfig;

namespace {

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& bc, std::string& chain,
                      std::string& config_path) {
    cmd->add_option("--config", config_path, "json config file; flags given here override it");
    cmd->add_option("--n", cfg.n, "lattice size");
    cmd->add_option("--bc", bc, "boundary condition: free | periodic")
        ->check(CLI::IsMember({"free", "periodic"}));
    cmd->add_option("--a", cfg.a, "weight of the two horizontal-flow types");
    cmd->add_option("--b", cfg.b, "weight of the two vertical-flow types");
    cmd->add_option("--c", cfg.c, "weight of the two turning types");
    cmd->add_option("--chain", chain, "dynamics: glauber | loop")
        ->check(CLI::IsMember({"glauber", "loop"}));
    cmd->add_option("--steps", cfg.steps, "step count for fixed-length runs");
    cmd->add_option("--cap", cfg.cap, "hitting-time step cap");
    cmd->add_option("--seed", cfg.seed, "master seed; replica seeds derive from it");
    cmd->add_option("--replicas", cfg.replicas, "independent chains per data point");
    cmd->add_option("--stride", cfg.stride, "steps between hit checks");
    cmd->add_option("--budget", cfg.budget, "enumeration node budget");
    cmd->add_option("--cs", cfg.cs, "sweep c values")->delimiter(',');
    cmd->add_option("--saw-cap", cfg.saw_cap, "walk-count table cap");
    cmd->add_option("--rooting", cfg.rooting, "walk rooting: origin | boundary")
        ->check(CLI::IsMember({"origin", "boundary"}));
    cmd->add_option("--out", cfg.out, "output path, default stdout");
    cmd->add_option("--format", cfg.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--test-corrupt-classifier", cfg.corrupt_classifier,
                  "negative control: misreport one class inside verify")
        ->group("");  // hidden
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex icebox laboratory"};
    app.set_version_flag("--version", std::string(icebox::kVersion));
    app.require_subcommand(1);

    const std::vector<std::string> names = {"enumerate", "escape", "sweep",
                                            "verify",    "geom",   "saw"};
    const std::vector<std::string> blurbs = {
        "exhaustive state count, partition function, class masses",
        "hitting time of the reversed-reference class from the reference state",
        "escape statistics and exact conductance across c values",
        "machine-readable invariant ledger",
        "lattice, interface and adjacency graph sizes",
        "exact self-avoiding walk counts"};

    struct SubState {
        ExperimentConfig flags;
        std::string bc, chain, config_path;
        CLI::App* cmd = nullptr;
    };
    std::vector<SubState> subs(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        subs[i].cmd = app.add_subcommand(names[i], blurbs[i]);
        add_common_flags(subs[i].cmd, subs[i].flags, subs[i].bc, subs[i].chain,
                         subs[i].config_path);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version exit 0; anything unparsable is a bad config.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!subs[i].cmd->parsed()) continue;
        SubState& s = subs[i];
        try {
            ExperimentConfig cfg;
            if (!s.config_path.empty()) {
                std::ifstream f(s.config_path);
                if (!f) throw icebox::ConfigError("cannot read config file " + s.config_path);
                std::ostringstream text;
                text << f.rdbuf();
                cfg = icebox::config_from_json_text(text.str());
            }
            // Flags given on the command line override the config file.
            const CLI::App* c = s.cmd;
            if (c->count("--n")) cfg.n = s.flags.n;
            if (c->count("--a")) cfg.a = s.flags.a;
            if (c->count("--b")) cfg.b = s.flags.b;
            if (c->count("--c")) cfg.c = s.flags.c;
            if (c->count("--steps")) cfg.steps = s.flags.steps;
            if (c->count("--cap")) cfg.cap = s.flags.cap;
            if (c->count("--seed")) cfg.seed = s.flags.seed;
            if (c->count("--replicas")) cfg.replicas = s.flags.replicas;
            if (c->count("--stride")) cfg.stride = s.flags.stride;
            if (c->count("--budget")) cfg.budget = s.flags.budget;
            if (c->count("--cs")) cfg.cs = s.flags.cs;
            if (c->count("--saw-cap")) cfg.saw_cap = s.flags.saw_cap;
            if (c->count("--rooting")) cfg.rooting = s.flags.rooting;
            if (c->count("--out")) cfg.out = s.flags.out;
            if (c->count("--format")) cfg.format = s.flags.format;
            if (c->count("--test-corrupt-classifier"))
                cfg.corrupt_classifier = s.flags.corrupt_classifier;
            if (c->count("--bc")) cfg.bc = s.bc == "periodic" ? Bc::Periodic : Bc::Free;
            if (c->count("--chain"))
                cfg.chain = s.chain == "loop" ? ChainKind::DirectedLoop : ChainKind::Glauber;
            return icebox::run_command(names[i], cfg);
        } catch (const icebox::ConfigError& e) {
            std::cerr << "bad config: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}

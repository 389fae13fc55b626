#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icebox/chains.hpp"
#include "icebox/lattice.hpp"
#include "icebox/state.hpp"

namespace icebox {

inline constexpr const char* kVersion = "icebox 0.1.0";

struct ExperimentConfig {
    int n = 2;
    Bc bc = Bc::Free;
    double a = 1, b = 1, c = 1;
    ChainKind chain = ChainKind::Glauber;
    std::uint64_t steps = 0;
    std::uint64_t cap = 10'000'000;
    std::uint64_t seed = 1;
    int replicas = 20;
    std::uint64_t stride = 100;
    std::uint64_t budget = 10'000'000;
    std::vector<double> cs;      // sweep c values
    int saw_cap = 12;            // saw table cap
    std::string rooting = "origin";
    std::string out;             // output path, empty = stdout
    std::string format = "json"; // csv | json
    bool corrupt_classifier = false;  // negative-control hook for the verify ledger

    void validate() const;  // throws ConfigError
    Weights weights() const { return Weights::make(a, b, c); }
};

// Parses the JSON config-file form; keys mirror the CLI flags.
ExperimentConfig config_from_json_text(const std::string& text);

// Each command writes its report to `out` and returns a process exit code:
// 0 ok, 1 verification failure, 2 bad config, 3 budget exceeded.
int cmd_enumerate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_escape(const ExperimentConfig& cfg, std::ostream& out);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);
int cmd_geom(const ExperimentConfig& cfg, std::ostream& out);
int cmd_saw(const ExperimentConfig& cfg, std::ostream& out);

// Dispatch by name with exit-code mapping for thrown config/budget errors.
int run_command(const std::string& name, const ExperimentConfig& cfg);

} // namespace icebox

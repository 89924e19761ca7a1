#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bchardy/disk_function.hpp"
#include "bchardy/hardy.hpp"

namespace bchardy {

struct CorpusEntry {
    std::string name;
    std::vector<Complex> params;
    bool apply_tb = false;  // run the function through T_B before use
};

/// One JSON document drives an experiment; unknown keys are errors so typos
/// cannot silently change a run. All randomness flows from `seed`.
struct ExperimentConfig {
    std::string experiment;  // verify | boundary-scan | hilbert | represent
    int grid_radii = 64;
    int grid_angles = 512;
    std::vector<double> radii;
    double p = 2.0;
    double q = 3.0;
    double gamma = 2.0;
    int n = 1;
    std::vector<CorpusEntry> corpus;
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    void validate() const;  // throws std::invalid_argument with a precise message

    double tolerance(const std::string& key, double fallback) const;
};

struct ExperimentReport {
    std::string config_echo;                      // canonical JSON of the config
    std::map<std::string, std::string> tables;    // table name -> CSV text
    std::map<std::string, Verdict> verdicts;
    double runtime_seconds = 0.0;

    bool all_pass() const;

    /// Writes report.json + one CSV per table into `dir`. report.json is
    /// byte-deterministic given (config, seed); the wall-clock runtime goes
    /// to a separate timing.txt so reruns stay comparable.
    void write(const std::string& dir) const;
};

ExperimentReport cmd_verify(const ExperimentConfig& cfg);
ExperimentReport cmd_boundary_scan(const ExperimentConfig& cfg);
ExperimentReport cmd_hilbert(const ExperimentConfig& cfg);
ExperimentReport cmd_represent(const ExperimentConfig& cfg);

/// CLI entry point (subcommands verify | boundary-scan | hilbert |
/// represent). Exit code 0 = all pass, 1 = some check failed, 2 = bad config.
int run_cli(int argc, char** argv);

}  // namespace bchardy

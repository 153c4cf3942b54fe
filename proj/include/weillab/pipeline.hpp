#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "weillab/geometry.hpp"
#include "weillab/positivity.hpp"

namespace weillab::pipeline {

using ffield::u32;
using ffield::u64;

// Run configuration shared by the commands. Execution-only knobs (threads)
// are deliberately excluded from report echoes so results are byte-identical
// across parallelism settings.
struct Config {
    u64 budget = 100000000;
    unsigned threads = 1;
    u32 max_m = 0;  // 0: command default
    std::size_t holdout = 2;
    std::optional<long> dim;
    double tol_class = 1e-6;
    double tol_pair = 1e-8;
    double tol_purity = 1e-8;
    u32 probe_max_m = 1;
    bool timings = false;
};

struct Outcome {
    nlohmann::ordered_json report;
    int exit_code = 0;  // 0: checks pass, 1: a mathematical check failed
};

// Exit code 2 (resource/input) is signalled by input_error escaping these.
Outcome run_count(const geometry::VarietySpec& spec, const Config& cfg);
Outcome run_zeta(const geometry::VarietySpec& spec, const Config& cfg);
Outcome run_expsum(const geometry::VarietySpec& spec, const Config& cfg);
Outcome run_positivity(const std::string& json_text, const Config& cfg);
Outcome run_tau(std::size_t max_n, unsigned long primes_up_to, const Config& cfg);

}  // namespace weillab::pipeline

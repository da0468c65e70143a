#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wbs/criteria.hpp"

namespace wbs {

// Exit codes: 0 success, 2 input error, 3 I/O failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
    std::string command;  // analyze | classify | approximate | families
    std::optional<std::string> family_inline;  // "beauzamy:2,1" or inline JSON
    std::optional<std::string> spec_file;
    double p = 2.0;
    double tol_linear = 1e-6;  // witness tolerance as a linear magnitude
    long long m_max = 64;
    long long n_max = 4096;
    long long j_max = 64;
    long long k = 1;
    long long n = 2;
    double eps = 0.1;
    long long lq_m = 0;
    long long sc_radius = 2;
    std::optional<std::string> rho_json;
    std::string format = "json";
    std::string out_path;  // empty = stdout
    int workers = 1;
    std::uint64_t seed = 0;

    Budgets budgets() const;
};

// Builds the weight sequence from --family or --spec-file. Throws
// std::invalid_argument on malformed input (exit 2); file read failures
// throw std::runtime_error (exit 3).
WeightSequence weights_from_config(const RunConfig& cfg);

std::string render_analyze(const RunConfig& cfg, const WeightSequence& ws);
std::string render_classify(const RunConfig& cfg, const WeightSequence& ws);
std::string render_approximate(const RunConfig& cfg, const WeightSequence& ws);
std::string render_families(const std::string& format);

// Full pipeline: validate, compute, write to out_path or stdout.
int run_command(const RunConfig& cfg);

}  // namespace wbs

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ltlmod/env/ballpass.hpp"
#include "ltlmod/env/cartpole.hpp"
#include "ltlmod/env/labelgrid.hpp"
#include "ltlmod/reward/shaping.hpp"
#include "ltlmod/rl/agent.hpp"

namespace ltlmod {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnvConfig {
    std::string kind; // ballpass | cartpole | labelgrid
    BallPassParams ballpass;
    CartPoleParams cartpole;
    LabelGridParams labelgrid;
    std::string grid_path; // labelgrid only, resolved against the config file
};

struct TrainSection {
    int episodes = 0;
    int horizon = 0;
    int minibatch = 64;
    size_t buffer = 100000;
    int warmup = 1000;
    double noise_sigma0 = 0.2;
    double noise_sigma1 = 0.02;
    int eval_every = 0;    // episodes between progress evaluations, 0 = off
    bool wall_clock = false;
    uint64_t seed = 1;
};

struct EvalSection {
    int runs = 200;
    int horizon = 0; // 0 = use the training horizon
    int k = 2;       // completed rounds required for success
};

struct ExperimentConfig {
    EnvConfig env;
    std::optional<std::string> ltl;       // exactly one of ltl / automaton_file
    std::optional<std::string> automaton_file;
    RewardParams reward;
    AgentConfig net;
    TrainSection train;
    EvalSection eval;
    std::string out_dir;

    uint64_t config_hash = 0; // FNV-1a over the canonical resolved dump
};

// Parses and schema-validates; unknown keys are rejected.  Relative paths
// resolve against the config file's directory.  LTLMODRL_SEED, when set,
// overrides train.seed.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text, const std::string& base_dir);

std::string config_to_json_text(const ExperimentConfig& cfg);

std::unique_ptr<Env> make_env(const EnvConfig& cfg);
Ldgba make_automaton(const ExperimentConfig& cfg);

uint64_t fnv1a_hash(const std::string& s);

inline constexpr const char* kCodeVersion = "ltlmod 0.1.0";

} // namespace ltlmod

#pragma once

#include <iosfwd>
#include <vector>

#include "ltlmod/config/config.hpp"
#include "ltlmod/rl/agent.hpp"

namespace ltlmod {

struct TrainLogRow {
    int episode = 0;
    int steps = 0;
    double total_shaped_reward = 0.0;
    double total_base_reward = 0.0;
    int rounds_completed = 0;
    bool success = false;
    long long wall_ms = 0;
};

struct TrainResult {
    std::vector<TrainLogRow> log;
    long long global_steps = 0;
};

// One full training run over the product stream: per step the active
// module's action (plus exploration noise) drives the product, the shaped
// reward is computed against the pre-update shaping frontier, the
// transition lands in the active module's buffer, and that module takes a
// minibatch step.  Episodes end at the horizon, on sink entry, on
// environment failure, or at a run dead end.  Fully determined by the
// config seed.
TrainResult train_agent(Agent& agent, const Env& env, const ProductSynchronizer& sync,
                        const RewardParams& reward, const TrainSection& train,
                        int success_k, std::ostream* progress = nullptr);

std::string training_log_csv(const std::vector<TrainLogRow>& log);
std::vector<TrainLogRow> parse_training_log_csv(const std::string& text);

} // namespace ltlmod

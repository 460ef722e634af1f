#pragma once

#include <string>
#include <vector>

#include "ltlmod/rl/agent.hpp"

namespace ltlmod {

struct TraceRow {
    int step = 0;
    std::vector<double> s;       // source environment state
    int q = 0;                   // source automaton state
    uint32_t t_mask = 0;         // source tracking frontier
    std::vector<double> action;  // executed continuous action
    bool was_accepting = false;
    bool round_flag = false;
};

struct EvalResult {
    int runs = 0;
    int successes = 0;
    double success_rate = 0.0;
    std::vector<char> run_success;
    std::vector<std::vector<TraceRow>> traces; // kept when requested
};

// Noise-free rollouts of the trained policy.  A run succeeds once k rounds
// complete before any sink entry / environment failure / dead end within
// the horizon.  For sequential tasks (absorbing accepting terminal state)
// k=1 is exactly "an accepting state was reached".
EvalResult evaluate(Agent& agent, const Env& env, const ProductSynchronizer& sync,
                    int runs, int horizon, int k, uint64_t seed, bool keep_traces);

std::string trace_csv(const std::vector<TraceRow>& trace);

} // namespace ltlmod

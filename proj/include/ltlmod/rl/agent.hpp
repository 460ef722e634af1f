#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltlmod/nn/mlp.hpp"
#include "ltlmod/product/product.hpp"
#include "ltlmod/rl/replay.hpp"

namespace ltlmod {

struct AgentConfig {
    std::vector<int> hidden{64, 64};
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double tau = 0.005; // soft-update rate
    int minibatch = 64;
    size_t buffer_capacity = 100000;
};

// Either one actor-critic bundle per automaton state (replay buffer, target
// nets and noise state included), bootstrapped through the successor
// state's module, or the single-network baseline whose observation carries
// the automaton state one-hot instead.
enum class AgentArch { modular, single };

struct TrainStepDiag {
    bool updated = false;
    double critic_loss = 0.0;
    double actor_value = 0.0; // mean critic value at the actor's actions
};

class Agent {
public:
    Agent(const ProductSynchronizer& sync, const Env& env, AgentArch arch,
          AgentConfig cfg, Rng& init_rng);

    AgentArch arch() const { return arch_; }
    int observation_dim() const { return obs_dim_; }
    int num_modules() const { return static_cast<int>(modules_.size()); }
    int module_of(int q) const;
    const std::vector<int>& module_states() const { return module_states_; }

    // Build the network observation for a product state.
    void observe(const ProductState& x, std::vector<double>& out) const;

    struct Decision {
        ProductAction exec;          // what the product executes
        std::vector<double> rep;     // stored action representation
    };
    // Deterministic actor evaluation; with explore, Gaussian noise scaled by
    // `sigma_frac` of each dimension's range is added before clamping.  At
    // nondeterministic states the trailing eps-preference outputs choose an
    // eps-move when the largest exceeds zero (ties to the lowest successor).
    Decision select_action(const ProductState& x, bool explore, double sigma_frac,
                           Rng& rng);

    void store(int q_src, Transition t);
    size_t buffer_size(int q_src) const;

    // One minibatch update of the module active at q_src; targets route
    // through each sample's successor module.  No-op (updated=false) until
    // the buffer holds a minibatch.
    TrainStepDiag train_step(int q_src, Rng& rng);

    // eval-time deterministic policy without touching noise
    std::vector<double> actor_output(int q, const std::vector<double>& obs);

    void save_checkpoint(const std::string& dir, const std::string& prefix) const;
    void load_checkpoint(const std::string& dir, const std::string& prefix);
    std::vector<std::string> checkpoint_files(const std::string& prefix) const;

    // test instrumentation: record (sample q_next, module index used) pairs
    std::vector<std::pair<int, int>>* bootstrap_log = nullptr;

private:
    struct Module {
        int q = -1;
        int rep_dim = 0;
        std::vector<int> eps_targets;
        std::vector<double> rep_lo, rep_hi;
        Mlp actor, critic, actor_t, critic_t;
        Adam actor_opt, critic_opt;
        ReplayBuffer buffer;
        Mlp::Grad actor_grad, critic_grad; // module shapes differ, so per module
    };

    Module& module_for(int q);
    void build_module(int q, const Env& env, Rng& rng);

    const ProductSynchronizer* sync_;
    const Env* env_;
    AgentArch arch_;
    AgentConfig cfg_;
    int obs_dim_ = 0;
    int env_act_dim_ = 0;
    std::vector<int> module_index_; // per automaton state, -1 when none
    std::vector<int> module_states_;
    std::vector<Module> modules_;

    // scratch
    Mlp::Workspace ws_a_, ws_c_, ws_tmp_;
    std::vector<double> obs_scratch_, in_scratch_;
};

} // namespace ltlmod

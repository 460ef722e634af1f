#include "ltlmod/rl/agent.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

namespace ltlmod {

Agent::Agent(const ProductSynchronizer& sync, const Env& env, AgentArch arch,
             AgentConfig cfg, Rng& init_rng)
    : sync_(&sync), env_(&env), arch_(arch), cfg_(std::move(cfg)) {
    const Ldgba& a = sync.automaton();
    const int n = a.num_states();
    env_act_dim_ = env.action_dim();
    obs_dim_ = env.state_dim() + a.num_accepting_sets() +
               (arch_ == AgentArch::single ? n : 0);

    module_index_.assign(n, -1);
    if (arch_ == AgentArch::single) {
        for (int q = 0; q < n; ++q)
            if (!a.eps_out[q].empty())
                throw std::invalid_argument(
                    "the single-network baseline supports eps-free automata only");
        build_module(-1, env, init_rng);
        for (int q = 0; q < n; ++q)
            if (!sync.sinks().count(q)) module_index_[q] = 0;
    } else {
        for (int q = 0; q < n; ++q) {
            if (sync.sinks().count(q)) continue; // no learning happens in a sink
            module_index_[q] = static_cast<int>(modules_.size());
            build_module(q, env, init_rng);
        }
    }
}

void Agent::build_module(int q, const Env& env, Rng& rng) {
    Module m;
    m.q = q;
    const EnvBounds ab = env.action_bounds();
    m.rep_lo = ab.lo;
    m.rep_hi = ab.hi;
    if (q >= 0) {
        m.eps_targets = sync_->automaton().eps_out[q];
        for (size_t i = 0; i < m.eps_targets.size(); ++i) {
            m.rep_lo.push_back(-1.0);
            m.rep_hi.push_back(1.0);
        }
    }
    m.rep_dim = static_cast<int>(m.rep_lo.size());

    std::vector<int> actor_sizes{obs_dim_};
    std::vector<int> critic_sizes{obs_dim_ + m.rep_dim};
    for (int h : cfg_.hidden) {
        actor_sizes.push_back(h);
        critic_sizes.push_back(h);
    }
    actor_sizes.push_back(m.rep_dim);
    critic_sizes.push_back(1);

    m.actor = Mlp::xavier(actor_sizes, Mlp::Head::bounded, m.rep_lo, m.rep_hi, rng);
    m.critic = Mlp::xavier(critic_sizes, Mlp::Head::identity, {}, {}, rng);
    m.actor_t = m.actor;
    m.critic_t = m.critic;
    m.actor_opt = Adam(m.actor, {cfg_.actor_lr, 0.9, 0.999, 1e-8});
    m.critic_opt = Adam(m.critic, {cfg_.critic_lr, 0.9, 0.999, 1e-8});
    m.buffer = ReplayBuffer(cfg_.buffer_capacity);
    m.actor_grad = m.actor.make_grad();
    m.critic_grad = m.critic.make_grad();
    modules_.push_back(std::move(m));
    if (q >= 0) module_states_.push_back(q);
}

int Agent::module_of(int q) const { return module_index_[q]; }

Agent::Module& Agent::module_for(int q) {
    const int idx = module_index_[q];
    if (idx < 0) throw std::logic_error("no module for automaton state " + std::to_string(q));
    return modules_[idx];
}

void Agent::observe(const ProductState& x, std::vector<double>& out) const {
    encode_observation(x, sync_->automaton().num_accepting_sets(), env_->feature_bounds(),
                       out);
    if (arch_ == AgentArch::single) {
        const int n = sync_->automaton().num_states();
        const size_t base = out.size();
        out.resize(base + n, 0.0);
        out[base + x.q] = 1.0;
    }
}

Agent::Decision Agent::select_action(const ProductState& x, bool explore,
                                     double sigma_frac, Rng& rng) {
    Module& m = module_for(x.q);
    observe(x, obs_scratch_);
    std::vector<double> rep = m.actor.forward(obs_scratch_, ws_a_);
    if (explore) {
        for (int i = 0; i < m.rep_dim; ++i) {
            const double range = m.rep_hi[i] - m.rep_lo[i];
            rep[i] += rng.gaussian() * sigma_frac * range;
            rep[i] = std::clamp(rep[i], m.rep_lo[i], m.rep_hi[i]);
        }
    }

    Decision d;
    // eps-preferences occupy the tail of the representation; the best one
    // wins over the continuous action only when positive
    int best_eps = -1;
    double best_pref = 0.0;
    for (size_t i = 0; i < m.eps_targets.size(); ++i) {
        const double pref = rep[env_act_dim_ + i];
        if (pref > 0.0 && (best_eps < 0 || pref > best_pref)) {
            best_eps = static_cast<int>(i);
            best_pref = pref;
        }
    }
    if (best_eps >= 0) {
        d.exec = EpsAction{m.eps_targets[best_eps]};
    } else {
        d.exec = std::vector<double>(rep.begin(), rep.begin() + env_act_dim_);
    }
    d.rep = std::move(rep);
    return d;
}

void Agent::store(int q_src, Transition t) { module_for(q_src).buffer.push(std::move(t)); }

size_t Agent::buffer_size(int q_src) const {
    return modules_[module_index_[q_src]].buffer.size();
}

TrainStepDiag Agent::train_step(int q_src, Rng& rng) {
    Module& m = module_for(q_src);
    TrainStepDiag diag;
    const int N = cfg_.minibatch;
    if (m.buffer.size() < static_cast<size_t>(N)) return diag;

    std::vector<const Transition*> batch(N);
    for (int i = 0; i < N; ++i) batch[i] = &m.buffer.sample(rng);

    // targets through each successor's module
    std::vector<double> y(N);
    for (int i = 0; i < N; ++i) {
        const Transition& s = *batch[i];
        if (s.terminal) {
            y[i] = s.r_shaped;
            continue;
        }
        Module& mb = module_for(s.q_next);
        if (bootstrap_log) bootstrap_log->push_back({s.q_next, module_index_[s.q_next]});
        const auto& u_next = mb.actor_t.forward(s.obs_next, ws_tmp_);
        in_scratch_ = s.obs_next;
        in_scratch_.insert(in_scratch_.end(), u_next.begin(), u_next.end());
        y[i] = s.r_shaped + s.disc * mb.critic_t.forward(in_scratch_, ws_c_)[0];
    }

    // critic regression toward y
    m.critic_grad.zero();
    double loss = 0.0;
    for (int i = 0; i < N; ++i) {
        const Transition& s = *batch[i];
        in_scratch_ = s.obs;
        in_scratch_.insert(in_scratch_.end(), s.act.begin(), s.act.end());
        const double pred = m.critic.forward(in_scratch_, ws_c_)[0];
        const double err = pred - y[i];
        loss += err * err;
        m.critic.backward(ws_c_, {2.0 * err / N}, &m.critic_grad);
    }
    m.critic_opt.step(m.critic, m.critic_grad);
    diag.critic_loss = loss / N;

    // deterministic policy gradient through the critic's action slot
    m.actor_grad.zero();
    double value = 0.0;
    std::vector<double> dinput;
    for (int i = 0; i < N; ++i) {
        const Transition& s = *batch[i];
        const auto& u = m.actor.forward(s.obs, ws_a_);
        in_scratch_ = s.obs;
        in_scratch_.insert(in_scratch_.end(), u.begin(), u.end());
        value += m.critic.forward(in_scratch_, ws_c_)[0];
        m.critic.backward(ws_c_, {-1.0 / N}, nullptr, &dinput); // ascend Q
        std::vector<double> du(dinput.begin() + obs_dim_, dinput.end());
        m.actor.backward(ws_a_, du, &m.actor_grad);
    }
    m.actor_opt.step(m.actor, m.actor_grad);
    diag.actor_value = value / N;

    soft_update(m.actor_t, m.actor, cfg_.tau);
    soft_update(m.critic_t, m.critic, cfg_.tau);
    diag.updated = true;
    return diag;
}

std::vector<double> Agent::actor_output(int q, const std::vector<double>& obs) {
    return module_for(q).actor.forward(obs, ws_tmp_);
}

namespace {
std::string module_file(const std::string& prefix, int idx, int q) {
    if (q < 0) return prefix + "_single.bin";
    return prefix + "_q" + std::to_string(q) + "_m" + std::to_string(idx) + ".bin";
}
} // namespace

std::vector<std::string> Agent::checkpoint_files(const std::string& prefix) const {
    std::vector<std::string> files;
    for (size_t i = 0; i < modules_.size(); ++i)
        files.push_back(module_file(prefix, static_cast<int>(i), modules_[i].q));
    return files;
}

void Agent::save_checkpoint(const std::string& dir, const std::string& prefix) const {
    std::filesystem::create_directories(dir);
    for (size_t i = 0; i < modules_.size(); ++i)
        modules_[i].actor.save(dir + "/" + module_file(prefix, static_cast<int>(i), modules_[i].q));
}

void Agent::load_checkpoint(const std::string& dir, const std::string& prefix) {
    for (size_t i = 0; i < modules_.size(); ++i) {
        Mlp loaded =
            Mlp::load(dir + "/" + module_file(prefix, static_cast<int>(i), modules_[i].q));
        if (!loaded.same_architecture(modules_[i].actor))
            throw WeightIoError("checkpoint architecture mismatch for module " +
                                std::to_string(i));
        modules_[i].actor = std::move(loaded);
        modules_[i].actor_t = modules_[i].actor;
    }
}

} // namespace ltlmod

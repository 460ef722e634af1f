#include "ltlmod/rl/train.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace ltlmod {

TrainResult train_agent(Agent& agent, const Env& env, const ProductSynchronizer& sync,
                        const RewardParams& reward, const TrainSection& train,
                        int success_k, std::ostream* progress) {
    TrainResult result;
    const uint64_t seed = train.seed;
    Rng noise_rng(derive_seed(seed, 0xB2));
    Rng replay_rng(derive_seed(seed, 0xC3));
    const uint64_t episode_stream = derive_seed(seed, 0xE0);

    const long long total_steps =
        static_cast<long long>(train.episodes) * train.horizon;
    long long global_step = 0;

    for (int episode = 0; episode < train.episodes; ++episode) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng env_rng(derive_seed(episode_stream, static_cast<uint64_t>(episode)));
        ProductState x = sync.initial_state(env.reset(env_rng));
        bool cur_accepting = sync.is_accepting(x.q, x.t);
        ShapingState shaping = make_shaping_state(sync.automaton(), sync.sinks());

        TrainLogRow row;
        row.episode = episode;

        for (int t = 0; t < train.horizon; ++t) {
            const int q_src = x.q;
            const double frac = total_steps > 1
                                    ? static_cast<double>(global_step) / (total_steps - 1)
                                    : 0.0;
            const double sigma =
                train.noise_sigma0 + (train.noise_sigma1 - train.noise_sigma0) * frac;
            Agent::Decision d = agent.select_action(x, true, sigma, noise_rng);
            auto outcome = sync.step(env, x, d.exec, env_rng);
            ++global_step;
            if (!outcome) break; // run dead end: the episode simply stops

            const double r_shaped =
                shaped_reward_value(cur_accepting, x.q, outcome->next.q, shaping, reward);
            const bool terminal = outcome->entered_sink || env.failed(outcome->next.s);

            Transition tr;
            agent.observe(x, tr.obs);
            tr.act = std::move(d.rep);
            tr.r_shaped = r_shaped;
            tr.disc = discount_value(cur_accepting, reward);
            agent.observe(outcome->next, tr.obs_next);
            tr.q_next = outcome->next.q;
            tr.terminal = terminal;
            agent.store(q_src, std::move(tr));

            row.total_shaped_reward += r_shaped;
            row.total_base_reward += base_reward_value(cur_accepting, reward);
            if (outcome->round_flag) ++row.rounds_completed;
            ++row.steps;

            shaping = fphi_update(outcome->next.q, shaping, outcome->round_flag);
            cur_accepting = outcome->was_accepting;
            x = outcome->next;

            if (global_step >= train.warmup) agent.train_step(q_src, replay_rng);
            if (terminal) break;
        }

        row.success = row.rounds_completed >= success_k;
        if (train.wall_clock) {
            row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        }
        result.log.push_back(row);

        if (progress && train.eval_every > 0 && (episode + 1) % train.eval_every == 0) {
            double recent = 0.0;
            int window = std::min<int>(train.eval_every, result.log.size());
            for (int i = 0; i < window; ++i)
                recent += result.log[result.log.size() - 1 - i].total_shaped_reward;
            (*progress) << "episode " << (episode + 1) << "/" << train.episodes
                        << " mean shaped reward (last " << window << "): "
                        << recent / window << "\n";
        }
    }
    result.global_steps = global_step;
    return result;
}

std::string training_log_csv(const std::vector<TrainLogRow>& log) {
    std::string out = "episode,steps,total_shaped_reward,total_base_reward,"
                      "rounds_completed,success,wall_ms\n";
    char buf[256];
    for (const auto& r : log) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%d,%d,%lld\n", r.episode,
                      r.steps, r.total_shaped_reward, r.total_base_reward,
                      r.rounds_completed, r.success ? 1 : 0, r.wall_ms);
        out += buf;
    }
    return out;
}

std::vector<TrainLogRow> parse_training_log_csv(const std::string& text) {
    std::vector<TrainLogRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty training log");
    if (line.rfind("episode,steps,total_shaped_reward", 0) != 0)
        throw std::runtime_error("training log header mismatch: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TrainLogRow r;
        int success_int = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%d,%d,%lld", &r.episode, &r.steps,
                        &r.total_shaped_reward, &r.total_base_reward, &r.rounds_completed,
                        &success_int, &r.wall_ms) != 7)
            throw std::runtime_error("bad training log row: " + line);
        r.success = success_int != 0;
        rows.push_back(r);
    }
    return rows;
}

} // namespace ltlmod

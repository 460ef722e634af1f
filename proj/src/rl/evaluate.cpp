#include "ltlmod/rl/evaluate.hpp"

#include <cstdio>
#include <stdexcept>

namespace ltlmod {

EvalResult evaluate(Agent& agent, const Env& env, const ProductSynchronizer& sync,
                    int runs, int horizon, int k, uint64_t seed, bool keep_traces) {
    if (runs <= 0) throw std::invalid_argument("evaluation needs at least one run");
    if (k <= 0) throw std::invalid_argument("success requires k >= 1 rounds");
    EvalResult res;
    res.runs = runs;
    const uint64_t run_stream = derive_seed(seed, 0xD4);
    Rng dummy_noise(0);

    for (int r = 0; r < runs; ++r) {
        Rng env_rng(derive_seed(run_stream, static_cast<uint64_t>(r)));
        ProductState x = sync.initial_state(env.reset(env_rng));
        int rounds = 0;
        bool success = false;
        std::vector<TraceRow> trace;

        for (int t = 0; t < horizon; ++t) {
            Agent::Decision d = agent.select_action(x, false, 0.0, dummy_noise);
            auto outcome = sync.step(env, x, d.exec, env_rng);
            if (!outcome) break;

            if (keep_traces) {
                TraceRow row;
                row.step = t;
                row.s = x.s;
                row.q = x.q;
                row.t_mask = x.t;
                if (std::holds_alternative<std::vector<double>>(d.exec))
                    row.action = std::get<std::vector<double>>(d.exec);
                else
                    row.action.assign(env.action_dim(), 0.0); // eps-move, no env action
                row.was_accepting = outcome->was_accepting;
                row.round_flag = outcome->round_flag;
                trace.push_back(std::move(row));
            }

            if (outcome->round_flag) ++rounds;
            if (rounds >= k) {
                success = true;
                break;
            }
            if (outcome->entered_sink || env.failed(outcome->next.s)) break;
            x = outcome->next;
        }

        res.run_success.push_back(success ? 1 : 0);
        if (success) ++res.successes;
        if (keep_traces) res.traces.push_back(std::move(trace));
    }
    res.success_rate = static_cast<double>(res.successes) / runs;
    return res;
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
    std::string out = "step";
    if (!trace.empty()) {
        for (size_t i = 0; i < trace[0].s.size(); ++i) out += ",s" + std::to_string(i);
        out += ",q,T_mask";
        for (size_t i = 0; i < trace[0].action.size(); ++i) out += ",a" + std::to_string(i);
        out += ",was_accepting,round_flag\n";
    } else {
        out += ",q,T_mask,was_accepting,round_flag\n";
    }
    char buf[64];
    for (const auto& r : trace) {
        out += std::to_string(r.step);
        for (double v : r.s) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            out += buf;
        }
        out += "," + std::to_string(r.q) + "," + std::to_string(r.t_mask);
        for (double v : r.action) {
            std::snprintf(buf, sizeof(buf), ",%.17g", v);
            out += buf;
        }
        out += r.was_accepting ? ",1" : ",0";
        out += r.round_flag ? ",1\n" : ",0\n";
    }
    return out;
}

} // namespace ltlmod

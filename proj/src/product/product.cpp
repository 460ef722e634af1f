#include "ltlmod/product/product.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlmod {

ProductSynchronizer::ProductSynchronizer(const Ldgba& a, const Env& env)
    : a_(&a), sinks_(detect_sinks(a)) {
    const auto& props = env.prop_names();
    prop_map_.resize(props.size());
    for (size_t i = 0; i < props.size(); ++i)
        prop_map_[i] = a.alphabet.index_of(props[i]);
}

ProductState ProductSynchronizer::initial_state(std::vector<double> s0) const {
    return ProductState{std::move(s0), a_->initial, full_frontier(a_->num_accepting_sets())};
}

Label ProductSynchronizer::label_of(const std::vector<double>& s, const Env& env) const {
    static thread_local std::vector<int> props;
    props.clear();
    env.label(s, props);
    Label l = 0;
    for (int p : props) {
        const int bit = prop_map_[p];
        if (bit >= 0) l |= (Label(1) << bit);
    }
    return l;
}

std::optional<StepOutcome> ProductSynchronizer::step(const Env& env, const ProductState& x,
                                                     const ProductAction& action,
                                                     Rng& rng) const {
    StepOutcome out;
    int q_next = -1;
    if (std::holds_alternative<EpsAction>(action)) {
        const int target = std::get<EpsAction>(action).target_q;
        if (a_->deterministic[x.q])
            throw std::invalid_argument("eps-action taken at a deterministic automaton state");
        const auto& eps = a_->eps_out[x.q];
        if (std::find(eps.begin(), eps.end(), target) == eps.end())
            throw std::invalid_argument("eps-action target is not an eps successor");
        q_next = target;
        out.next.s = x.s; // environment untouched, no noise drawn
        out.label = label_of(x.s, env);
    } else {
        out.label = label_of(x.s, env);
        const auto succ = automaton_step(*a_, x.q, out.label);
        if (!succ) return std::nullopt;
        q_next = *succ;
        const auto a = clamp_action(std::get<std::vector<double>>(action), env.action_bounds());
        out.next.s = env.step(x.s, a, rng);
    }

    out.was_accepting = is_accepting(q_next, x.t);
    const FrontierUpdate fu =
        frontier_update(a_->accept_mask[q_next], x.t, a_->num_accepting_sets());
    out.next.q = q_next;
    out.next.t = fu.next;
    out.round_flag = fu.round_completed;
    out.entered_sink = sinks_.count(q_next) > 0;
    return out;
}

RandomRun random_run(const Env& env, const ProductSynchronizer& sync, int length,
                     uint64_t seed) {
    RandomRun run;
    if (length < 1) return run;
    Rng rng(seed);
    Rng env_rng = rng.split(1);
    ProductState x = sync.initial_state(env.reset(env_rng));
    run.states.push_back(x);

    const Ldgba& a = sync.automaton();
    const EnvBounds ab = env.action_bounds();
    for (int count = 1; count < length; ++count) {
        // feasible automaton moves: the guard successor plus any eps successors
        const Label l = sync.label_of(x.s, env);
        std::optional<int> guard_succ;
        try {
            guard_succ = automaton_step(a, x.q, l);
        } catch (const AmbiguousStepError&) {
            guard_succ = std::nullopt; // only eps choices can resolve this
        }
        std::vector<ProductAction> moves;
        if (guard_succ) {
            std::vector<double> act(ab.lo.size());
            for (size_t i = 0; i < act.size(); ++i) act[i] = rng.uniform(ab.lo[i], ab.hi[i]);
            moves.emplace_back(std::move(act));
        }
        for (int t : a.eps_out[x.q]) moves.emplace_back(EpsAction{t});
        if (moves.empty()) {
            run.failed = true;
            return run;
        }
        const auto& chosen = moves[rng.uniform_index(moves.size())];
        auto outcome = sync.step(env, x, chosen, env_rng);
        if (!outcome) {
            run.failed = true;
            return run;
        }
        x = outcome->next;
        run.states.push_back(x);
        run.outcomes.push_back(std::move(*outcome));
    }
    return run;
}

bool label_sequence_check(const Ldgba& a, const std::vector<ProductState>& run, int k) {
    if (k <= 0) return true;
    if (run.empty()) return false;
    const int f = a.num_accepting_sets();
    Frontier t = run.front().t;
    int rounds = 0;
    for (size_t i = 1; i < run.size(); ++i) {
        const FrontierUpdate fu = frontier_update(a.accept_mask[run[i].q], t, f);
        t = fu.next;
        if (fu.round_completed) ++rounds;
    }
    return rounds >= k;
}

void encode_observation(const ProductState& x, int num_accepting_sets,
                        const EnvBounds& feature_bounds, std::vector<double>& out) {
    const size_t n = x.s.size();
    out.resize(n + static_cast<size_t>(num_accepting_sets));
    for (size_t i = 0; i < n; ++i) {
        const double lo = feature_bounds.lo[i], hi = feature_bounds.hi[i];
        double v = hi > lo ? 2.0 * (x.s[i] - lo) / (hi - lo) - 1.0 : 0.0;
        out[i] = std::clamp(v, -1.0, 1.0);
    }
    for (int j = 0; j < num_accepting_sets; ++j)
        out[n + j] = ((x.t >> j) & 1u) ? 1.0 : 0.0;
}

} // namespace ltlmod

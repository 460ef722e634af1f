#include "ltlmod/reward/shaping.hpp"

#include <cmath>
#include <stdexcept>

namespace ltlmod {

double RewardParams::validate(bool* warn) const {
    if (!(r_f > 0.0 && r_f < 1.0)) throw std::invalid_argument("r_F must lie in (0,1)");
    if (!(gamma_f > 0.0 && gamma_f < 1.0)) throw std::invalid_argument("gamma_F must lie in (0,1)");
    if (!(eta_phi > 0.0)) throw std::invalid_argument("eta_Phi must be positive");
    const double ratio = (1.0 - gamma_f) / (1.0 - r_f);
    if (warn) *warn = !(ratio < 1.0);
    return ratio;
}

ShapingState make_shaping_state(const Ldgba& a, const std::set<int>& sinks) {
    if (a.num_states() > 64)
        throw std::invalid_argument("shaping frontier limited to 64 automaton states");
    uint64_t base = 0;
    for (int q = 0; q < a.num_states(); ++q) {
        if (q == a.initial || sinks.count(q)) continue;
        base |= (1ull << q);
    }
    return ShapingState{base, base};
}

ShapingState fphi_update(int q_next, const ShapingState& shaping, bool round_flag) {
    ShapingState out = shaping;
    const uint64_t bit = 1ull << q_next;
    if (round_flag)
        out.t_phi = shaping.t_phi0 & ~bit;
    else if (shaping.t_phi & bit)
        out.t_phi = shaping.t_phi & ~bit;
    return out;
}

double base_reward_value(bool accepting, const RewardParams& p) {
    return accepting ? 1.0 - p.r_f : 0.0;
}

double discount_value(bool accepting, const RewardParams& p) {
    return accepting ? p.r_f : p.gamma_f;
}

double base_reward(const ProductSynchronizer& sync, const ProductState& x,
                   const RewardParams& p) {
    return base_reward_value(sync.is_accepting(x.q, x.t), p);
}

double discount(const ProductSynchronizer& sync, const ProductState& x,
                const RewardParams& p) {
    return discount_value(sync.is_accepting(x.q, x.t), p);
}

double potential(int q, const ShapingState& shaping, const RewardParams& p) {
    return shaping.contains(q) ? p.eta_phi * (1.0 - p.r_f) : 0.0;
}

double shaped_reward_value(bool x_accepting, int q, int q_next,
                           const ShapingState& shaping_pre, const RewardParams& p) {
    return base_reward_value(x_accepting, p) +
           discount_value(x_accepting, p) * potential(q_next, shaping_pre, p) -
           potential(q, shaping_pre, p);
}

double shaped_reward(const ProductSynchronizer& sync, const ProductState& x,
                     const ProductState& x_next, const ShapingState& shaping_pre,
                     const RewardParams& p) {
    return shaped_reward_value(sync.is_accepting(x.q, x.t), x.q, x_next.q, shaping_pre, p);
}

double return_of_run(const std::vector<double>& rewards, const std::vector<double>& discounts) {
    double d = 0.0;
    for (size_t i = rewards.size(); i-- > 0;) d = rewards[i] + discounts[i] * d;
    return d;
}

double return_of_run(const ProductSynchronizer& sync,
                     const std::vector<ProductState>& run, const RewardParams& p) {
    double d = 0.0;
    for (size_t i = run.size(); i-- > 0;) {
        const bool acc = sync.is_accepting(run[i].q, run[i].t);
        d = base_reward_value(acc, p) + discount_value(acc, p) * d;
    }
    return d;
}

double return_truncation_bound(int length, const RewardParams& p) {
    return std::pow(p.gamma_f, length);
}

} // namespace ltlmod

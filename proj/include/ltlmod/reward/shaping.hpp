#pragma once

#include <cstdint>
#include <vector>

#include "ltlmod/product/product.hpp"

namespace ltlmod {

struct RewardParams {
    double r_f = 0.99;     // reward at accepting states is 1 - r_f; discount there is r_f
    double gamma_f = 0.9999;
    double eta_phi = 1.0;  // shaping scale

    // throws on out-of-range values; returns (1-gamma_f)/(1-r_f), with
    // warn set when the ratio is not < 1 (the regime the guarantees need)
    double validate(bool* warn = nullptr) const;
};

// Automaton-level first-visit frontier driving the potential.  Reset value
// excludes the initial state and the non-accepting sinks.  State masks cap
// the automaton at 64 states.
struct ShapingState {
    uint64_t t_phi = 0;
    uint64_t t_phi0 = 0;

    bool contains(int q) const { return (t_phi >> q) & 1ull; }
};

ShapingState make_shaping_state(const Ldgba& a, const std::set<int>& sinks);

// Visit of q_next: a completed round restarts the frontier (minus the state
// just visited); otherwise a first visit is struck off.
ShapingState fphi_update(int q_next, const ShapingState& shaping, bool round_flag);

double base_reward_value(bool accepting, const RewardParams& p);
double discount_value(bool accepting, const RewardParams& p);

// Predicates on product-state values; `x.t` must be the arrival frontier
// (see ProductState docs).  The oracle and the tests use these directly.
double base_reward(const ProductSynchronizer& sync, const ProductState& x,
                   const RewardParams& p);
double discount(const ProductSynchronizer& sync, const ProductState& x,
                const RewardParams& p);

double potential(int q, const ShapingState& shaping, const RewardParams& p);

// R'(x,u,x') = R(x) + gamma(x)*Phi(x') - Phi(x), with Phi read against the
// shaping frontier as it stood before this transition's update.
double shaped_reward_value(bool x_accepting, int q, int q_next,
                           const ShapingState& shaping_pre, const RewardParams& p);
double shaped_reward(const ProductSynchronizer& sync, const ProductState& x,
                     const ProductState& x_next, const ShapingState& shaping_pre,
                     const RewardParams& p);

// Truncated discounted return of a finite run of arrival-convention states.
double return_of_run(const ProductSynchronizer& sync,
                     const std::vector<ProductState>& run, const RewardParams& p);
double return_of_run(const std::vector<double>& rewards, const std::vector<double>& discounts);

// Error bound of the truncation after `length` steps (the return is <= 1).
double return_truncation_bound(int length, const RewardParams& p);

} // namespace ltlmod

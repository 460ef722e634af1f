#pragma once

#include "ltlmod/env/env.hpp"

namespace ltlmod {

struct CartPoleParams {
    double masscart = 1.0;
    double masspole = 0.1;
    double half_length = 0.5;
    double gravity = 9.8;
    double dt = 0.02;
    double force_max = 10.0;
    double theta_fail = 0.2095; // rad
    double x_fail = 2.4;        // m
    double init_range = 0.05;   // uniform init for all state components
    // labeled cart regions
    double green_lo = -1.44, green_hi = -0.96;
    double yellow_lo = 0.96, yellow_hi = 1.44;
};

// Classic cart-pole with a continuous horizontal force, explicit Euler
// integration.  State: (x, xdot, theta, thetadot).  Labels: Green / Yellow
// from the cart position bands, Unsafe once the pole or cart leaves the
// valid envelope.
class CartPoleEnv final : public Env {
public:
    explicit CartPoleEnv(CartPoleParams params = {});

    int state_dim() const override { return 4; }
    int action_dim() const override { return 1; }
    EnvBounds action_bounds() const override;
    EnvBounds feature_bounds() const override;
    std::vector<double> reset(Rng& rng) const override;
    std::vector<double> step(const std::vector<double>& s,
                             const std::vector<double>& action, Rng& rng) const override;
    const std::vector<std::string>& prop_names() const override { return props_; }
    void label(const std::vector<double>& s, std::vector<int>& out) const override;
    bool failed(const std::vector<double>& s) const override;

private:
    CartPoleParams p_;
    std::vector<std::string> props_{"Green", "Yellow", "Unsafe"};
};

} // namespace ltlmod

#pragma once

#include "ltlmod/env/env.hpp"

namespace ltlmod {

struct Region {
    std::string prop;
    double x0, y0, x1, y1;
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

struct BallPassParams {
    double dt = 0.05;
    double gx = 0.0, gy = -9.8;
    double vmax = 50.0;                 // per-component speed clamp
    std::vector<double> action_lo{0.0, 0.0};
    std::vector<double> action_hi{1.0, 1.0};
    double start_x = 300.0, start_y = 300.0;
    double start_jitter = 0.0;          // uniform box jitter on reset
    std::vector<Region> regions;        // defaults to two 80x80 boxes, see ctor
};

// Planar ball in a 600x600 box: the action accelerates the ball, gravity is
// added to the vertical component, positions integrate semi-implicitly and
// clamp at the walls with the offending velocity component zeroed.
// State: (x, y, vx, vy).
class BallPassEnv final : public Env {
public:
    explicit BallPassEnv(BallPassParams params = {});

    int state_dim() const override { return 4; }
    int action_dim() const override { return 2; }
    EnvBounds action_bounds() const override;
    EnvBounds feature_bounds() const override;
    std::vector<double> reset(Rng& rng) const override;
    std::vector<double> step(const std::vector<double>& s,
                             const std::vector<double>& action, Rng& rng) const override;
    const std::vector<std::string>& prop_names() const override { return props_; }
    void label(const std::vector<double>& s, std::vector<int>& out) const override;

    static constexpr double kBoxSize = 600.0;

private:
    BallPassParams p_;
    std::vector<std::string> props_;
};

} // namespace ltlmod

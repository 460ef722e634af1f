#include "ltlmod/env/ballpass.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlmod {

std::vector<double> clamp_action(const std::vector<double>& a, const EnvBounds& b) {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = std::clamp(a[i], b.lo[i], b.hi[i]);
    return out;
}

BallPassEnv::BallPassEnv(BallPassParams params) : p_(std::move(params)) {
    if (p_.regions.empty()) {
        p_.regions = {{"r1", 110.0, 260.0, 190.0, 340.0},
                      {"r2", 410.0, 260.0, 490.0, 340.0}};
    }
    for (const auto& r : p_.regions) {
        if (std::find(props_.begin(), props_.end(), r.prop) == props_.end())
            props_.push_back(r.prop);
    }
    if (p_.action_lo.size() != 2 || p_.action_hi.size() != 2)
        throw std::invalid_argument("ball-pass actions are two-dimensional");
}

EnvBounds BallPassEnv::action_bounds() const {
    return {p_.action_lo, p_.action_hi};
}

EnvBounds BallPassEnv::feature_bounds() const {
    return {{0.0, 0.0, -p_.vmax, -p_.vmax}, {kBoxSize, kBoxSize, p_.vmax, p_.vmax}};
}

std::vector<double> BallPassEnv::reset(Rng& rng) const {
    double x = p_.start_x, y = p_.start_y;
    if (p_.start_jitter > 0.0) {
        x += rng.uniform(-p_.start_jitter, p_.start_jitter);
        y += rng.uniform(-p_.start_jitter, p_.start_jitter);
    }
    x = std::clamp(x, 0.0, kBoxSize);
    y = std::clamp(y, 0.0, kBoxSize);
    return {x, y, 0.0, 0.0};
}

std::vector<double> BallPassEnv::step(const std::vector<double>& s,
                                      const std::vector<double>& action, Rng&) const {
    double vx = s[2] + (action[0] + p_.gx) * p_.dt;
    double vy = s[3] + (action[1] + p_.gy) * p_.dt;
    vx = std::clamp(vx, -p_.vmax, p_.vmax);
    vy = std::clamp(vy, -p_.vmax, p_.vmax);
    double x = s[0] + vx * p_.dt;
    double y = s[1] + vy * p_.dt;
    if (x < 0.0) { x = 0.0; vx = 0.0; }
    if (x > kBoxSize) { x = kBoxSize; vx = 0.0; }
    if (y < 0.0) { y = 0.0; vy = 0.0; }
    if (y > kBoxSize) { y = kBoxSize; vy = 0.0; }
    return {x, y, vx, vy};
}

void BallPassEnv::label(const std::vector<double>& s, std::vector<int>& out) const {
    out.clear();
    for (const auto& r : p_.regions) {
        if (!r.contains(s[0], s[1])) continue;
        for (size_t i = 0; i < props_.size(); ++i)
            if (props_[i] == r.prop) {
                if (std::find(out.begin(), out.end(), static_cast<int>(i)) == out.end())
                    out.push_back(static_cast<int>(i));
                break;
            }
    }
}

} // namespace ltlmod

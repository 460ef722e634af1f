#include "ltlmod/env/cartpole.hpp"

#include <cmath>

namespace ltlmod {

CartPoleEnv::CartPoleEnv(CartPoleParams params) : p_(params) {}

EnvBounds CartPoleEnv::action_bounds() const {
    return {{-p_.force_max}, {p_.force_max}};
}

EnvBounds CartPoleEnv::feature_bounds() const {
    return {{-p_.x_fail, -10.0, -p_.theta_fail, -10.0},
            {p_.x_fail, 10.0, p_.theta_fail, 10.0}};
}

std::vector<double> CartPoleEnv::reset(Rng& rng) const {
    std::vector<double> s(4);
    for (auto& v : s) v = rng.uniform(-p_.init_range, p_.init_range);
    return s;
}

std::vector<double> CartPoleEnv::step(const std::vector<double>& s,
                                      const std::vector<double>& action, Rng&) const {
    const double force = action[0];
    const double x = s[0], xdot = s[1], theta = s[2], thetadot = s[3];
    const double total_mass = p_.masscart + p_.masspole;
    const double pml = p_.masspole * p_.half_length;

    const double costh = std::cos(theta), sinth = std::sin(theta);
    const double temp = (force + pml * thetadot * thetadot * sinth) / total_mass;
    const double thetaacc =
        (p_.gravity * sinth - costh * temp) /
        (p_.half_length * (4.0 / 3.0 - p_.masspole * costh * costh / total_mass));
    const double xacc = temp - pml * thetaacc * costh / total_mass;

    return {x + p_.dt * xdot, xdot + p_.dt * xacc,
            theta + p_.dt * thetadot, thetadot + p_.dt * thetaacc};
}

void CartPoleEnv::label(const std::vector<double>& s, std::vector<int>& out) const {
    out.clear();
    if (s[0] >= p_.green_lo && s[0] <= p_.green_hi) out.push_back(0);
    if (s[0] >= p_.yellow_lo && s[0] <= p_.yellow_hi) out.push_back(1);
    if (failed(s)) out.push_back(2);
}

bool CartPoleEnv::failed(const std::vector<double>& s) const {
    return std::abs(s[2]) > p_.theta_fail || std::abs(s[0]) > p_.x_fail;
}

} // namespace ltlmod

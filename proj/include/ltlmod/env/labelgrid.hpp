#pragma once

#include "ltlmod/env/env.hpp"

namespace ltlmod {

struct LabelGridParams {
    double step_radius = 2.0; // D: each move covers a distance drawn from (0, D]
    double cell_size = 1.0;
    double start_x = -1.0, start_y = -1.0; // negative = grid center
    double start_jitter = 0.0;
};

// Synthetic exploration map: a dense grid of proposition sets, an agent at a
// continuous position, and a heading action in [0, 2pi).  Each step moves
// the agent along the heading by a uniformly drawn distance in (0, D],
// clamped to the map.  State: (x, y).
class LabelGridEnv final : public Env {
public:
    LabelGridEnv(std::vector<std::vector<std::vector<int>>> cells,
                 std::vector<std::string> props, LabelGridParams params);

    // CSV of label tokens: `.` is the empty label, `|` separates stacked
    // propositions, rows must all have the same width.
    static LabelGridEnv load(const std::string& path, LabelGridParams params = {});
    static LabelGridEnv parse_csv(const std::string& text, LabelGridParams params = {});

    int state_dim() const override { return 2; }
    int action_dim() const override { return 1; }
    EnvBounds action_bounds() const override;
    EnvBounds feature_bounds() const override;
    std::vector<double> reset(Rng& rng) const override;
    std::vector<double> step(const std::vector<double>& s,
                             const std::vector<double>& action, Rng& rng) const override;
    const std::vector<std::string>& prop_names() const override { return props_; }
    void label(const std::vector<double>& s, std::vector<int>& out) const override;

    double width() const { return cols_ * p_.cell_size; }
    double height() const { return rows_ * p_.cell_size; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    std::vector<std::vector<std::vector<int>>> cells_; // [row][col] -> prop indices
    std::vector<std::string> props_;
    LabelGridParams p_;
    int rows_ = 0, cols_ = 0;
};

} // namespace ltlmod

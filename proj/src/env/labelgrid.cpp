#include "ltlmod/env/labelgrid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltlmod {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

LabelGridEnv::LabelGridEnv(std::vector<std::vector<std::vector<int>>> cells,
                           std::vector<std::string> props, LabelGridParams params)
    : cells_(std::move(cells)), props_(std::move(props)), p_(params) {
    rows_ = static_cast<int>(cells_.size());
    cols_ = rows_ ? static_cast<int>(cells_[0].size()) : 0;
    if (!rows_ || !cols_) throw std::invalid_argument("label grid must be non-empty");
}

LabelGridEnv LabelGridEnv::parse_csv(const std::string& text, LabelGridParams params) {
    std::vector<std::vector<std::vector<int>>> cells;
    std::vector<std::string> props;
    auto intern = [&](const std::string& tok) {
        auto it = std::find(props.begin(), props.end(), tok);
        if (it != props.end()) return static_cast<int>(it - props.begin());
        props.push_back(tok);
        return static_cast<int>(props.size()) - 1;
    };

    std::istringstream in(text);
    std::string line;
    size_t width = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::vector<int>> row;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            // trim
            const auto b = tok.find_first_not_of(" \t");
            const auto e = tok.find_last_not_of(" \t");
            tok = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
            std::vector<int> cell;
            if (tok != "." && !tok.empty()) {
                std::istringstream ts(tok);
                std::string prop;
                while (std::getline(ts, prop, '|')) {
                    if (prop.empty() ||
                        !std::all_of(prop.begin(), prop.end(), [](unsigned char c) {
                            return std::isalnum(c) || c == '_';
                        }))
                        throw std::invalid_argument("unknown label token '" + tok + "'");
                    cell.push_back(intern(prop));
                }
            } else if (tok.empty()) {
                throw std::invalid_argument("empty grid cell (use '.' for no label)");
            }
            row.push_back(std::move(cell));
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw std::invalid_argument("ragged grid row: expected " + std::to_string(width) +
                                        " cells, got " + std::to_string(row.size()));
        cells.push_back(std::move(row));
    }
    return LabelGridEnv(std::move(cells), std::move(props), params);
}

LabelGridEnv LabelGridEnv::load(const std::string& path, LabelGridParams params) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str(), params);
}

EnvBounds LabelGridEnv::action_bounds() const { return {{0.0}, {kTwoPi}}; }

EnvBounds LabelGridEnv::feature_bounds() const {
    return {{0.0, 0.0}, {width(), height()}};
}

std::vector<double> LabelGridEnv::reset(Rng& rng) const {
    double x = p_.start_x >= 0.0 ? p_.start_x : width() / 2.0;
    double y = p_.start_y >= 0.0 ? p_.start_y : height() / 2.0;
    if (p_.start_jitter > 0.0) {
        x += rng.uniform(-p_.start_jitter, p_.start_jitter);
        y += rng.uniform(-p_.start_jitter, p_.start_jitter);
    }
    return {std::clamp(x, 0.0, width()), std::clamp(y, 0.0, height())};
}

std::vector<double> LabelGridEnv::step(const std::vector<double>& s,
                                       const std::vector<double>& action, Rng& rng) const {
    double theta = std::fmod(action[0], kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    const double d = p_.step_radius * (1.0 - rng.uniform()); // (0, D]
    const double x = std::clamp(s[0] + d * std::cos(theta), 0.0, width());
    const double y = std::clamp(s[1] + d * std::sin(theta), 0.0, height());
    return {x, y};
}

void LabelGridEnv::label(const std::vector<double>& s, std::vector<int>& out) const {
    out.clear();
    int col = static_cast<int>(std::floor(s[0] / p_.cell_size));
    int row = static_cast<int>(std::floor(s[1] / p_.cell_size));
    col = std::clamp(col, 0, cols_ - 1);
    row = std::clamp(row, 0, rows_ - 1);
    out = cells_[row][col];
}

} // namespace ltlmod

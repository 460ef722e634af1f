#include "ltlmod/oracle/finite_mdp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ltlmod {

using ordered_json = nlohmann::ordered_json;

void FiniteMdp::validate() const {
    if (num_states <= 0) throw std::invalid_argument("finite MDP needs at least one state");
    if (initial < 0 || initial >= num_states)
        throw std::invalid_argument("finite MDP initial state out of range");
    if (static_cast<int>(dist.size()) != num_states ||
        static_cast<int>(labels.size()) != num_states)
        throw std::invalid_argument("finite MDP tables do not match the state count");
    for (int s = 0; s < num_states; ++s) {
        if (static_cast<int>(dist[s].size()) != num_actions)
            throw std::invalid_argument("finite MDP action table ragged at state " +
                                        std::to_string(s));
        bool any = false;
        for (int a = 0; a < num_actions; ++a) {
            if (dist[s][a].empty()) continue;
            any = true;
            double sum = 0.0;
            for (const auto& [succ, p] : dist[s][a]) {
                if (succ < 0 || succ >= num_states)
                    throw std::invalid_argument("finite MDP successor out of range");
                if (p < 0.0) throw std::invalid_argument("negative transition probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument(
                    "transition row (" + std::to_string(s) + "," + std::to_string(a) +
                    ") sums to " + std::to_string(sum));
        }
        if (!any)
            throw std::invalid_argument("state " + std::to_string(s) + " has no actions");
    }
}

FiniteMdp finite_mdp_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed finite MDP file: ") + e.what());
    }
    FiniteMdp m;
    m.num_states = j.at("states").get<int>();
    m.num_actions = j.at("actions").get<int>();
    m.initial = j.at("initial").get<int>();
    m.dist.assign(m.num_states, std::vector<std::vector<std::pair<int, double>>>(
                                    m.num_actions));
    for (const auto& t : j.at("transitions")) {
        const int s = t.at("s").get<int>();
        const int a = t.at("a").get<int>();
        if (s < 0 || s >= m.num_states || a < 0 || a >= m.num_actions)
            throw std::invalid_argument("transition (s,a) out of range");
        std::vector<std::pair<int, double>> row;
        for (const auto& sp : t.at("dist"))
            row.emplace_back(sp.at(0).get<int>(), sp.at(1).get<double>());
        m.dist[s][a] = std::move(row);
    }
    for (const auto& ls : j.at("labels")) {
        std::vector<std::string> props;
        for (const auto& p : ls) props.push_back(p.get<std::string>());
        m.labels.push_back(std::move(props));
    }
    m.validate();
    return m;
}

FiniteMdp load_finite_mdp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open finite MDP file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return finite_mdp_from_json_text(ss.str());
}

std::string finite_mdp_to_json_text(const FiniteMdp& m) {
    ordered_json j;
    j["states"] = m.num_states;
    j["actions"] = m.num_actions;
    ordered_json trans = ordered_json::array();
    for (int s = 0; s < m.num_states; ++s)
        for (int a = 0; a < m.num_actions; ++a) {
            if (m.dist[s][a].empty()) continue;
            ordered_json row = ordered_json::array();
            for (const auto& [succ, p] : m.dist[s][a]) row.push_back({succ, p});
            trans.push_back({{"s", s}, {"a", a}, {"dist", std::move(row)}});
        }
    j["transitions"] = std::move(trans);
    j["labels"] = m.labels;
    j["initial"] = m.initial;
    return j.dump(2) + "\n";
}

} // namespace ltlmod

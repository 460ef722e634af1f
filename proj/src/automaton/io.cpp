#include "ltlmod/automaton/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ltlmod {

using ordered_json = nlohmann::ordered_json;

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

[[noreturn]] void fail(const std::string& msg) { throw AutomatonIoError(msg); }

int required_state(const Ldgba& a, const std::string& id, const std::string& where) {
    const int idx = a.state_index(id);
    if (idx < 0) fail("unknown state '" + id + "' in " + where);
    return idx;
}

} // namespace

Ldgba automaton_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("malformed automaton file: ") + e.what());
    }
    for (const char* key : {"alphabet", "states", "initial", "Q_D", "Q_N", "edges",
                            "eps_edges", "accepting_sets"})
        if (!j.contains(key)) fail(std::string("automaton file missing key '") + key + "'");

    Ldgba a;
    for (const auto& p : j.at("alphabet")) {
        const std::string name = p.get<std::string>();
        if (name.empty()) fail("empty proposition name in alphabet");
        if (a.alphabet.contains(name)) fail("duplicate proposition '" + name + "' in alphabet");
        a.alphabet.intern(name);
    }
    for (const auto& s : j.at("states")) {
        const std::string id = s.get<std::string>();
        if (a.state_index(id) >= 0) fail("duplicate state id '" + id + "'");
        a.states.push_back(id);
    }
    a.initial = required_state(a, j.at("initial").get<std::string>(), "initial");

    a.deterministic.assign(a.states.size(), 0);
    std::vector<char> seen(a.states.size(), 0);
    for (const auto& s : j.at("Q_D")) {
        const int q = required_state(a, s.get<std::string>(), "Q_D");
        a.deterministic[q] = 1;
        seen[q] = 1;
    }
    for (const auto& s : j.at("Q_N")) {
        const int q = required_state(a, s.get<std::string>(), "Q_N");
        if (seen[q] && a.deterministic[q])
            fail("state '" + a.states[q] + "' listed in both Q_D and Q_N");
        seen[q] = 1;
    }
    for (size_t q = 0; q < a.states.size(); ++q)
        if (!seen[q]) fail("state '" + a.states[q] + "' in neither Q_D nor Q_N");

    for (const auto& e : j.at("edges")) {
        const int src = required_state(a, e.at("src").get<std::string>(), "edges");
        const int dst = required_state(a, e.at("dst").get<std::string>(), "edges");
        Guard g;
        try {
            g = parse_guard(e.at("guard").get<std::string>(), a.alphabet);
        } catch (const GuardError& ge) {
            fail("bad guard '" + e.at("guard").get<std::string>() + "': " + ge.what());
        }
        a.edges.push_back({src, std::move(g), dst});
    }
    for (const auto& e : j.at("eps_edges")) {
        const int src = required_state(a, e.at("src").get<std::string>(), "eps_edges");
        const int dst = required_state(a, e.at("dst").get<std::string>(), "eps_edges");
        a.eps_edges.push_back({src, dst});
    }
    for (const auto& fs : j.at("accepting_sets")) {
        std::vector<int> set;
        for (const auto& s : fs) set.push_back(required_state(a, s.get<std::string>(), "accepting_sets"));
        a.accepting_sets.push_back(std::move(set));
    }

    a.finalize();
    const ValidationReport rep = validate(a);
    if (!rep.structurally_sound()) {
        std::string msg = "automaton fails validation:";
        for (const auto& v : rep.violations)
            if (v.clause != "deterministic-totality")
                msg += "\n  [" + v.clause + "] " + v.detail;
        fail(msg);
    }
    return a;
}

Ldgba load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open automaton file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return automaton_from_json_text(ss.str());
}

std::string automaton_to_json_text(const Ldgba& a) {
    ordered_json j;
    j["alphabet"] = a.alphabet.names;
    j["states"] = a.states;
    j["initial"] = a.states[a.initial];
    ordered_json qd = ordered_json::array(), qn = ordered_json::array();
    for (size_t q = 0; q < a.states.size(); ++q)
        (a.deterministic[q] ? qd : qn).push_back(a.states[q]);
    j["Q_D"] = std::move(qd);
    j["Q_N"] = std::move(qn);
    ordered_json edges = ordered_json::array();
    for (const auto& e : a.edges)
        edges.push_back({{"src", a.states[e.src]},
                         {"guard", print_guard(e.guard)},
                         {"dst", a.states[e.dst]}});
    j["edges"] = std::move(edges);
    ordered_json eps = ordered_json::array();
    for (const auto& e : a.eps_edges)
        eps.push_back({{"src", a.states[e.src]}, {"dst", a.states[e.dst]}});
    j["eps_edges"] = std::move(eps);
    ordered_json acc = ordered_json::array();
    for (const auto& fs : a.accepting_sets) {
        ordered_json set = ordered_json::array();
        for (int q : fs) set.push_back(a.states[q]);
        acc.push_back(std::move(set));
    }
    j["accepting_sets"] = std::move(acc);
    return j.dump(2) + "\n";
}

void save_automaton(const Ldgba& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot open for writing: " + path);
    out << automaton_to_json_text(a);
}

uint64_t automaton_hash(const Ldgba& a) {
    return fnv1a(automaton_to_json_text(a));
}

} // namespace ltlmod

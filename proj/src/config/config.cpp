#include "ltlmod/config/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ltlmod/automaton/io.hpp"
#include "ltlmod/automaton/ltl.hpp"

namespace ltlmod {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

uint64_t fnv1a_hash(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const ordered_json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

double num(const ordered_json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) fail("'" + key + "' must be a number");
    return obj.at(key).get<double>();
}

int integer(const ordered_json& obj, const std::string& key, int fallback,
            bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail("missing required key '" + key + "'");
        return fallback;
    }
    if (!obj.at(key).is_number_integer()) fail("'" + key + "' must be an integer");
    return obj.at(key).get<int>();
}

std::vector<double> pair_of(const ordered_json& obj, const std::string& key,
                            std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail("'" + key + "' must be a [x, y] number pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

EnvConfig parse_env(const ordered_json& e, const std::string& base_dir) {
    EnvConfig env;
    if (!e.contains("kind") || !e.at("kind").is_string()) fail("env.kind is required");
    env.kind = e.at("kind").get<std::string>();

    if (env.kind == "ballpass") {
        check_keys(e, "env",
                   {"kind", "dt", "gravity", "vmax", "action_low", "action_high", "start",
                    "start_jitter", "regions"});
        auto& p = env.ballpass;
        p.dt = num(e, "dt", p.dt);
        const auto g = pair_of(e, "gravity", {p.gx, p.gy});
        p.gx = g[0];
        p.gy = g[1];
        p.vmax = num(e, "vmax", p.vmax);
        p.action_lo = pair_of(e, "action_low", p.action_lo);
        p.action_hi = pair_of(e, "action_high", p.action_hi);
        const auto st = pair_of(e, "start", {p.start_x, p.start_y});
        p.start_x = st[0];
        p.start_y = st[1];
        p.start_jitter = num(e, "start_jitter", p.start_jitter);
        if (e.contains("regions")) {
            if (!e.at("regions").is_array()) fail("env.regions must be an array");
            p.regions.clear();
            for (const auto& r : e.at("regions")) {
                check_keys(r, "env.regions[]", {"prop", "center", "size"});
                if (!r.contains("prop") || !r.contains("center") || !r.contains("size"))
                    fail("each region needs prop, center and size");
                const auto c = pair_of(r, "center", {});
                const auto s = pair_of(r, "size", {});
                p.regions.push_back({r.at("prop").get<std::string>(), c[0] - s[0] / 2,
                                     c[1] - s[1] / 2, c[0] + s[0] / 2, c[1] + s[1] / 2});
            }
        }
    } else if (env.kind == "cartpole") {
        check_keys(e, "env",
                   {"kind", "dt", "force_max", "theta_fail", "x_fail", "init_range"});
        auto& p = env.cartpole;
        p.dt = num(e, "dt", p.dt);
        p.force_max = num(e, "force_max", p.force_max);
        p.theta_fail = num(e, "theta_fail", p.theta_fail);
        p.x_fail = num(e, "x_fail", p.x_fail);
        p.init_range = num(e, "init_range", p.init_range);
    } else if (env.kind == "labelgrid") {
        check_keys(e, "env",
                   {"kind", "grid", "D", "cell_size", "start", "start_jitter"});
        if (!e.contains("grid") || !e.at("grid").is_string())
            fail("env.grid (path to the label CSV) is required for labelgrid");
        env.grid_path = (fs::path(base_dir) / e.at("grid").get<std::string>()).string();
        auto& p = env.labelgrid;
        p.step_radius = num(e, "D", p.step_radius);
        p.cell_size = num(e, "cell_size", p.cell_size);
        const auto st = pair_of(e, "start", {p.start_x, p.start_y});
        p.start_x = st[0];
        p.start_y = st[1];
        p.start_jitter = num(e, "start_jitter", p.start_jitter);
    } else {
        fail("unknown env.kind '" + env.kind + "'");
    }
    return env;
}

} // namespace

ExperimentConfig config_from_json_text(const std::string& text, const std::string& base_dir) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& ex) {
        fail(std::string("not valid JSON: ") + ex.what());
    }
    check_keys(j, "top level", {"env", "automaton", "reward", "net", "train", "eval", "out"});
    for (const char* key : {"env", "automaton", "train"})
        if (!j.contains(key)) fail(std::string("missing required section '") + key + "'");

    ExperimentConfig cfg;
    cfg.env = parse_env(j.at("env"), base_dir);

    const auto& aut = j.at("automaton");
    check_keys(aut, "automaton", {"ltl", "file"});
    if (aut.contains("ltl") == aut.contains("file"))
        fail("automaton needs exactly one of 'ltl' or 'file'");
    if (aut.contains("ltl")) cfg.ltl = aut.at("ltl").get<std::string>();
    if (aut.contains("file"))
        cfg.automaton_file = (fs::path(base_dir) / aut.at("file").get<std::string>()).string();

    if (j.contains("reward")) {
        const auto& r = j.at("reward");
        check_keys(r, "reward", {"r_F", "gamma_F", "eta_Phi"});
        cfg.reward.r_f = num(r, "r_F", cfg.reward.r_f);
        cfg.reward.gamma_f = num(r, "gamma_F", cfg.reward.gamma_f);
        cfg.reward.eta_phi = num(r, "eta_Phi", cfg.reward.eta_phi);
    }
    cfg.reward.validate();

    if (j.contains("net")) {
        const auto& n = j.at("net");
        check_keys(n, "net", {"hidden", "actor_lr", "critic_lr", "tau"});
        if (n.contains("hidden")) {
            if (!n.at("hidden").is_array()) fail("net.hidden must be an array of layer widths");
            cfg.net.hidden.clear();
            for (const auto& h : n.at("hidden")) {
                if (!h.is_number_integer() || h.get<int>() <= 0)
                    fail("net.hidden entries must be positive integers");
                cfg.net.hidden.push_back(h.get<int>());
            }
        }
        cfg.net.actor_lr = num(n, "actor_lr", cfg.net.actor_lr);
        cfg.net.critic_lr = num(n, "critic_lr", cfg.net.critic_lr);
        cfg.net.tau = num(n, "tau", cfg.net.tau);
        if (cfg.net.tau <= 0.0 || cfg.net.tau > 1.0) fail("net.tau must lie in (0,1]");
    }

    {
        const auto& t = j.at("train");
        check_keys(t, "train",
                   {"episodes", "horizon", "minibatch", "buffer", "warmup", "noise_sigma0",
                    "noise_sigma1", "eval_every", "wall_clock", "seed"});
        cfg.train.episodes = integer(t, "episodes", 0, true);
        cfg.train.horizon = integer(t, "horizon", 0, true);
        cfg.train.minibatch = integer(t, "minibatch", cfg.train.minibatch);
        cfg.train.buffer = static_cast<size_t>(
            integer(t, "buffer", static_cast<int>(cfg.train.buffer)));
        cfg.train.warmup = integer(t, "warmup", cfg.train.warmup);
        cfg.train.noise_sigma0 = num(t, "noise_sigma0", cfg.train.noise_sigma0);
        cfg.train.noise_sigma1 = num(t, "noise_sigma1", cfg.train.noise_sigma1);
        cfg.train.eval_every = integer(t, "eval_every", cfg.train.eval_every);
        if (t.contains("wall_clock")) {
            if (!t.at("wall_clock").is_boolean()) fail("train.wall_clock must be a boolean");
            cfg.train.wall_clock = t.at("wall_clock").get<bool>();
        }
        if (t.contains("seed")) {
            if (!t.at("seed").is_number_integer()) fail("train.seed must be an integer");
            cfg.train.seed = t.at("seed").get<uint64_t>();
        }
        if (cfg.train.episodes < 0 || cfg.train.horizon <= 0 || cfg.train.minibatch <= 0 ||
            cfg.train.warmup < 0)
            fail("train sizes must be positive (episodes may be zero)");
    }

    if (j.contains("eval")) {
        const auto& e = j.at("eval");
        check_keys(e, "eval", {"runs", "horizon", "k"});
        cfg.eval.runs = integer(e, "runs", cfg.eval.runs);
        cfg.eval.horizon = integer(e, "horizon", cfg.eval.horizon);
        cfg.eval.k = integer(e, "k", cfg.eval.k);
        if (cfg.eval.k <= 0) fail("eval.k must be positive (k=0 would be vacuous success)");
    }
    if (cfg.eval.horizon <= 0) cfg.eval.horizon = cfg.train.horizon;

    if (j.contains("out")) {
        if (!j.at("out").is_string()) fail("'out' must be a path string");
        cfg.out_dir = (fs::path(base_dir) / j.at("out").get<std::string>()).string();
    } else {
        cfg.out_dir = (fs::path(base_dir) / "run_out").string();
    }

    cfg.net.minibatch = cfg.train.minibatch;
    cfg.net.buffer_capacity = cfg.train.buffer;

    if (const char* env_seed = std::getenv("LTLMODRL_SEED")) {
        try {
            cfg.train.seed = std::stoull(env_seed);
        } catch (...) {
            fail("LTLMODRL_SEED is not an integer");
        }
    }

    cfg.config_hash = fnv1a_hash(config_to_json_text(cfg));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str(), fs::path(path).parent_path().string());
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
    ordered_json j;
    ordered_json e;
    e["kind"] = cfg.env.kind;
    if (cfg.env.kind == "ballpass") {
        const auto& p = cfg.env.ballpass;
        e["dt"] = p.dt;
        e["gravity"] = {p.gx, p.gy};
        e["vmax"] = p.vmax;
        e["action_low"] = p.action_lo;
        e["action_high"] = p.action_hi;
        e["start"] = {p.start_x, p.start_y};
        e["start_jitter"] = p.start_jitter;
        ordered_json regions = ordered_json::array();
        for (const auto& r : p.regions)
            regions.push_back({{"prop", r.prop},
                               {"center", {(r.x0 + r.x1) / 2, (r.y0 + r.y1) / 2}},
                               {"size", {r.x1 - r.x0, r.y1 - r.y0}}});
        e["regions"] = std::move(regions);
    } else if (cfg.env.kind == "cartpole") {
        const auto& p = cfg.env.cartpole;
        e["dt"] = p.dt;
        e["force_max"] = p.force_max;
        e["theta_fail"] = p.theta_fail;
        e["x_fail"] = p.x_fail;
        e["init_range"] = p.init_range;
    } else {
        const auto& p = cfg.env.labelgrid;
        e["grid"] = cfg.env.grid_path;
        e["D"] = p.step_radius;
        e["cell_size"] = p.cell_size;
        e["start"] = {p.start_x, p.start_y};
        e["start_jitter"] = p.start_jitter;
    }
    j["env"] = std::move(e);
    ordered_json aut;
    if (cfg.ltl) aut["ltl"] = *cfg.ltl;
    if (cfg.automaton_file) aut["file"] = *cfg.automaton_file;
    j["automaton"] = std::move(aut);
    j["reward"] = {{"r_F", cfg.reward.r_f},
                   {"gamma_F", cfg.reward.gamma_f},
                   {"eta_Phi", cfg.reward.eta_phi}};
    j["net"] = {{"hidden", cfg.net.hidden},
                {"actor_lr", cfg.net.actor_lr},
                {"critic_lr", cfg.net.critic_lr},
                {"tau", cfg.net.tau}};
    j["train"] = {{"episodes", cfg.train.episodes},
                  {"horizon", cfg.train.horizon},
                  {"minibatch", cfg.train.minibatch},
                  {"buffer", cfg.train.buffer},
                  {"warmup", cfg.train.warmup},
                  {"noise_sigma0", cfg.train.noise_sigma0},
                  {"noise_sigma1", cfg.train.noise_sigma1},
                  {"eval_every", cfg.train.eval_every},
                  {"wall_clock", cfg.train.wall_clock},
                  {"seed", cfg.train.seed}};
    j["eval"] = {{"runs", cfg.eval.runs}, {"horizon", cfg.eval.horizon}, {"k", cfg.eval.k}};
    j["out"] = cfg.out_dir;
    return j.dump(2) + "\n";
}

std::unique_ptr<Env> make_env(const EnvConfig& cfg) {
    if (cfg.kind == "ballpass") return std::make_unique<BallPassEnv>(cfg.ballpass);
    if (cfg.kind == "cartpole") return std::make_unique<CartPoleEnv>(cfg.cartpole);
    if (cfg.kind == "labelgrid")
        return std::make_unique<LabelGridEnv>(LabelGridEnv::load(cfg.grid_path, cfg.labelgrid));
    throw ConfigError("config: unknown env kind '" + cfg.kind + "'");
}

Ldgba make_automaton(const ExperimentConfig& cfg) {
    if (cfg.ltl) return compile_ltl(parse_ltl(*cfg.ltl));
    return load_automaton(*cfg.automaton_file);
}

} // namespace ltlmod

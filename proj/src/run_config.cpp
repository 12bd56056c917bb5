#include "painrl/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace painrl {

namespace {

using nlohmann::json;

void reject_unknown(const json& block, const std::string& name,
                    const std::set<std::string>& allowed) {
    if (!block.is_object()) {
        throw ConfigError("'" + name + "' must be an object");
    }
    for (const auto& [key, value] : block.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + name + "." + key + "'");
        }
    }
}

template <typename T>
void read(const json& block, const char* key, T& out, const std::string& where) {
    if (!block.contains(key)) return;
    try {
        out = block.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("'" + where + "." + key + "' has the wrong type");
    }
}

std::vector<double> read_values(const json& block, const char* key,
                                std::vector<double> fallback) {
    if (!block.contains(key)) return fallback;
    try {
        return block.at(key).get<std::vector<double>>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("'space.") + key + "' must be a list of numbers");
    }
}

PainCondition pain_from(const std::string& name) {
    const auto p = parse_pain_condition(name);
    if (!p) throw ConfigError("unknown pain model '" + name + "'");
    return *p;
}

}  // namespace

EnvironmentConfig environment_preset(const std::string& kind) {
    if (kind == "stationary") return EnvironmentConfig::stationary();
    if (kind == "non_stationary") return EnvironmentConfig::non_stationary();
    throw ConfigError("unknown environment kind '" + kind + "'");
}

void RunConfigDocument::validate() const {
    try {
        environment.validate();
        agent.validate();
        if (space) space->validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (double w : {weights.w1, weights.w2, weights.w3, weights.w4}) {
        if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("reward weights must be in [0,1]");
    }
    if (weights.w3 > 0.0 && !(weights.rho > 0.0 && weights.rho <= 1.0)) {
        throw ConfigError("rho must be in (0,1] when w3 > 0");
    }
    if (execution.n < 1) throw ConfigError("execution.n must be at least 1");
    if (execution.workers < 0) throw ConfigError("execution.workers must be >= 0");
}

RunConfigDocument parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(doc, "document",
                   {"environment", "agent", "reward", "execution", "space"});

    RunConfigDocument cfg;
    if (doc.contains("environment")) {
        const json& env = doc["environment"];
        reject_unknown(env, "environment",
                       {"kind", "lifetime", "relocation_period", "grid_size", "food_reward"});
        std::string kind = "stationary";
        read(env, "kind", kind, "environment");
        cfg.environment = environment_preset(kind);
        read(env, "lifetime", cfg.environment.lifetime, "environment");
        read(env, "grid_size", cfg.environment.grid_size, "environment");
        read(env, "food_reward", cfg.environment.food_reward, "environment");
        if (env.contains("relocation_period")) {
            if (env["relocation_period"].is_null()) {
                cfg.environment.relocation_period.reset();
            } else {
                int period = 0;
                read(env, "relocation_period", period, "environment");
                cfg.environment.relocation_period = period;
            }
        }
    }
    if (doc.contains("agent")) {
        const json& agent = doc["agent"];
        reject_unknown(agent, "agent", {"alpha", "epsilon", "gamma"});
        read(agent, "alpha", cfg.agent.alpha, "agent");
        read(agent, "epsilon", cfg.agent.epsilon, "agent");
        read(agent, "gamma", cfg.agent.gamma, "agent");
    }
    if (doc.contains("reward")) {
        const json& reward = doc["reward"];
        reject_unknown(reward, "reward", {"w1", "w2", "w3", "w4", "rho", "pain"});
        read(reward, "w1", cfg.weights.w1, "reward");
        read(reward, "w2", cfg.weights.w2, "reward");
        read(reward, "w3", cfg.weights.w3, "reward");
        read(reward, "w4", cfg.weights.w4, "reward");
        read(reward, "rho", cfg.weights.rho, "reward");
        std::string pain = "none";
        read(reward, "pain", pain, "reward");
        cfg.pain = pain_from(pain);
    }
    if (doc.contains("execution")) {
        const json& exec = doc["execution"];
        reject_unknown(exec, "execution", {"n", "seed_base", "workers", "output"});
        read(exec, "n", cfg.execution.n, "execution");
        read(exec, "seed_base", cfg.execution.seed_base, "execution");
        read(exec, "workers", cfg.execution.workers, "execution");
        read(exec, "output", cfg.execution.output, "execution");
    }
    if (doc.contains("space")) {
        const json& sp = doc["space"];
        reject_unknown(sp, "space", {"weights", "rho", "alpha", "epsilon", "pain"});
        const SearchSpace full = SearchSpace::full();
        SearchSpace space;
        space.weight_values = read_values(sp, "weights", full.weight_values);
        space.rho_values = read_values(sp, "rho", full.rho_values);
        space.alpha_values = read_values(sp, "alpha", full.alpha_values);
        space.epsilon_values = read_values(sp, "epsilon", full.epsilon_values);
        space.pain_conditions = full.pain_conditions;
        if (sp.contains("pain")) {
            std::vector<std::string> names;
            read(sp, "pain", names, "space");
            space.pain_conditions.clear();
            for (const auto& name : names) space.pain_conditions.push_back(pain_from(name));
        }
        cfg.space = std::move(space);
    }
    cfg.validate();
    return cfg;
}

RunConfigDocument load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace painrl

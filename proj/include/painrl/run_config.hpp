#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "painrl/agent.hpp"
#include "painrl/experiment.hpp"
#include "painrl/gridworld.hpp"

namespace painrl {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExecutionSettings {
    int n = 300;
    std::uint64_t seed_base = 0;
    int workers = 0;
    std::string output;
};

/// The JSON run document:
///
///   {
///     "environment": {"kind": "stationary" | "non_stationary",
///                     "lifetime": 2500, "relocation_period": null,
///                     "grid_size": 7, "food_reward": 1.0},
///     "agent":       {"alpha": 0.9, "epsilon": 0.1, "gamma": 0.99},
///     "reward":      {"w1": 0.9, "w2": 0, "w3": 0, "w4": 0, "rho": 1.0,
///                     "pain": "none"},
///     "execution":   {"n": 300, "seed_base": 0, "workers": 0,
///                     "output": "out.csv"},
///     "space":       {"weights": [...], "rho": [...], "alpha": [...],
///                     "epsilon": [...], "pain": ["none", ...]}
///   }
///
/// Every block and key is optional; "kind" picks the environment defaults
/// and the remaining keys override them. Unknown keys are rejected.
struct RunConfigDocument {
    EnvironmentConfig environment = EnvironmentConfig::stationary();
    AgentConfig agent{0.1, 0.01, kDefaultGamma};
    RewardWeights weights;
    PainCondition pain = PainCondition::None;
    ExecutionSettings execution;
    std::optional<SearchSpace> space;

    RewardFunctionConfig reward_config() const {
        return RewardFunctionConfig{weights, pain, agent.alpha, agent.epsilon};
    }

    /// Throws ConfigError if any block is inconsistent.
    void validate() const;
};

/// Throws ConfigError on malformed JSON, wrong types or unknown keys.
RunConfigDocument parse_run_config(const std::string& json_text);
RunConfigDocument load_run_config(const std::string& path);

/// "stationary" or "non_stationary"; throws ConfigError otherwise.
EnvironmentConfig environment_preset(const std::string& kind);

}  // namespace painrl

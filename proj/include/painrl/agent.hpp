#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "painrl/gridworld.hpp"
#include "painrl/pain_model.hpp"
#include "painrl/rng.hpp"
#include "painrl/subjective_reward.hpp"

namespace painrl {

struct AgentConfig {
    double alpha = 0.1;
    double epsilon = 0.01;
    double gamma = 0.99;

    void validate() const;
};

/// Tabular action values, one row of kActionCount entries per grid cell,
/// zero-initialized.
class QTable {
public:
    explicit QTable(int state_count)
        : values_(static_cast<std::size_t>(state_count) * kActionCount, 0.0) {}

    int state_count() const {
        return static_cast<int>(values_.size() / kActionCount);
    }

    std::span<const double, kActionCount> row(int state) const {
        return std::span<const double, kActionCount>(
            values_.data() + static_cast<std::size_t>(state) * kActionCount,
            kActionCount);
    }

    double& at(int state, Action a) {
        return values_[static_cast<std::size_t>(state) * kActionCount +
                       static_cast<std::size_t>(a)];
    }
    double at(int state, Action a) const {
        return values_[static_cast<std::size_t>(state) * kActionCount +
                       static_cast<std::size_t>(a)];
    }

    double max_value(int state) const;

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::vector<double> values_;
};

/// Relative gap below which two action values count as tied. Symmetric
/// states accumulate different rounding depending on the reward scale, so
/// exact comparison would let the scale leak into the greedy choice.
inline constexpr double kTieTolerance = 1e-9;

/// Epsilon-greedy choice. Always consumes exactly two draws from `rng`:
/// one for the explore/exploit coin and one for the uniform pick among
/// all actions (explore) or among the maximizing actions (exploit).
Action select_action(std::span<const double, kActionCount> q_row,
                     double epsilon, Rng& rng);

/// Q(s,a) += alpha * (reward + gamma * max_a' Q(s',a') - Q(s,a)).
void q_update(QTable& q, int state, Action action, double reward,
              int next_state, const AgentConfig& cfg);

struct StepRecord {
    int t = 0;
    Position state;
    Action action = Action::Stay;
    Position next_state;
    double objective = 0.0;
    double f_h = 0.0;
    Observation observation = Observation::Harmless;
    double p_pain = 0.0;
    double subjective_pain = 0.0;
    double f_w = 0.0;
    double cum_objective = 0.0;
    double cum_f_w = 0.0;
};

struct LifetimeHistory {
    std::vector<StepRecord> records;
    /// Cumulative objective reward: number of steps spent on the food.
    long cor = 0;
    double cum_f_w = 0.0;
};

/// Environment and policy streams derived from one trial seed. They are
/// kept apart so the food schedule does not depend on the agent's choices.
std::uint64_t environment_seed(std::uint64_t trial_seed);
std::uint64_t policy_seed(std::uint64_t trial_seed);

/// Runs one continuous lifetime. Per step: relocate food if scheduled,
/// choose an action from Q(s), move, form happiness from the pre-update
/// table, filter the pain belief (when a model is given), subtract the
/// weighted belief and learn from the resulting well-being.
///
/// With `keep_records` false only the summary fields are filled.
LifetimeHistory run_lifetime(const EnvironmentConfig& env_cfg,
                             const AgentConfig& agent_cfg,
                             const RewardWeights& weights,
                             const std::optional<PainModelParams>& pain,
                             std::uint64_t seed, bool keep_records = true);

}  // namespace painrl

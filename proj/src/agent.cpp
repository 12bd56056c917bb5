#include "painrl/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace painrl {

void AgentConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must be in [0,1]");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must be in [0,1]");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("gamma must be in (0,1]");
    }
}

double QTable::max_value(int state) const {
    const auto r = row(state);
    return *std::max_element(r.begin(), r.end());
}

Action select_action(std::span<const double, kActionCount> q_row,
                     double epsilon, Rng& rng) {
    const bool explore = rng.uniform01() < epsilon;
    if (explore) {
        return kAllActions[rng.uniform_index(kActionCount)];
    }
    const double best = *std::max_element(q_row.begin(), q_row.end());
    double scale = 0.0;
    for (double v : q_row) scale = std::max(scale, std::abs(v));
    const double slack = kTieTolerance * scale;
    std::array<Action, kActionCount> ties{};
    std::uint32_t n = 0;
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (best - q_row[i] <= slack) ties[n++] = kAllActions[i];
    }
    return ties[rng.uniform_index(n)];
}

void q_update(QTable& q, int state, Action action, double reward,
              int next_state, const AgentConfig& cfg) {
    double& value = q.at(state, action);
    value += cfg.alpha * (reward + cfg.gamma * q.max_value(next_state) - value);
}

std::uint64_t environment_seed(std::uint64_t trial_seed) {
    return mix64(trial_seed, 0x656e7669726f6eULL);
}

std::uint64_t policy_seed(std::uint64_t trial_seed) {
    return mix64(trial_seed, 0x706f6c696379ULL);
}

LifetimeHistory run_lifetime(const EnvironmentConfig& env_cfg,
                             const AgentConfig& agent_cfg,
                             const RewardWeights& weights,
                             const std::optional<PainModelParams>& pain,
                             std::uint64_t seed, bool keep_records) {
    agent_cfg.validate();
    if (pain) pain->validate();

    Gridworld env(env_cfg, environment_seed(seed));
    Rng policy_rng(policy_seed(seed));
    QTable q(env_cfg.cell_count());
    Belief belief = pain ? belief_init(*pain) : Belief{0.0};

    LifetimeHistory history;
    if (keep_records) history.records.reserve(static_cast<std::size_t>(env_cfg.lifetime));

    double cum_objective = 0.0;
    double cum_f_w = 0.0;
    while (!env.done()) {
        env.maybe_relocate();
        const int t = env.state().t;
        const Position from = env.state().agent;
        const int s = env_cfg.state_index(from);

        const Action a = select_action(q.row(s), agent_cfg.epsilon, policy_rng);
        const double r = env.apply_action(a);
        const Position to = env.state().agent;
        const int s_next = env_cfg.state_index(to);

        const HappinessTerms terms{
            r,
            expect_term(r, q.at(s, a), q.max_value(s_next), agent_cfg.gamma),
            compare_term(r, weights.rho),
        };
        const double f_h = happiness(weights, terms);
        const Observation obs = observation_from_happiness(f_h);
        if (pain) belief = belief_update(belief, obs, *pain);
        const double subjective_pain = pain ? weights.w4 * belief.p_pain : 0.0;
        const double f_w = well_being(f_h, pain ? belief.p_pain : 0.0, weights.w4);

        q_update(q, s, a, f_w, s_next, agent_cfg);

        cum_objective += r;
        cum_f_w += f_w;
        if (r > 0.0) ++history.cor;
        if (keep_records) {
            history.records.push_back(StepRecord{
                t, from, a, to, r, f_h, obs, pain ? belief.p_pain : 0.0,
                subjective_pain, f_w, cum_objective, cum_f_w});
        }
    }
    history.cum_f_w = cum_f_w;
    return history;
}

}  // namespace painrl

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "painrl/agent.hpp"
#include "painrl/gridworld.hpp"
#include "painrl/pain_model.hpp"
#include "painrl/stats.hpp"
#include "painrl/subjective_reward.hpp"

namespace painrl {

inline constexpr double kDefaultGamma = 0.99;

/// Aspiration placeholder stored when w3 == 0 (the Compare term is inactive).
/// Valid aspiration levels are strictly positive, so 0 is unambiguous.
inline constexpr double kNoAspiration = 0.0;

struct SearchSpace {
    std::vector<double> weight_values;
    std::vector<double> rho_values;
    std::vector<double> alpha_values;
    std::vector<double> epsilon_values;
    std::vector<PainCondition> pain_conditions;

    /// The published grid: 7 weights, 8 aspiration levels, 5 learning rates,
    /// 2 exploration rates and all three pain conditions.
    static SearchSpace full();

    /// Throws std::invalid_argument unless each list is sorted, duplicate-free
    /// and inside its domain.
    void validate() const;
};

/// One subjective reward function: a point of the search space.
struct RewardFunctionConfig {
    RewardWeights weights;
    PainCondition pain = PainCondition::None;
    double alpha = 0.1;
    double epsilon = 0.01;

    /// Inactive parameters collapsed: rho -> kNoAspiration when w3 == 0 and
    /// (pain, w4) -> (None, 0) when either is inactive.
    RewardFunctionConfig canonical() const;

    RewardCategory category() const { return category_of(weights); }
    AgentConfig agent_config(double gamma = kDefaultGamma) const {
        return AgentConfig{alpha, epsilon, gamma};
    }

    /// Ordering used for every emitted file: category, pain, then the
    /// numeric fields.
    friend std::strong_ordering operator<=>(const RewardFunctionConfig& a,
                                            const RewardFunctionConfig& b);
    friend bool operator==(const RewardFunctionConfig& a,
                           const RewardFunctionConfig& b) {
        return (a <=> b) == 0;
    }
};

/// Canonical configs of the space, sorted and duplicate-free.
std::vector<RewardFunctionConfig> enumerate_configs(const SearchSpace& space);

struct BatchResult {
    RewardFunctionConfig config;
    /// Per-trial cumulative objective reward. May be empty when the result
    /// was loaded from a summary file.
    std::vector<double> cors;
    int n = 0;
    double mean = 0.0;
    double sd = 0.0;
    std::uint64_t seed_base = 0;
};

/// Seed of trial `index`. Depends only on (seed_base, index), never on the
/// config, so trial i of every config faces the same environment.
std::uint64_t trial_seed(std::uint64_t seed_base, std::uint64_t index);

BatchResult run_batch(const RewardFunctionConfig& config,
                      const EnvironmentConfig& env_cfg, int n,
                      std::uint64_t seed_base, double gamma = kDefaultGamma);

/// Runs `run_batch` for every config on `workers` threads (0 = hardware
/// concurrency). `on_result` is called once per config, serialized, in
/// completion order.
void run_batches(std::span<const RewardFunctionConfig> configs,
                 const EnvironmentConfig& env_cfg, int n,
                 std::uint64_t seed_base, int workers,
                 const std::function<void(BatchResult)>& on_result,
                 double gamma = kDefaultGamma);

inline constexpr double kSignificanceLevel = 0.05;

struct ReportRow {
    BatchResult best;
    /// Test against the same-category no-pain best; empty for the baseline
    /// row itself, when the baseline is missing, or when the two CORs
    /// vectors are identical.
    std::optional<stats::TTestResult> test;
    bool significant = false;
    bool missing_baseline = false;
};

/// Supplies per-trial CORs for results that were loaded without them.
using CorsProvider = std::function<std::vector<double>(const BatchResult&)>;

/// Best config (highest mean COR, earliest canonical key on ties) for each
/// reported (category, pain) pair, in (category, pain) order, with a
/// one-sided paired t-test against the no-pain best of the same category.
std::vector<ReportRow> best_per_subcategory(std::span<const BatchResult> results,
                                            const CorsProvider& cors = {});

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> sd;
};

struct TraceAggregate {
    std::vector<int> t;
    SeriesStats objective;
    SeriesStats f_w;
    SeriesStats subjective_pain;
    SeriesStats cum_f_w;
};

/// Per-step mean and sample SD across histories of equal length.
TraceAggregate aggregate_traces(std::span<const LifetimeHistory> histories);

struct Histogram {
    std::vector<double> edges;  // bin_count + 1 entries
    std::vector<int> counts;
};

/// Equal-width histogram of mean COR over [min, max] of the selected
/// subcategory. The last bin is closed on the right.
Histogram histogram(std::span<const BatchResult> results, RewardCategory category,
                    PainCondition pain, int bin_count);

/// A best-agent row as published for one environment.
struct PublishedRow {
    RewardFunctionConfig config;
    double mean = 0.0;
    double sd = 0.0;
    bool significant = false;
};

/// The 21 published rows for the stationary or non-stationary table.
std::vector<PublishedRow> published_table(bool stationary);

}  // namespace painrl

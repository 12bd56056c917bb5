#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <vector>

#include "painrl/experiment.hpp"

using namespace painrl;

namespace {

// Full Cartesian product, canonicalized afterwards.
std::set<RewardFunctionConfig> brute_force_configs(const SearchSpace& s) {
    std::set<RewardFunctionConfig> out;
    for (double w1 : s.weight_values)
        for (double w2 : s.weight_values)
            for (double w3 : s.weight_values)
                for (double w4 : s.weight_values)
                    for (double rho : s.rho_values)
                        for (auto pain : s.pain_conditions)
                            for (double alpha : s.alpha_values)
                                for (double eps : s.epsilon_values) {
                                    RewardFunctionConfig c{{w1, w2, w3, w4, rho}, pain, alpha, eps};
                                    out.insert(c.canonical());
                                }
    return out;
}

BatchResult fake_result(RewardFunctionConfig c, std::vector<double> cors) {
    BatchResult r;
    r.config = c.canonical();
    r.n = static_cast<int>(cors.size());
    r.mean = stats::mean(cors);
    r.sd = stats::sample_sd(cors);
    r.cors = std::move(cors);
    return r;
}

}  // namespace

TEST(Enumerate, FullSpaceCount) {
    EXPECT_EQ(enumerate_configs(SearchSpace::full()).size(), 312130u);
    EXPECT_EQ(2401u * 13u * 5u * 2u, 312130u);
}

TEST(Enumerate, ReducedSpaceByHand) {
    SearchSpace s;
    s.weight_values = {0.0, 1.0};
    s.rho_values = {0.5};
    s.alpha_values = {0.1};
    s.epsilon_values = {0.01};
    s.pain_conditions = {PainCondition::None, PainCondition::Normal, PainCondition::Chronic};
    // 8 weight patterns x {none, normal w4=1, chronic w4=1}
    EXPECT_EQ(enumerate_configs(s).size(), 24u);
}

TEST(Enumerate, MatchesProductThenDedup) {
    std::vector<SearchSpace> spaces;
    SearchSpace a;
    a.weight_values = {0.0, 0.5, 1.0};
    a.rho_values = {0.1, 1.0};
    a.alpha_values = {0.3, 0.9};
    a.epsilon_values = {0.01, 0.1};
    a.pain_conditions = {PainCondition::None, PainCondition::Normal, PainCondition::Chronic};
    spaces.push_back(a);
    SearchSpace b = a;
    b.weight_values = {0.0, 0.1, 0.3, 0.7};
    b.rho_values = {0.05, 0.3, 0.9};
    b.pain_conditions = {PainCondition::None, PainCondition::Chronic};
    spaces.push_back(b);
    SearchSpace c = a;
    c.weight_values = {0.2, 0.4};  // no zero weight at all
    c.pain_conditions = {PainCondition::Normal};
    spaces.push_back(c);

    for (const auto& space : spaces) {
        const auto fast = enumerate_configs(space);
        const auto slow = brute_force_configs(space);
        ASSERT_EQ(fast.size(), slow.size());
        EXPECT_TRUE(std::equal(fast.begin(), fast.end(), slow.begin()));
        EXPECT_TRUE(std::is_sorted(fast.begin(), fast.end()));
        for (const auto& cfg : fast) EXPECT_EQ(cfg.canonical(), cfg);
    }
}

TEST(Enumerate, CountFormulaForCollapseRules) {
    SearchSpace s = SearchSpace::full();
    s.alpha_values = {0.5};
    s.epsilon_values = {0.1};
    EXPECT_EQ(enumerate_configs(s).size(), 2401u * 13u);
}

TEST(Enumerate, RejectsUnsortedSpace) {
    SearchSpace s = SearchSpace::full();
    s.alpha_values = {0.5, 0.1};
    EXPECT_THROW(enumerate_configs(s), std::invalid_argument);
    s = SearchSpace::full();
    s.rho_values = {0.0, 0.5};
    EXPECT_THROW(enumerate_configs(s), std::invalid_argument);
}

TEST(Canonical, CollapsesInactiveParameters) {
    const RewardFunctionConfig c{{0.1, 0.0, 0.0, 0.7, 0.3}, PainCondition::None, 0.5, 0.1};
    const auto k = c.canonical();
    EXPECT_EQ(k.weights.w4, 0.0);
    EXPECT_EQ(k.weights.rho, kNoAspiration);
    const RewardFunctionConfig d{{0.1, 0.0, 0.0, 0.0, 0.3}, PainCondition::Chronic, 0.5, 0.1};
    EXPECT_EQ(d.canonical().pain, PainCondition::None);
    const RewardFunctionConfig e{{0.0, 0.0, 0.3, 0.5, 0.3}, PainCondition::Normal, 0.5, 0.1};
    EXPECT_EQ(e.canonical(), e);
}

TEST(RunBatch, SizeAndDeterminism) {
    const RewardFunctionConfig c{{0.1, 0.3, 0.0, 0.5, kNoAspiration}, PainCondition::Normal, 0.3, 0.01};
    const auto a = run_batch(c, EnvironmentConfig::stationary(), 12, 7);
    const auto b = run_batch(c, EnvironmentConfig::stationary(), 12, 7);
    EXPECT_EQ(a.cors.size(), 12u);
    EXPECT_EQ(a.cors, b.cors);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.sd, b.sd);
    EXPECT_NEAR(a.mean, stats::mean(a.cors), 1e-12);
    EXPECT_NEAR(a.sd, stats::sample_sd(a.cors), 1e-12);
    EXPECT_THROW(run_batch(c, EnvironmentConfig::stationary(), 0, 7), std::invalid_argument);
}

TEST(RunBatch, TrialsArePairedAcrossConfigs) {
    // Trial seeds ignore the config, so every config sees the same food schedule.
    for (std::uint64_t i = 0; i < 20; ++i) {
        Gridworld a(EnvironmentConfig::non_stationary(), environment_seed(trial_seed(5, i)));
        Gridworld b(EnvironmentConfig::non_stationary(), environment_seed(trial_seed(5, i)));
        while (!a.done()) {
            a.maybe_relocate();
            b.maybe_relocate();
            ASSERT_EQ(a.state().food, b.state().food);
            a.apply_action(Action::Up);
            b.apply_action(Action::Left);
        }
    }
}

TEST(RunBatch, ObjectiveOnlyScaleInvariant) {
    const RewardFunctionConfig low{{0.1, 0, 0, 0, kNoAspiration}, PainCondition::None, 0.9, 0.1};
    const RewardFunctionConfig high{{0.9, 0, 0, 0, kNoAspiration}, PainCondition::None, 0.9, 0.1};
    EXPECT_EQ(run_batch(low, EnvironmentConfig::non_stationary(), 30, 3).cors,
              run_batch(high, EnvironmentConfig::non_stationary(), 30, 3).cors);
}

TEST(RunBatches, ParallelMatchesSequential) {
    SearchSpace s;
    s.weight_values = {0.0, 0.5};
    s.rho_values = {0.5};
    s.alpha_values = {0.5};
    s.epsilon_values = {0.1};
    s.pain_conditions = {PainCondition::None, PainCondition::Chronic};
    const auto configs = enumerate_configs(s);
    std::vector<BatchResult> parallel;
    run_batches(configs, EnvironmentConfig::stationary(), 3, 11, 4,
                [&](BatchResult r) { parallel.push_back(std::move(r)); });
    ASSERT_EQ(parallel.size(), configs.size());
    for (const auto& r : parallel) {
        EXPECT_EQ(r.cors, run_batch(r.config, EnvironmentConfig::stationary(), 3, 11).cors);
    }
}

TEST(BestPerSubcategory, PicksMaxAndStars) {
    const RewardFunctionConfig base{{0.5, 0, 0, 0, kNoAspiration}, PainCondition::None, 0.1, 0.1};
    const RewardFunctionConfig worse_base{{0.3, 0, 0, 0, kNoAspiration}, PainCondition::None, 0.1, 0.1};
    const RewardFunctionConfig normal{{0.5, 0, 0, 0.5, kNoAspiration}, PainCondition::Normal, 0.1, 0.1};
    const RewardFunctionConfig chronic{{0.5, 0, 0, 0.5, kNoAspiration}, PainCondition::Chronic, 0.1, 0.1};
    const RewardFunctionConfig inactive{{0, 0, 0, 0.5, kNoAspiration}, PainCondition::Chronic, 0.1, 0.1};
    const RewardFunctionConfig lonely{{0, 0.5, 0, 0.5, kNoAspiration}, PainCondition::Normal, 0.1, 0.1};
    std::vector<BatchResult> results{
        fake_result(worse_base, {1, 1, 2, 2}),
        fake_result(base, {10, 12, 11, 13}),
        fake_result(normal, {20, 21, 23, 22}),       // clearly better
        fake_result(chronic, {11, 11, 12, 12.5}),    // marginal
        fake_result(inactive, {999, 999, 999, 999}), // NoneActive, never reported
        fake_result(lonely, {5, 6, 7, 8}),           // no baseline in its category
    };
    const auto rows = best_per_subcategory(results);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].best.config, base);
    EXPECT_FALSE(rows[0].test.has_value());
    EXPECT_EQ(rows[1].best.config, normal);
    ASSERT_TRUE(rows[1].test.has_value());
    EXPECT_LT(rows[1].test->p_value, 0.05);
    EXPECT_TRUE(rows[1].significant);
    EXPECT_EQ(rows[2].best.config, chronic);
    ASSERT_TRUE(rows[2].test.has_value());
    EXPECT_EQ(rows[2].significant, rows[2].test->p_value < 0.05);
    EXPECT_EQ(rows[3].best.config, lonely);
    EXPECT_TRUE(rows[3].missing_baseline);
    EXPECT_FALSE(rows[3].significant);
}

TEST(BestPerSubcategory, RerunsMissingCors) {
    const RewardFunctionConfig base{{0.5, 0, 0, 0, kNoAspiration}, PainCondition::None, 0.1, 0.1};
    const RewardFunctionConfig normal{{0.5, 0, 0, 0.5, kNoAspiration}, PainCondition::Normal, 0.1, 0.1};
    auto a = fake_result(base, {1, 2, 3});
    auto b = fake_result(normal, {4, 6, 5});
    a.cors.clear();
    b.cors.clear();
    int calls = 0;
    const std::vector<BatchResult> results{a, b};
    const auto rows = best_per_subcategory(results, [&](const BatchResult& r) {
        ++calls;
        return r.config.pain == PainCondition::None ? std::vector<double>{1, 2, 3}
                                                    : std::vector<double>{4, 6, 5};
    });
    EXPECT_EQ(calls, 2);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_TRUE(rows[1].significant);
    EXPECT_THROW(best_per_subcategory(results), std::invalid_argument);
}

TEST(AggregateTraces, SingleHistoryHasZeroSd) {
    const auto h = run_lifetime(EnvironmentConfig::stationary(), {0.5, 0.1, 0.99},
                                {0.5, 0, 0, 0.5, 1}, normal_pain_params(), 1);
    const std::vector<LifetimeHistory> one{h};
    const auto agg = aggregate_traces(one);
    ASSERT_EQ(agg.t.size(), 2500u);
    for (double v : agg.cum_f_w.sd) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(agg.f_w.mean[10], h.records[10].f_w);
}

TEST(AggregateTraces, MeanAndSdAcrossHistories) {
    std::vector<LifetimeHistory> hs;
    for (std::uint64_t s = 0; s < 4; ++s) {
        hs.push_back(run_lifetime(EnvironmentConfig::stationary(), {0.5, 0.1, 0.99},
                                  {0.5, 0, 0, 0.5, 1}, chronic_pain_params(), s));
    }
    const auto agg = aggregate_traces(hs);
    for (std::size_t t : {0u, 100u, 2499u}) {
        std::vector<double> xs;
        for (const auto& h : hs) xs.push_back(h.records[t].cum_f_w);
        EXPECT_NEAR(agg.cum_f_w.mean[t], stats::mean(xs), 1e-9);
        EXPECT_NEAR(agg.cum_f_w.sd[t], stats::sample_sd(xs), 1e-9);
    }
    hs.back().records.pop_back();
    EXPECT_THROW(aggregate_traces(hs), std::invalid_argument);
}

TEST(Histogram, CountsAndEdges) {
    std::vector<BatchResult> results;
    for (int i = 0; i < 10; ++i) {
        const double w1 = 0.1 * (i + 1);
        results.push_back(fake_result({{w1, 0.3, 0, 0.5, kNoAspiration}, PainCondition::Normal, 0.1, 0.1},
                                      {100.0 + i * i, 100.0 + i * i}));
    }
    results.push_back(fake_result({{0.2, 0.3, 0, 0.5, kNoAspiration}, PainCondition::Chronic, 0.1, 0.1},
                                  {7, 7}));
    const auto h = histogram(results, RewardCategory::ObjectiveExpect, PainCondition::Normal, 4);
    ASSERT_EQ(h.edges.size(), 5u);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0), 10);
    EXPECT_EQ(h.edges.front(), 100.0);
    EXPECT_EQ(h.edges.back(), 181.0);
    for (std::size_t i = 1; i < h.edges.size(); ++i) {
        EXPECT_NEAR(h.edges[i] - h.edges[i - 1], 81.0 / 4, 1e-12);
    }
    // 100,101,104,109,116 | 125,136 | 149 | 164,181
    EXPECT_EQ(h.counts, (std::vector<int>{5, 2, 1, 2}));

    const auto single = histogram(results, RewardCategory::ObjectiveExpect, PainCondition::Chronic, 3);
    EXPECT_EQ(std::accumulate(single.counts.begin(), single.counts.end(), 0), 1);
    EXPECT_EQ(std::count_if(single.counts.begin(), single.counts.end(), [](int c) { return c > 0; }), 1);

    const auto empty = histogram(results, RewardCategory::All, PainCondition::None, 3);
    EXPECT_TRUE(empty.counts.empty());
    EXPECT_THROW(histogram(results, RewardCategory::All, PainCondition::None, 0), std::invalid_argument);
}

TEST(PublishedTables, TwentyOneRowsPerTable) {
    for (bool stationary : {true, false}) {
        const auto rows = published_table(stationary);
        ASSERT_EQ(rows.size(), 21u);
        std::set<std::pair<RewardCategory, PainCondition>> keys;
        for (const auto& r : rows) {
            keys.insert({r.config.category(), r.config.pain});
            EXPECT_EQ(r.config.canonical(), r.config);
        }
        EXPECT_EQ(keys.size(), 21u);
    }
    EXPECT_EQ(published_table(true)[0].mean, 1858.6);
    EXPECT_EQ(published_table(false)[2].mean, 4142.5);
}

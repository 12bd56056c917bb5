#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "painrl/gridworld.hpp"
#include "painrl/rng.hpp"

using namespace painrl;

namespace {

bool in_bounds(const EnvironmentConfig& cfg, Position p) {
    return p.col >= 0 && p.col < cfg.grid_size && p.row >= 0 && p.row < cfg.grid_size;
}

bool is_corner(const EnvironmentConfig& cfg, Position p) {
    for (auto c : corner_positions(cfg)) {
        if (c == p) return true;
    }
    return false;
}

// Walks the agent from (0,0) onto `target` along the bottom row, then up.
void walk_to(Gridworld& env, Position target) {
    while (env.state().agent.col < target.col) env.apply_action(Action::Right);
    while (env.state().agent.row < target.row) env.apply_action(Action::Up);
}

}  // namespace

TEST(Gridworld, SpawnsBottomLeftWithFoodOnAnotherCorner) {
    const auto cfg = EnvironmentConfig::stationary();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Gridworld env(cfg, seed);
        EXPECT_EQ(env.state().agent, (Position{0, 0}));
        EXPECT_EQ(env.state().t, 0);
        EXPECT_TRUE(is_corner(cfg, env.state().food));
        EXPECT_NE(env.state().food, (Position{0, 0}));
    }
}

TEST(Gridworld, SameSeedSameFood) {
    for (std::uint64_t seed : {1ULL, 42ULL, 123456789ULL}) {
        Gridworld a(EnvironmentConfig::non_stationary(), seed);
        Gridworld b(EnvironmentConfig::non_stationary(), seed);
        EXPECT_EQ(a.state().food, b.state().food);
    }
}

TEST(Gridworld, InitialFoodCornerIsUniform) {
    const auto cfg = EnvironmentConfig::stationary();
    std::map<std::pair<int, int>, int> counts;
    constexpr int kSeeds = 10000;
    for (int seed = 0; seed < kSeeds; ++seed) {
        Gridworld env(cfg, mix64(static_cast<std::uint64_t>(seed)));
        ++counts[{env.state().food.col, env.state().food.row}];
    }
    ASSERT_EQ(counts.size(), 3u);
    for (const auto& [corner, count] : counts) {
        EXPECT_NEAR(count / static_cast<double>(kSeeds), 1.0 / 3.0, 0.02);
    }
}

TEST(Gridworld, MovementAndWallClamp) {
    const auto cfg = EnvironmentConfig::stationary();
    EXPECT_EQ(move(cfg, {0, 0}, Action::Up), (Position{0, 1}));
    EXPECT_EQ(move(cfg, {0, 0}, Action::Left), (Position{0, 0}));
    EXPECT_EQ(move(cfg, {0, 0}, Action::Down), (Position{0, 0}));
    EXPECT_EQ(move(cfg, {6, 6}, Action::Right), (Position{6, 6}));
    EXPECT_EQ(move(cfg, {6, 6}, Action::Up), (Position{6, 6}));
    EXPECT_EQ(move(cfg, {3, 3}, Action::Stay), (Position{3, 3}));
    EXPECT_EQ(move(cfg, {3, 3}, Action::Left), (Position{2, 3}));
    EXPECT_EQ(move(cfg, {3, 3}, Action::Down), (Position{3, 2}));
}

TEST(Gridworld, UpFromStartGivesNoReward) {
    Gridworld env(EnvironmentConfig::stationary(), 5);
    const double r = env.apply_action(Action::Up);
    EXPECT_EQ(env.state().agent, (Position{0, 1}));
    // (0,1) is never a corner, so never food.
    EXPECT_EQ(r, 0.0);
    EXPECT_EQ(env.state().t, 1);
}

TEST(Gridworld, StayOnFoodCollectsEveryStep) {
    Gridworld env(EnvironmentConfig::stationary(), 11);
    const Position food = env.state().food;
    walk_to(env, food);
    ASSERT_EQ(env.state().agent, food);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(env.apply_action(Action::Stay), 1.0);
}

TEST(Gridworld, RelocatesExactlyOnSchedule) {
    const auto cfg = EnvironmentConfig::non_stationary();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Gridworld env(cfg, seed);
        std::vector<int> moved_at;
        while (!env.done()) {
            const Position before = env.state().food;
            if (env.maybe_relocate()) {
                moved_at.push_back(env.state().t);
                EXPECT_NE(env.state().food, before);
                EXPECT_TRUE(is_corner(cfg, env.state().food));
            }
            env.apply_action(Action::Stay);
        }
        EXPECT_EQ(moved_at, (std::vector<int>{1250, 2500, 3750}));
    }
}

TEST(Gridworld, StationaryFoodNeverMoves) {
    Gridworld env(EnvironmentConfig::stationary(), 77);
    const Position food = env.state().food;
    Rng rng(3);
    while (!env.done()) {
        EXPECT_FALSE(env.maybe_relocate());
        env.apply_action(kAllActions[rng.uniform_index(kActionCount)]);
        ASSERT_EQ(env.state().food, food);
    }
}

TEST(Gridworld, CornerPositions) {
    const auto corners = corner_positions(EnvironmentConfig::stationary());
    EXPECT_EQ(corners[0], (Position{0, 0}));
    EXPECT_EQ(corners[1], (Position{0, 6}));
    EXPECT_EQ(corners[2], (Position{6, 0}));
    EXPECT_EQ(corners[3], (Position{6, 6}));
    for (std::size_t i = 0; i < corners.size(); ++i) {
        for (std::size_t j = i + 1; j < corners.size(); ++j) EXPECT_NE(corners[i], corners[j]);
    }
}

TEST(Gridworld, RandomActionFuzz) {
    const auto cfg = EnvironmentConfig::non_stationary();
    Rng actions(2024);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        std::vector<Action> plan;
        for (int i = 0; i < cfg.lifetime; ++i) {
            plan.push_back(kAllActions[actions.uniform_index(kActionCount)]);
        }
        auto run = [&] {
            Gridworld env(cfg, seed);
            std::vector<EnvironmentState> trajectory;
            double total = 0.0;
            long on_food = 0;
            for (Action a : plan) {
                env.maybe_relocate();
                total += env.apply_action(a);
                const auto& s = env.state();
                EXPECT_TRUE(in_bounds(cfg, s.agent));
                if (s.agent == s.food) ++on_food;
                trajectory.push_back(s);
            }
            EXPECT_EQ(total, static_cast<double>(on_food));
            return trajectory;
        };
        const auto first = run();
        const auto second = run();
        ASSERT_EQ(first.size(), second.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            EXPECT_EQ(first[i].agent, second[i].agent);
            EXPECT_EQ(first[i].food, second[i].food);
            EXPECT_EQ(first[i].t, second[i].t);
        }
    }
}

TEST(Gridworld, ConfigValidation) {
    auto cfg = EnvironmentConfig::stationary();
    cfg.lifetime = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = EnvironmentConfig::non_stationary();
    cfg.relocation_period = 5000;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.relocation_period = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_NO_THROW(EnvironmentConfig::non_stationary().validate());
}

TEST(Gridworld, StepPastLifetimeIsAnError) {
    auto cfg = EnvironmentConfig::stationary();
    cfg.lifetime = 2;
    Gridworld env(cfg, 0);
    env.apply_action(Action::Stay);
    env.apply_action(Action::Stay);
    EXPECT_TRUE(env.done());
    EXPECT_THROW(env.apply_action(Action::Stay), std::logic_error);
}

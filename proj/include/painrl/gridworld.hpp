#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "painrl/rng.hpp"

namespace painrl {

/// Grid cell, (col, row) with row 0 at the bottom.
struct Position {
    int col = 0;
    int row = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

enum class Action : std::uint8_t { Up, Down, Left, Right, Stay };

inline constexpr std::size_t kActionCount = 5;
inline constexpr std::array<Action, kActionCount> kAllActions = {
    Action::Up, Action::Down, Action::Left, Action::Right, Action::Stay};

std::string_view to_string(Action action);

struct EnvironmentConfig {
    int grid_size = 7;
    int lifetime = 2500;
    /// Food relocates every `relocation_period` steps when set.
    std::optional<int> relocation_period;
    double food_reward = 1.0;

    static EnvironmentConfig stationary();
    static EnvironmentConfig non_stationary();

    bool is_stationary() const { return !relocation_period.has_value(); }
    int cell_count() const { return grid_size * grid_size; }
    int state_index(Position p) const { return p.row * grid_size + p.col; }

    /// Throws std::invalid_argument on an inconsistent config.
    void validate() const;
};

/// (0,0), (0,n-1), (n-1,0), (n-1,n-1).
std::array<Position, 4> corner_positions(const EnvironmentConfig& config);

struct EnvironmentState {
    Position agent;
    Position food;
    int t = 0;
};

/// The single-agent food gridworld. Movement is clamped at the walls and
/// the food sits on a corner, optionally relocating on a fixed schedule.
/// All environment randomness comes from its own stream so that two agents
/// run with the same seed face the same food placements.
class Gridworld {
public:
    Gridworld(EnvironmentConfig config, std::uint64_t seed);

    const EnvironmentConfig& config() const { return config_; }
    const EnvironmentState& state() const { return state_; }

    /// Relocates the food when t is a positive multiple of the relocation
    /// period. Call once at the start of every step. Returns true if the
    /// food moved.
    bool maybe_relocate();

    /// Moves the agent, advances t and returns the objective reward for the
    /// post-move cell.
    double apply_action(Action action);

    bool done() const { return state_.t >= config_.lifetime; }

private:
    Position random_corner_except(Position excluded);

    EnvironmentConfig config_;
    EnvironmentState state_;
    Rng rng_;
};

/// Position after `action` from `from`, clamped to the grid.
Position move(const EnvironmentConfig& config, Position from, Action action);

}  // namespace painrl

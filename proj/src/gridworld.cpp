#include "painrl/gridworld.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace painrl {

std::string_view to_string(Action action) {
    switch (action) {
        case Action::Up: return "UP";
        case Action::Down: return "DOWN";
        case Action::Left: return "LEFT";
        case Action::Right: return "RIGHT";
        case Action::Stay: return "STAY";
    }
    return "?";
}

EnvironmentConfig EnvironmentConfig::stationary() {
    return EnvironmentConfig{};
}

EnvironmentConfig EnvironmentConfig::non_stationary() {
    EnvironmentConfig cfg;
    cfg.lifetime = 5000;
    cfg.relocation_period = 1250;
    return cfg;
}

void EnvironmentConfig::validate() const {
    if (grid_size < 2) {
        throw std::invalid_argument("grid_size must be at least 2");
    }
    if (lifetime <= 0) {
        throw std::invalid_argument("lifetime must be positive");
    }
    if (relocation_period) {
        if (*relocation_period <= 0) {
            throw std::invalid_argument("relocation_period must be positive");
        }
        if (*relocation_period >= lifetime) {
            throw std::invalid_argument(
                "relocation_period " + std::to_string(*relocation_period) +
                " yields no relocation within lifetime " +
                std::to_string(lifetime));
        }
    }
}

std::array<Position, 4> corner_positions(const EnvironmentConfig& config) {
    const int last = config.grid_size - 1;
    return {Position{0, 0}, Position{0, last}, Position{last, 0},
            Position{last, last}};
}

Position move(const EnvironmentConfig& config, Position from, Action action) {
    const int last = config.grid_size - 1;
    switch (action) {
        case Action::Up: from.row = std::min(from.row + 1, last); break;
        case Action::Down: from.row = std::max(from.row - 1, 0); break;
        case Action::Left: from.col = std::max(from.col - 1, 0); break;
        case Action::Right: from.col = std::min(from.col + 1, last); break;
        case Action::Stay: break;
    }
    return from;
}

Gridworld::Gridworld(EnvironmentConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
    config_.validate();
    state_.agent = Position{0, 0};
    state_.food = random_corner_except(state_.agent);
    state_.t = 0;
}

Position Gridworld::random_corner_except(Position excluded) {
    std::array<Position, 3> candidates{};
    std::size_t n = 0;
    for (const Position& corner : corner_positions(config_)) {
        if (corner != excluded) candidates[n++] = corner;
    }
    return candidates[rng_.uniform_index(static_cast<std::uint32_t>(n))];
}

bool Gridworld::maybe_relocate() {
    if (!config_.relocation_period || state_.t == 0 ||
        state_.t % *config_.relocation_period != 0) {
        return false;
    }
    state_.food = random_corner_except(state_.food);
    return true;
}

double Gridworld::apply_action(Action action) {
    if (done()) {
        throw std::logic_error("apply_action past the end of the lifetime");
    }
    state_.agent = move(config_, state_.agent, action);
    ++state_.t;
    return state_.agent == state_.food ? config_.food_reward : 0.0;
}

}  // namespace painrl

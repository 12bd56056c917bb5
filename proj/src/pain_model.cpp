#include "painrl/pain_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>

namespace painrl {

namespace {

constexpr double kRowTolerance = 1e-12;

void check_distribution(const std::array<double, 2>& row, const char* what) {
    for (double v : row) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string(what) +
                                        ": entry outside [0,1]");
        }
    }
    if (std::abs(row[0] + row[1] - 1.0) > kRowTolerance) {
        throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
    }
}

}  // namespace

std::string_view to_string(Observation obs) {
    return obs == Observation::Noxious ? "noxious" : "harmless";
}

void PainModelParams::validate() const {
    check_distribution(transition[0], "transition");
    check_distribution(transition[1], "transition");
    check_distribution(emission[0], "emission");
    check_distribution(emission[1], "emission");
    check_distribution(initial, "initial");
}

PainModelParams normal_pain_params() {
    PainModelParams p;
    p.transition = {{{0.3, 0.7}, {0.2, 0.8}}};
    p.emission = {{{0.8, 0.2}, {0.1, 0.9}}};
    p.initial = {0.223, 0.777};
    return p;
}

PainModelParams chronic_pain_params() {
    PainModelParams p;
    p.transition = {{{0.8, 0.2}, {0.7, 0.3}}};
    p.emission = {{{0.6, 0.4}, {0.6, 0.4}}};
    p.initial = {0.777, 0.223};
    return p;
}

std::string_view to_string(PainCondition condition) {
    switch (condition) {
        case PainCondition::None: return "none";
        case PainCondition::Normal: return "normal";
        case PainCondition::Chronic: return "chronic";
    }
    return "?";
}

std::optional<PainCondition> parse_pain_condition(std::string_view name) {
    if (name == "none") return PainCondition::None;
    if (name == "normal") return PainCondition::Normal;
    if (name == "chronic") return PainCondition::Chronic;
    return std::nullopt;
}

std::optional<PainModelParams> params_for(PainCondition condition) {
    switch (condition) {
        case PainCondition::Normal: return normal_pain_params();
        case PainCondition::Chronic: return chronic_pain_params();
        case PainCondition::None: break;
    }
    return std::nullopt;
}

Observation observation_from_happiness(double f_h) {
    if (!std::isfinite(f_h)) {
        throw std::logic_error("happiness must be finite");
    }
    return f_h >= 0.0 ? Observation::Harmless : Observation::Noxious;
}

Belief belief_init(const PainModelParams& params) {
    return Belief{params.initial[0]};
}

Belief belief_update(Belief belief, Observation obs,
                     const PainModelParams& params) {
    const double b = belief.p_pain;
    const double predicted = params.transition_to_pain(HiddenState::Pain) * b +
                             params.transition_to_pain(HiddenState::NoPain) * (1.0 - b);
    const double pain = params.emission_prob(HiddenState::Pain, obs) * predicted;
    const double no_pain =
        params.emission_prob(HiddenState::NoPain, obs) * (1.0 - predicted);
    const double norm = pain + no_pain;
    if (!(norm > 0.0)) {
        throw std::domain_error("forward step normalizer is zero");
    }
    return Belief{std::clamp(pain / norm, 0.0, 1.0)};
}

double stationary_pain_probability(const PainModelParams& params) {
    // p = a p + c (1 - p)  =>  p = c / (1 - a + c)
    const double stay = params.transition_to_pain(HiddenState::Pain);
    const double enter = params.transition_to_pain(HiddenState::NoPain);
    const double denom = 1.0 - stay + enter;
    if (!(denom > 0.0)) {
        throw std::domain_error("prediction map has no unique fixed point");
    }
    return enter / denom;
}

}  // namespace painrl

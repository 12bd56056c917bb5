#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace painrl {

enum class HiddenState { Pain = 0, NoPain = 1 };
enum class Observation { Noxious = 0, Harmless = 1 };

std::string_view to_string(Observation obs);

/// Two-state HMM over {pain, no_pain}.
///
/// transition[i][j] = Pr(H_t = j | H_{t-1} = i)
/// emission[i][k]   = Pr(O_t = k | H_t = i)
/// initial[i]       = Pr(H_0 = i)
///
/// Index 0 is pain / noxious, index 1 is no_pain / harmless.
struct PainModelParams {
    std::array<std::array<double, 2>, 2> transition{};
    std::array<std::array<double, 2>, 2> emission{};
    std::array<double, 2> initial{};

    /// Throws std::invalid_argument unless every row is a distribution.
    void validate() const;

    double transition_to_pain(HiddenState from) const {
        return transition[static_cast<int>(from)][0];
    }
    double emission_prob(HiddenState state, Observation obs) const {
        return emission[static_cast<int>(state)][static_cast<int>(obs)];
    }
};

/// Recovery-favoring transitions, informative emissions.
PainModelParams normal_pain_params();
/// Sticky transitions, emissions independent of the hidden state.
PainModelParams chronic_pain_params();

enum class PainCondition { None, Normal, Chronic };

std::string_view to_string(PainCondition condition);
/// Accepts "none", "normal" or "chronic".
std::optional<PainCondition> parse_pain_condition(std::string_view name);
/// Preset for the condition; empty for PainCondition::None.
std::optional<PainModelParams> params_for(PainCondition condition);

/// Filtered belief Pr(H_t = pain | O_{1:t}).
struct Belief {
    double p_pain = 0.0;
};

/// Harmless iff f_h >= 0. A non-finite f_h is a logic error.
Observation observation_from_happiness(double f_h);

Belief belief_init(const PainModelParams& params);

/// One forward-algorithm step: predict through the transition matrix, then
/// condition on `obs` and renormalize. Throws std::domain_error if the
/// observation has zero probability under the prediction.
Belief belief_update(Belief belief, Observation obs,
                     const PainModelParams& params);

/// Fixed point of the prediction map p -> T(pain|pain) p + T(pain|no_pain)(1-p).
double stationary_pain_probability(const PainModelParams& params);

}  // namespace painrl

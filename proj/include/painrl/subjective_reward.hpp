#pragma once

#include <optional>
#include <string_view>

namespace painrl {

/// Weights of the well-being function
///   f_h = w1 * Objective + w2 * Expect + w3 * Compare
///   f_w = f_h - w4 * Pain
/// `rho` is the aspiration level used by Compare.
struct RewardWeights {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
    double w4 = 0.0;
    double rho = 1.0;

    friend bool operator==(const RewardWeights&, const RewardWeights&) = default;
};

struct HappinessTerms {
    double objective = 0.0;
    double expect = 0.0;
    double compare = 0.0;
};

/// Which of w1, w2, w3 are strictly positive.
enum class RewardCategory {
    ObjectiveOnly,
    ExpectOnly,
    CompareOnly,
    ObjectiveExpect,
    ObjectiveCompare,
    ExpectCompare,
    All,
    NoneActive,
};

inline constexpr RewardCategory kReportedCategories[] = {
    RewardCategory::ObjectiveOnly,   RewardCategory::ExpectOnly,
    RewardCategory::CompareOnly,     RewardCategory::ObjectiveExpect,
    RewardCategory::ObjectiveCompare, RewardCategory::ExpectCompare,
    RewardCategory::All,
};

std::string_view to_string(RewardCategory category);
std::optional<RewardCategory> parse_category(std::string_view name);

/// Temporal-difference prediction error r + gamma * max_a Q(s', a) - Q(s, a),
/// taken from the value table before it is updated.
inline double expect_term(double r, double q_current, double q_next_max,
                          double gamma) {
    return r + gamma * q_next_max - q_current;
}

/// Outcome relative to a fixed aspiration level.
inline double compare_term(double r, double rho) { return r - rho; }

inline double happiness(const RewardWeights& w, const HappinessTerms& terms) {
    return w.w1 * terms.objective + w.w2 * terms.expect + w.w3 * terms.compare;
}

inline double well_being(double f_h, double p_pain, double w4) {
    return f_h - w4 * p_pain;
}

RewardCategory category_of(const RewardWeights& w);

}  // namespace painrl

#include "painrl/subjective_reward.hpp"

namespace painrl {

std::string_view to_string(RewardCategory category) {
    switch (category) {
        case RewardCategory::ObjectiveOnly: return "ObjectiveOnly";
        case RewardCategory::ExpectOnly: return "ExpectOnly";
        case RewardCategory::CompareOnly: return "CompareOnly";
        case RewardCategory::ObjectiveExpect: return "ObjectiveExpect";
        case RewardCategory::ObjectiveCompare: return "ObjectiveCompare";
        case RewardCategory::ExpectCompare: return "ExpectCompare";
        case RewardCategory::All: return "All";
        case RewardCategory::NoneActive: return "NoneActive";
    }
    return "?";
}

std::optional<RewardCategory> parse_category(std::string_view name) {
    for (auto c : kReportedCategories) {
        if (to_string(c) == name) return c;
    }
    if (name == "NoneActive") return RewardCategory::NoneActive;
    return std::nullopt;
}

RewardCategory category_of(const RewardWeights& w) {
    const bool obj = w.w1 > 0.0;
    const bool exp = w.w2 > 0.0;
    const bool cmp = w.w3 > 0.0;
    if (obj && exp && cmp) return RewardCategory::All;
    if (obj && exp) return RewardCategory::ObjectiveExpect;
    if (obj && cmp) return RewardCategory::ObjectiveCompare;
    if (exp && cmp) return RewardCategory::ExpectCompare;
    if (obj) return RewardCategory::ObjectiveOnly;
    if (exp) return RewardCategory::ExpectOnly;
    if (cmp) return RewardCategory::CompareOnly;
    return RewardCategory::NoneActive;
}

}  // namespace painrl

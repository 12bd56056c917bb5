#include "painrl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace painrl {

namespace {

void check_sorted_unique(const std::vector<double>& values, const char* name,
                         double lo, double hi, bool lo_open) {
    if (values.empty()) {
        throw std::invalid_argument(std::string(name) + ": empty value list");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        const bool above = lo_open ? v > lo : v >= lo;
        if (!(above && v <= hi)) {
            throw std::invalid_argument(std::string(name) + ": value out of range");
        }
        if (i > 0 && !(values[i - 1] < v)) {
            throw std::invalid_argument(std::string(name) +
                                        ": values must be sorted and distinct");
        }
    }
}

}  // namespace

SearchSpace SearchSpace::full() {
    SearchSpace s;
    s.weight_values = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    s.rho_values = {0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    s.alpha_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    s.epsilon_values = {0.01, 0.1};
    s.pain_conditions = {PainCondition::None, PainCondition::Normal,
                         PainCondition::Chronic};
    return s;
}

void SearchSpace::validate() const {
    check_sorted_unique(weight_values, "weights", 0.0, 1.0, false);
    check_sorted_unique(rho_values, "rho", 0.0, 1.0, true);
    check_sorted_unique(alpha_values, "alpha", 0.0, 1.0, true);
    check_sorted_unique(epsilon_values, "epsilon", 0.0, 1.0, false);
    if (pain_conditions.empty()) {
        throw std::invalid_argument("pain: empty condition list");
    }
    for (std::size_t i = 1; i < pain_conditions.size(); ++i) {
        if (!(pain_conditions[i - 1] < pain_conditions[i])) {
            throw std::invalid_argument("pain: conditions must be sorted and distinct");
        }
    }
}

RewardFunctionConfig RewardFunctionConfig::canonical() const {
    RewardFunctionConfig c = *this;
    if (!(c.weights.w3 > 0.0)) c.weights.rho = kNoAspiration;
    if (c.pain == PainCondition::None || !(c.weights.w4 > 0.0)) {
        c.pain = PainCondition::None;
        c.weights.w4 = 0.0;
    }
    return c;
}

std::strong_ordering operator<=>(const RewardFunctionConfig& a,
                                 const RewardFunctionConfig& b) {
    auto key = [](const RewardFunctionConfig& c) {
        return std::make_tuple(static_cast<int>(c.category()),
                               static_cast<int>(c.pain), c.weights.w1,
                               c.weights.w2, c.weights.w3, c.weights.w4,
                               c.weights.rho, c.epsilon, c.alpha);
    };
    const auto ka = key(a);
    const auto kb = key(b);
    if (ka < kb) return std::strong_ordering::less;
    if (kb < ka) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::vector<RewardFunctionConfig> enumerate_configs(const SearchSpace& space) {
    space.validate();

    // (pain, w4) options: no-pain carries w4 = 0 only, a pain model carries
    // every strictly positive weight.
    std::vector<std::pair<PainCondition, double>> pain_options;
    for (PainCondition p : space.pain_conditions) {
        if (p == PainCondition::None) {
            pain_options.emplace_back(p, 0.0);
            continue;
        }
        for (double w4 : space.weight_values) {
            if (w4 > 0.0) pain_options.emplace_back(p, w4);
        }
    }
    const std::vector<double> no_rho{kNoAspiration};

    std::vector<RewardFunctionConfig> out;
    for (double w1 : space.weight_values) {
        for (double w2 : space.weight_values) {
            for (double w3 : space.weight_values) {
                const auto& rhos = w3 > 0.0 ? space.rho_values : no_rho;
                for (double rho : rhos) {
                    for (const auto& [pain, w4] : pain_options) {
                        for (double alpha : space.alpha_values) {
                            for (double eps : space.epsilon_values) {
                                out.push_back(RewardFunctionConfig{
                                    RewardWeights{w1, w2, w3, w4, rho}, pain, alpha, eps});
                            }
                        }
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t trial_seed(std::uint64_t seed_base, std::uint64_t index) {
    return mix64(seed_base, index);
}

BatchResult run_batch(const RewardFunctionConfig& config,
                      const EnvironmentConfig& env_cfg, int n,
                      std::uint64_t seed_base, double gamma) {
    if (n < 1) throw std::invalid_argument("run_batch: n must be at least 1");
    const auto pain = params_for(config.pain);
    const AgentConfig agent = config.agent_config(gamma);

    BatchResult result;
    result.config = config;
    result.n = n;
    result.seed_base = seed_base;
    result.cors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto history = run_lifetime(env_cfg, agent, config.weights, pain,
                                          trial_seed(seed_base, static_cast<std::uint64_t>(i)),
                                          /*keep_records=*/false);
        result.cors.push_back(static_cast<double>(history.cor));
    }
    result.mean = stats::mean(result.cors);
    result.sd = stats::sample_sd(result.cors);
    return result;
}

void run_batches(std::span<const RewardFunctionConfig> configs,
                 const EnvironmentConfig& env_cfg, int n,
                 std::uint64_t seed_base, int workers,
                 const std::function<void(BatchResult)>& on_result,
                 double gamma) {
    if (configs.empty()) return;
    if (workers <= 0) {
        workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    }
    workers = std::min<int>(workers, static_cast<int>(configs.size()));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex sink_mutex;
    std::exception_ptr error;

    auto work = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            try {
                BatchResult r = run_batch(configs[i], env_cfg, n, seed_base, gamma);
                std::lock_guard lock(sink_mutex);
                on_result(std::move(r));
            } catch (...) {
                std::lock_guard lock(sink_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

std::vector<ReportRow> best_per_subcategory(std::span<const BatchResult> results,
                                            const CorsProvider& cors) {
    using Key = std::pair<RewardCategory, PainCondition>;
    std::map<Key, const BatchResult*> best;
    for (const BatchResult& r : results) {
        const Key key{r.config.category(), r.config.pain};
        if (key.first == RewardCategory::NoneActive) continue;
        auto [it, inserted] = best.emplace(key, &r);
        if (inserted) continue;
        const BatchResult& cur = *it->second;
        if (r.mean > cur.mean || (r.mean == cur.mean && r.config < cur.config)) {
            it->second = &r;
        }
    }

    auto cors_of = [&](const BatchResult& r) -> std::vector<double> {
        if (!r.cors.empty()) return r.cors;
        if (!cors) {
            throw std::invalid_argument("best_per_subcategory: result without per-trial CORs");
        }
        return cors(r);
    };

    std::vector<ReportRow> rows;
    for (RewardCategory category : kReportedCategories) {
        const auto base_it = best.find({category, PainCondition::None});
        std::vector<double> base_cors;
        for (PainCondition pain :
             {PainCondition::None, PainCondition::Normal, PainCondition::Chronic}) {
            const auto it = best.find({category, pain});
            if (it == best.end()) continue;
            ReportRow row;
            row.best = *it->second;
            if (pain != PainCondition::None) {
                if (base_it == best.end()) {
                    row.missing_baseline = true;
                } else {
                    if (base_cors.empty()) base_cors = cors_of(*base_it->second);
                    const std::vector<double> mine = cors_of(row.best);
                    if (mine != base_cors) {
                        row.test = stats::paired_t_test_one_sided(mine, base_cors);
                        row.significant = row.test->p_value < kSignificanceLevel;
                    }
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

template <typename Field>
SeriesStats series(std::span<const LifetimeHistory> histories, std::size_t length,
                   Field field) {
    SeriesStats s;
    s.mean.assign(length, 0.0);
    s.sd.assign(length, 0.0);
    const double n = static_cast<double>(histories.size());
    for (const auto& h : histories) {
        for (std::size_t t = 0; t < length; ++t) s.mean[t] += field(h.records[t]);
    }
    for (double& m : s.mean) m /= n;
    if (histories.size() < 2) return s;
    for (const auto& h : histories) {
        for (std::size_t t = 0; t < length; ++t) {
            const double d = field(h.records[t]) - s.mean[t];
            s.sd[t] += d * d;
        }
    }
    for (double& v : s.sd) v = std::sqrt(v / (n - 1.0));
    return s;
}

}  // namespace

TraceAggregate aggregate_traces(std::span<const LifetimeHistory> histories) {
    TraceAggregate agg;
    if (histories.empty()) return agg;
    const std::size_t length = histories.front().records.size();
    for (const auto& h : histories) {
        if (h.records.size() != length) {
            throw std::invalid_argument("aggregate_traces: histories differ in length");
        }
    }
    agg.t.reserve(length);
    for (const auto& r : histories.front().records) agg.t.push_back(r.t);
    agg.objective = series(histories, length, [](const StepRecord& r) { return r.objective; });
    agg.f_w = series(histories, length, [](const StepRecord& r) { return r.f_w; });
    agg.subjective_pain =
        series(histories, length, [](const StepRecord& r) { return r.subjective_pain; });
    agg.cum_f_w = series(histories, length, [](const StepRecord& r) { return r.cum_f_w; });
    return agg;
}

Histogram histogram(std::span<const BatchResult> results, RewardCategory category,
                    PainCondition pain, int bin_count) {
    if (bin_count < 1) throw std::invalid_argument("histogram: bin_count must be >= 1");
    std::vector<double> values;
    for (const auto& r : results) {
        if (r.config.category() == category && r.config.pain == pain) {
            values.push_back(r.mean);
        }
    }
    Histogram h;
    if (values.empty()) return h;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / bin_count;
    h.edges.resize(static_cast<std::size_t>(bin_count) + 1);
    for (int i = 0; i <= bin_count; ++i) h.edges[i] = lo + width * i;
    h.edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bin_count), 0);
    for (double v : values) {
        int bin = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
        bin = std::clamp(bin, 0, bin_count - 1);
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    return h;
}

namespace {

PublishedRow row(double w1, double w2, double w3, double w4, double rho,
                 PainCondition pain, double eps, double alpha, double mean,
                 double sd, bool star) {
    RewardFunctionConfig c{RewardWeights{w1, w2, w3, w4, rho}, pain, alpha, eps};
    return PublishedRow{c.canonical(), mean, sd, star};
}

constexpr double NA = kNoAspiration;
constexpr auto None = PainCondition::None;
constexpr auto Normal = PainCondition::Normal;
constexpr auto Chronic = PainCondition::Chronic;

}  // namespace

std::vector<PublishedRow> published_table(bool stationary) {
    if (stationary) {
        return {
            row(0.9, 0.0, 0.0, 0.0, NA, None, 0.1, 0.9, 1858.6, 338.7, false),
            row(0.1, 0.0, 0.0, 1.0, NA, Normal, 0.01, 0.7, 2279.5, 69.3, true),
            row(0.1, 0.0, 0.0, 0.1, NA, Chronic, 0.01, 0.9, 2266.3, 68.5, true),
            row(0.0, 0.9, 0.0, 0.0, NA, None, 0.01, 0.7, 1973.1, 385.0, false),
            row(0.0, 0.7, 0.0, 0.7, NA, Normal, 0.01, 0.7, 2295.6, 65.7, true),
            row(0.0, 0.3, 0.0, 0.3, NA, Chronic, 0.01, 0.9, 2294.6, 66.0, true),
            row(0.0, 0.0, 0.9, 0.0, 0.7, None, 0.01, 0.9, 2272.2, 69.1, false),
            row(0.0, 0.0, 0.5, 0.9, 0.05, Normal, 0.01, 0.7, 2269.3, 67.7, false),
            row(0.0, 0.0, 1.0, 0.1, 0.7, Chronic, 0.01, 0.9, 2270.2, 67.0, false),
            row(0.5, 0.9, 0.0, 0.0, NA, None, 0.01, 0.7, 1973.1, 385.0, false),
            row(0.1, 0.7, 0.0, 0.7, NA, Normal, 0.01, 0.7, 2295.6, 65.7, true),
            row(0.9, 0.3, 0.0, 0.7, NA, Chronic, 0.01, 0.9, 2295.0, 66.1, true),
            row(0.1, 0.0, 0.5, 0.0, 1.0, None, 0.01, 0.7, 2272.2, 69.1, false),
            row(0.1, 0.0, 0.5, 0.9, 0.05, Normal, 0.01, 0.7, 2269.3, 67.7, false),
            row(0.1, 0.0, 0.5, 0.1, 1.0, Chronic, 0.01, 0.7, 2270.3, 67.0, false),
            row(0.0, 0.7, 1.0, 0.0, 0.9, None, 0.01, 0.7, 2291.1, 65.8, false),
            row(0.0, 0.3, 0.3, 0.7, 0.01, Normal, 0.01, 0.1, 2310.6, 62.5, true),
            row(0.0, 0.7, 0.3, 0.5, 0.05, Chronic, 0.01, 0.7, 2300.4, 61.0, true),
            row(0.1, 0.7, 0.7, 0.0, 1.0, None, 0.01, 0.7, 2291.0, 65.8, false),
            row(0.7, 0.3, 0.3, 0.7, 0.01, Normal, 0.01, 0.1, 2310.6, 62.5, true),
            row(0.7, 0.3, 0.7, 1.0, 0.01, Chronic, 0.01, 0.9, 2300.6, 59.6, true),
        };
    }
    return {
        row(0.1, 0.0, 0.0, 0.0, NA, None, 0.1, 0.9, 1586.5, 631.2, false),
        row(0.1, 0.0, 0.0, 1.0, NA, Normal, 0.01, 0.9, 3101.8, 271.8, true),
        row(0.7, 0.0, 0.0, 0.9, NA, Chronic, 0.01, 0.1, 4142.5, 177.2, true),
        row(0.0, 1.0, 0.0, 0.0, NA, None, 0.1, 0.7, 2371.0, 613.3, false),
        row(0.0, 0.1, 0.0, 0.9, NA, Normal, 0.01, 0.1, 3896.3, 383.1, true),
        row(0.0, 0.3, 0.0, 0.3, NA, Chronic, 0.01, 0.3, 4197.7, 186.9, true),
        row(0.0, 0.0, 0.1, 0.0, 1.0, None, 0.01, 0.1, 4171.1, 178.9, false),
        row(0.0, 0.0, 0.9, 1.0, 0.9, Normal, 0.01, 0.3, 4173.1, 178.0, false),
        // Printed epsilon "001" read as 0.01, the only grid value it can be.
        row(0.0, 0.0, 0.9, 0.1, 0.9, Chronic, 0.01, 0.3, 4178.1, 181.6, false),
        row(0.5, 1.0, 0.0, 0.0, NA, None, 0.1, 0.7, 2371.0, 613.3, false),
        row(0.1, 0.1, 0.0, 0.5, NA, Normal, 0.01, 0.7, 3814.0, 446.6, true),
        row(0.1, 0.3, 0.0, 0.5, NA, Chronic, 0.01, 0.3, 4214.6, 165.4, true),
        row(0.1, 0.0, 1.0, 0.0, 1.0, None, 0.01, 0.3, 4008.8, 189.1, false),
        row(0.1, 0.0, 1.0, 1.0, 1.0, Normal, 0.01, 0.3, 4165.9, 172.2, true),
        row(0.3, 0.0, 0.3, 0.5, 0.7, Chronic, 0.01, 0.3, 4205.3, 190.8, true),
        row(0.0, 0.1, 1.0, 0.0, 1.0, None, 0.01, 0.3, 4194.2, 188.8, false),
        row(0.0, 0.1, 1.0, 0.9, 1.0, Normal, 0.01, 0.3, 4222.5, 176.0, true),
        row(0.0, 0.3, 0.3, 0.5, 0.7, Chronic, 0.01, 0.1, 4235.3, 170.0, true),
        row(0.1, 0.5, 1.0, 0.0, 1.0, None, 0.01, 0.3, 4194.6, 201.2, false),
        row(0.1, 0.3, 1.0, 0.7, 1.0, Normal, 0.01, 0.3, 4210.0, 184.4, false),
        row(0.1, 0.7, 0.7, 1.0, 1.0, Chronic, 0.01, 0.1, 4235.5, 180.3, true),
    };
}

}  // namespace painrl

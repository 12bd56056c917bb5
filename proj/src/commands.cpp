#include "painrl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "painrl/experiment.hpp"
#include "painrl/io.hpp"
#include "painrl/run_config.hpp"

namespace painrl::cli {

namespace fs = std::filesystem;

namespace {

struct CommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<RewardCategory> category_filter(const CommonOptions& opts) {
    if (!opts.filter_category) return std::nullopt;
    const auto c = parse_category(*opts.filter_category);
    if (!c) throw CommandError("unknown category '" + *opts.filter_category + "'");
    return c;
}

std::optional<PainCondition> pain_filter(const CommonOptions& opts) {
    if (!opts.filter_pain) return std::nullopt;
    const auto p = parse_pain_condition(*opts.filter_pain);
    if (!p) throw CommandError("unknown pain condition '" + *opts.filter_pain + "'");
    return p;
}

bool table_is_stationary(const std::string& id) {
    if (id == "stationary") return true;
    if (id == "non_stationary") return false;
    throw CommandError("unknown table '" + id + "' (stationary|non_stationary)");
}

RunConfigDocument load_document(const CommonOptions& opts) {
    RunConfigDocument doc =
        opts.config_path.empty() ? RunConfigDocument{} : load_run_config(opts.config_path);
    if (opts.env_kind) doc.environment = environment_preset(*opts.env_kind);
    if (opts.table) {
        const bool stationary = table_is_stationary(*opts.table);
        const auto category = category_filter(opts);
        const auto pain = pain_filter(opts);
        if (!category || !pain) {
            throw CommandError("--table needs --filter-category and --filter-pain");
        }
        doc.environment = stationary ? EnvironmentConfig::stationary()
                                     : EnvironmentConfig::non_stationary();
        bool found = false;
        for (const PublishedRow& row : published_table(stationary)) {
            if (row.config.category() == *category && row.config.pain == *pain) {
                doc.weights = row.config.weights;
                doc.pain = row.config.pain;
                doc.agent.alpha = row.config.alpha;
                doc.agent.epsilon = row.config.epsilon;
                found = true;
            }
        }
        if (!found) throw CommandError("no published row for that category/pain");
    }
    if (opts.seed) doc.execution.seed_base = *opts.seed;
    if (opts.n) doc.execution.n = *opts.n;
    if (opts.workers) doc.execution.workers = *opts.workers;
    if (opts.out) doc.execution.output = *opts.out;
    doc.validate();
    return doc;
}

std::string output_path(const RunConfigDocument& doc, const char* fallback) {
    return doc.execution.output.empty() ? std::string(fallback) : doc.execution.output;
}

/// Writes via a sibling temporary file and renames it into place.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CommandError("cannot write '" + tmp + "'");
        body(out);
        out.flush();
        if (!out) throw CommandError("write to '" + tmp + "' failed");
    }
    fs::rename(tmp, path);
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

io::ParsedResults read_results(const std::string& path, bool allow_partial_tail) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandError("cannot open results file '" + path + "'");
    return io::parse_results_csv(in, allow_partial_tail);
}

}  // namespace

int cmd_simulate(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfigDocument doc = load_document(opts);
        const std::string path = output_path(doc, "trace.csv");
        const auto history = run_lifetime(doc.environment, doc.agent, doc.weights,
                                          params_for(doc.pain), doc.execution.seed_base);
        write_file(path, [&](std::ostream& os) { io::write_trace_csv(os, history); });
        out << "COR=" << history.cor
            << " cum_f_w=" << io::format_number(history.cum_f_w) << " steps="
            << history.records.size() << " trace=" << path << '\n';
        return 0;
    });
}

int cmd_search(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfigDocument doc = load_document(opts);
        const SearchSpace space = doc.space.value_or(SearchSpace::full());
        const auto category = category_filter(opts);
        const auto pain = pain_filter(opts);
        const int n = doc.execution.n;
        const std::uint64_t seed_base = doc.execution.seed_base;
        const std::string path = output_path(doc, "results.csv");

        std::vector<RewardFunctionConfig> configs;
        for (const auto& c : enumerate_configs(space)) {
            if (category && c.category() != *category) continue;
            if (pain && c.pain != *pain) continue;
            configs.push_back(c);
        }

        // Resume from an existing checkpoint.
        std::vector<BatchResult> done;
        if (fs::exists(path) && fs::file_size(path) > 0) {
            io::ParsedResults parsed;
            try {
                parsed = read_results(path, /*allow_partial_tail=*/true);
            } catch (const io::CsvError& e) {
                throw CommandError("corrupt checkpoint '" + path + "': " + e.what());
            }
            std::set<RewardFunctionConfig> seen;
            for (const auto& r : parsed.rows) {
                if (r.n != n || r.seed_base != seed_base) {
                    throw CommandError("checkpoint '" + path +
                                       "' was produced with a different n or seed_base");
                }
                if (!seen.insert(r.config).second) {
                    throw CommandError("corrupt checkpoint '" + path + "': duplicate config");
                }
            }
            done = std::move(parsed.rows);
            if (parsed.dropped_partial_tail) {
                err << "note: dropped an incomplete trailing row from '" << path << "'\n";
                write_file(path, [&](std::ostream& os) { io::write_results_csv(os, done); });
            }
        } else {
            write_file(path, [&](std::ostream& os) { os << io::kResultsHeader << '\n'; });
        }

        std::set<RewardFunctionConfig> finished;
        for (const auto& r : done) finished.insert(r.config);
        std::vector<RewardFunctionConfig> pending;
        for (const auto& c : configs) {
            if (!finished.contains(c)) pending.push_back(c);
        }
        out << configs.size() << " configs selected, " << configs.size() - pending.size()
            << " already in checkpoint, " << pending.size() << " to run\n";

        {
            std::ofstream append(path, std::ios::binary | std::ios::app);
            if (!append) throw CommandError("cannot append to '" + path + "'");
            run_batches(pending, doc.environment, n, seed_base, doc.execution.workers,
                        [&](BatchResult r) {
                            append << io::format_result_row(r) << '\n';
                            append.flush();
                            done.push_back(std::move(r));
                        },
                        doc.agent.gamma);
            if (!append) throw CommandError("append to '" + path + "' failed");
        }

        std::sort(done.begin(), done.end(),
                  [](const BatchResult& a, const BatchResult& b) { return a.config < b.config; });
        write_file(path, [&](std::ostream& os) { io::write_results_csv(os, done); });
        const auto check = read_results(path, false);
        out << check.rows.size() << " rows in " << path << '\n';
        return 0;
    });
}

int cmd_report(const CommonOptions& opts, const ReportOptions& report,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfigDocument doc = load_document(opts);
        const auto category = category_filter(opts);
        const auto pain = pain_filter(opts);
        auto results = read_results(report.results_path, false).rows;

        const CorsProvider rerun = [&](const BatchResult& r) {
            return run_batch(r.config, doc.environment, r.n, r.seed_base, doc.agent.gamma).cors;
        };
        std::vector<ReportRow> rows = best_per_subcategory(results, rerun);
        std::erase_if(rows, [&](const ReportRow& row) {
            return (category && row.best.config.category() != *category) ||
                   (pain && row.best.config.pain != *pain);
        });
        for (const auto& row : rows) {
            if (row.missing_baseline) {
                err << "warning: no no-pain baseline for category "
                    << to_string(row.best.config.category()) << '\n';
            }
        }

        const std::string path = output_path(doc, "report.csv");
        write_file(path, [&](std::ostream& os) { io::write_report_csv(os, rows); });
        out << rows.size() << " report rows in " << path << '\n';

        if (report.histogram_bins) {
            if (!category || !pain) {
                throw CommandError("--histogram needs --filter-category and --filter-pain");
            }
            const Histogram h = histogram(results, *category, *pain, *report.histogram_bins);
            const std::string hpath = report.histogram_out.value_or("histogram.csv");
            write_file(hpath, [&](std::ostream& os) { io::write_histogram_csv(os, h); });
            out << "histogram of " << std::accumulate(h.counts.begin(), h.counts.end(), 0)
                << " configs in " << hpath << '\n';
        }
        return 0;
    });
}

int cmd_replicate(const std::string& table_id, const CommonOptions& opts,
                  std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const bool stationary = table_is_stationary(table_id);
        CommonOptions local = opts;
        local.table.reset();
        RunConfigDocument doc = load_document(local);
        doc.environment = stationary ? EnvironmentConfig::stationary()
                                     : EnvironmentConfig::non_stationary();
        if (!opts.n) doc.execution.n = 300;
        const auto category = category_filter(opts);
        const auto pain = pain_filter(opts);

        std::vector<PublishedRow> published;
        for (const auto& row : published_table(stationary)) {
            if (category && row.config.category() != *category) continue;
            if (pain && row.config.pain != *pain) continue;
            published.push_back(row);
        }
        // The no-pain row of each selected category is needed for the t-test.
        std::vector<RewardFunctionConfig> to_run;
        for (const auto& row : published_table(stationary)) {
            const bool wanted = std::any_of(published.begin(), published.end(), [&](const auto& p) {
                return p.config.category() == row.config.category() &&
                       (p.config == row.config || row.config.pain == PainCondition::None);
            });
            if (wanted) to_run.push_back(row.config);
        }
        std::sort(to_run.begin(), to_run.end());
        to_run.erase(std::unique(to_run.begin(), to_run.end()), to_run.end());

        std::vector<BatchResult> measured;
        run_batches(to_run, doc.environment, doc.execution.n, doc.execution.seed_base,
                    doc.execution.workers,
                    [&](BatchResult r) { measured.push_back(std::move(r)); }, doc.agent.gamma);
        auto find = [&](const RewardFunctionConfig& c) -> const BatchResult& {
            return *std::find_if(measured.begin(), measured.end(),
                                 [&](const BatchResult& r) { return r.config == c; });
        };

        const std::string path = output_path(doc, ("replicate_" + table_id + ".csv").c_str());
        std::ostringstream csv;
        csv << io::kReplicateHeader << '\n';
        out << std::left << std::setw(18) << "category" << std::setw(9) << "pain"
            << std::right << std::setw(10) << "published" << std::setw(8) << "sd"
            << std::setw(10) << "measured" << std::setw(8) << "sd" << std::setw(9)
            << "dev(SE)" << std::setw(12) << "p" << std::setw(5) << "pub" << '\n';
        for (const auto& row : published) {
            const BatchResult& m = find(row.config);
            const double n = static_cast<double>(m.n);
            const double se = std::sqrt((m.sd * m.sd + row.sd * row.sd) / n);
            const double deviation = se > 0.0 ? (m.mean - row.mean) / se : 0.0;
            std::optional<double> p_value;
            if (row.config.pain != PainCondition::None) {
                const auto base = std::find_if(to_run.begin(), to_run.end(), [&](const auto& c) {
                    return c.pain == PainCondition::None && c.category() == row.config.category();
                });
                if (base != to_run.end() && find(*base).cors != m.cors) {
                    p_value = stats::paired_t_test_one_sided(m.cors, find(*base).cors).p_value;
                }
            }
            csv << io::format_config_fields(m.config) << ',' << m.n << ','
                << io::format_number(row.mean) << ',' << io::format_number(row.sd) << ','
                << io::format_number(m.mean) << ',' << io::format_number(m.sd) << ','
                << io::format_number(deviation) << ','
                << (row.significant ? "true" : "false") << ','
                << (p_value ? io::format_number(*p_value) : "NA") << '\n';
            char p_short[32] = "NA";
            if (p_value) std::snprintf(p_short, sizeof p_short, "%.3g", *p_value);
            out << std::left << std::setw(18) << to_string(row.config.category())
                << std::setw(9) << to_string(row.config.pain) << std::right << std::fixed
                << std::setprecision(1) << std::setw(10) << row.mean << std::setw(8)
                << row.sd << std::setw(10) << m.mean << std::setw(8) << m.sd
                << std::setprecision(2) << std::setw(9) << deviation << std::setw(12)
                << p_short << std::setw(5) << (row.significant ? "*" : "") << '\n';
            out.unsetf(std::ios::fixed);
        }
        write_file(path, [&](std::ostream& os) { os << csv.str(); });
        out << published.size() << " rows in " << path << '\n';
        return 0;
    });
}

int cmd_traces(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfigDocument doc = load_document(opts);
        const auto pain = params_for(doc.pain);
        std::vector<LifetimeHistory> histories;
        histories.reserve(static_cast<std::size_t>(doc.execution.n));
        for (int i = 0; i < doc.execution.n; ++i) {
            histories.push_back(run_lifetime(
                doc.environment, doc.agent, doc.weights, pain,
                trial_seed(doc.execution.seed_base, static_cast<std::uint64_t>(i))));
        }
        const TraceAggregate agg = aggregate_traces(histories);
        const std::string path = output_path(doc, "traces.csv");
        write_file(path, [&](std::ostream& os) { io::write_trace_aggregate_csv(os, agg); });
        out << "lifetimes=" << histories.size() << " steps=" << agg.t.size()
            << " final_mean_cum_f_w="
            << io::format_number(agg.cum_f_w.mean.empty() ? 0.0 : agg.cum_f_w.mean.back())
            << " traces=" << path << '\n';
        return 0;
    });
}

}  // namespace painrl::cli

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "painrl/commands.hpp"

namespace {

void add_common(CLI::App* cmd, painrl::cli::CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run document");
    cmd->add_option("--env", opts.env_kind, "stationary | non_stationary");
    cmd->add_option("--seed", opts.seed, "seed (seed_base for batched commands)");
    cmd->add_option("--n", opts.n, "lifetimes per config")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", opts.workers, "worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", opts.out, "output path");
    cmd->add_option("--filter-category", opts.filter_category,
                    "ObjectiveOnly | ExpectOnly | CompareOnly | ObjectiveExpect | "
                    "ObjectiveCompare | ExpectCompare | All");
    cmd->add_option("--filter-pain", opts.filter_pain, "none | normal | chronic");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-learning agents with an inferred pain belief in gridworlds"};
    app.require_subcommand(1);

    painrl::cli::CommonOptions opts;
    painrl::cli::ReportOptions report;
    std::string table_id;

    auto* simulate = app.add_subcommand("simulate", "run one lifetime and write its trace CSV");
    add_common(simulate, opts);
    simulate->add_option("--table", opts.table,
                         "take the reward config from a published row (with the filters)");

    auto* search = app.add_subcommand("search", "grid search; resumable results CSV");
    add_common(search, opts);

    auto* rep = app.add_subcommand("report", "best config per category and pain model");
    add_common(rep, opts);
    rep->add_option("results", report.results_path, "results CSV from search")->required();
    rep->add_option("--histogram", report.histogram_bins,
                    "also write a mean-COR histogram with this many bins")
        ->check(CLI::PositiveNumber);
    rep->add_option("--histogram-out", report.histogram_out, "histogram CSV path");

    auto* replicate = app.add_subcommand("replicate", "rerun the published best configs");
    add_common(replicate, opts);
    replicate->add_option("table", table_id, "stationary | non_stationary")->required();

    auto* traces = app.add_subcommand("traces", "per-step mean/SD over n lifetimes");
    add_common(traces, opts);
    traces->add_option("--table", opts.table,
                       "take the reward config from a published row (with the filters)");

    CLI11_PARSE(app, argc, argv);

    if (*simulate) return painrl::cli::cmd_simulate(opts, std::cout, std::cerr);
    if (*search) return painrl::cli::cmd_search(opts, std::cout, std::cerr);
    if (*rep) return painrl::cli::cmd_report(opts, report, std::cout, std::cerr);
    if (*replicate) return painrl::cli::cmd_replicate(table_id, opts, std::cout, std::cerr);
    if (*traces) return painrl::cli::cmd_traces(opts, std::cout, std::cerr);
    return 1;
}

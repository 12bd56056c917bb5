#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace painrl::cli {

/// Options shared by the subcommands. Unset optionals fall back to the run
/// document, then to built-in defaults.
struct CommonOptions {
    std::string config_path;
    std::optional<std::string> env_kind;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::optional<std::string> filter_category;
    std::optional<std::string> filter_pain;
    /// Published table ("stationary" | "non_stationary") whose row, picked by
    /// the category/pain filters, supplies the reward config.
    std::optional<std::string> table;
};

struct ReportOptions {
    std::string results_path;
    std::optional<int> histogram_bins;
    std::optional<std::string> histogram_out;
};

/// Each command returns a process exit code and writes diagnostics to `err`.
int cmd_simulate(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_search(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_report(const CommonOptions& opts, const ReportOptions& report,
               std::ostream& out, std::ostream& err);
int cmd_replicate(const std::string& table_id, const CommonOptions& opts,
                  std::ostream& out, std::ostream& err);
int cmd_traces(const CommonOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace painrl::cli

#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "painrl/agent.hpp"
#include "painrl/experiment.hpp"

namespace painrl::io {

/// Malformed CSV input; the message carries the line number.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that reads back to the same double. '.' separator,
/// no exponent for the magnitudes used here.
std::string format_number(double value);

/// Parses a full field as a double; throws CsvError on trailing junk.
double parse_number(std::string_view text);

inline constexpr std::string_view kTraceHeader =
    "t,state_col,state_row,action,next_col,next_row,objective,f_h,observation,"
    "p_pain,subjective_pain,f_w,cum_objective,cum_f_w";

inline constexpr std::string_view kResultsHeader =
    "category,pain,w1,w2,w3,w4,rho,epsilon,alpha,n,mean_cor,sd_cor,seed_base";

inline constexpr std::string_view kReportHeader =
    "category,pain,w1,w2,w3,w4,rho,epsilon,alpha,n,mean_cor,sd_cor,seed_base,"
    "t_stat,p_value,significant";

inline constexpr std::string_view kTraceAggregateHeader =
    "t,mean_objective,sd_objective,mean_fw,sd_fw,mean_pain,sd_pain,mean_cum_fw,"
    "sd_cum_fw";

inline constexpr std::string_view kHistogramHeader = "bin_low,bin_high,count";

inline constexpr std::string_view kReplicateHeader =
    "category,pain,w1,w2,w3,w4,rho,epsilon,alpha,n,published_mean,published_sd,"
    "measured_mean,measured_sd,deviation_se,published_significant,measured_p_value";

/// category,pain,w1,w2,w3,w4,rho,epsilon,alpha
std::string format_config_fields(const RewardFunctionConfig& config);

void write_trace_csv(std::ostream& out, const LifetimeHistory& history);

/// One results line, without the trailing newline.
std::string format_result_row(const BatchResult& result);
void write_results_csv(std::ostream& out, std::span<const BatchResult> results);

struct ParsedResults {
    std::vector<BatchResult> rows;
    /// True if the final line lacked its newline and was dropped.
    bool dropped_partial_tail = false;
};

/// Reads a results CSV. With `allow_partial_tail`, an unterminated final
/// line (an interrupted append) is dropped instead of rejected. Every other
/// defect throws CsvError.
ParsedResults parse_results_csv(std::istream& in, bool allow_partial_tail = false);

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);
void write_trace_aggregate_csv(std::ostream& out, const TraceAggregate& agg);
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace painrl::io

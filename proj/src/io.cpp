#include "painrl/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace painrl::io {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string rho_field(const RewardFunctionConfig& c) {
    return c.weights.w3 > 0.0 ? format_number(c.weights.rho) : std::string("NA");
}

}  // namespace

std::string format_config_fields(const RewardFunctionConfig& c) {
    std::string s;
    s += to_string(c.category());
    s += ',';
    s += to_string(c.pain);
    for (double v : {c.weights.w1, c.weights.w2, c.weights.w3, c.weights.w4}) {
        s += ',';
        s += format_number(v);
    }
    s += ',';
    s += rho_field(c);
    s += ',';
    s += format_number(c.epsilon);
    s += ',';
    s += format_number(c.alpha);
    return s;
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw CsvError("line " + std::to_string(line_no) + ": " + what);
}

BatchResult parse_result_line(std::string_view line, std::size_t line_no) {
    const auto f = split(line);
    if (f.size() != 13) fail(line_no, "expected 13 fields");
    try {
        BatchResult r;
        const auto category = parse_category(f[0]);
        const auto pain = parse_pain_condition(f[1]);
        if (!category) fail(line_no, "unknown category '" + std::string(f[0]) + "'");
        if (!pain) fail(line_no, "unknown pain condition '" + std::string(f[1]) + "'");
        r.config.pain = *pain;
        r.config.weights.w1 = parse_number(f[2]);
        r.config.weights.w2 = parse_number(f[3]);
        r.config.weights.w3 = parse_number(f[4]);
        r.config.weights.w4 = parse_number(f[5]);
        r.config.weights.rho = f[6] == "NA" ? kNoAspiration : parse_number(f[6]);
        r.config.epsilon = parse_number(f[7]);
        r.config.alpha = parse_number(f[8]);
        const double n = parse_number(f[9]);
        if (!(n >= 1.0) || n != std::floor(n)) fail(line_no, "invalid n");
        r.n = static_cast<int>(n);
        r.mean = parse_number(f[10]);
        r.sd = parse_number(f[11]);
        const auto [ptr, ec] =
            std::from_chars(f[12].data(), f[12].data() + f[12].size(), r.seed_base);
        if (ec != std::errc{} || ptr != f[12].data() + f[12].size()) {
            fail(line_no, "invalid seed_base");
        }
        if (r.config.category() != *category) {
            fail(line_no, "category does not match weights");
        }
        if (!(r.config.canonical() == r.config)) {
            fail(line_no, "config is not in canonical form");
        }
        return r;
    } catch (const CsvError& e) {
        if (std::string_view(e.what()).starts_with("line ")) throw;
        fail(line_no, e.what());
    }
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general);
    if (ec != std::errc{}) throw std::runtime_error("format_number failed");
    return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw CsvError("invalid number '" + std::string(text) + "'");
    }
    return value;
}

void write_trace_csv(std::ostream& out, const LifetimeHistory& history) {
    out << kTraceHeader << '\n';
    for (const StepRecord& r : history.records) {
        out << r.t << ',' << r.state.col << ',' << r.state.row << ','
            << to_string(r.action) << ',' << r.next_state.col << ','
            << r.next_state.row << ',' << format_number(r.objective) << ','
            << format_number(r.f_h) << ',' << to_string(r.observation) << ','
            << format_number(r.p_pain) << ',' << format_number(r.subjective_pain)
            << ',' << format_number(r.f_w) << ',' << format_number(r.cum_objective)
            << ',' << format_number(r.cum_f_w) << '\n';
    }
}

std::string format_result_row(const BatchResult& r) {
    return format_config_fields(r.config) + ',' + std::to_string(r.n) + ',' +
           format_number(r.mean) + ',' + format_number(r.sd) + ',' +
           std::to_string(r.seed_base);
}

void write_results_csv(std::ostream& out, std::span<const BatchResult> results) {
    out << kResultsHeader << '\n';
    for (const auto& r : results) out << format_result_row(r) << '\n';
}

ParsedResults parse_results_csv(std::istream& in, bool allow_partial_tail) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    ParsedResults parsed;
    if (text.empty()) return parsed;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        ++line_no;
        if (nl == std::string::npos) {
            if (!allow_partial_tail) fail(line_no, "missing line terminator");
            parsed.dropped_partial_tail = true;
            break;
        }
        std::string_view line(text.data() + pos, nl - pos);
        pos = nl + 1;
        if (!header_seen) {
            if (line != kResultsHeader) fail(line_no, "unexpected header");
            header_seen = true;
            continue;
        }
        parsed.rows.push_back(parse_result_line(line, line_no));
    }
    if (!header_seen && !parsed.dropped_partial_tail) fail(1, "missing header");
    return parsed;
}

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
    out << kReportHeader << '\n';
    for (const ReportRow& row : rows) {
        out << format_result_row(row.best) << ',';
        if (row.test) {
            out << format_number(row.test->t_statistic) << ','
                << format_number(row.test->p_value) << ','
                << (row.significant ? "true" : "false");
        } else if (row.missing_baseline) {
            out << "NA,NA,no_baseline";
        } else {
            out << "NA,NA,false";
        }
        out << '\n';
    }
}

void write_trace_aggregate_csv(std::ostream& out, const TraceAggregate& agg) {
    out << kTraceAggregateHeader << '\n';
    for (std::size_t i = 0; i < agg.t.size(); ++i) {
        out << agg.t[i] << ',' << format_number(agg.objective.mean[i]) << ','
            << format_number(agg.objective.sd[i]) << ','
            << format_number(agg.f_w.mean[i]) << ',' << format_number(agg.f_w.sd[i])
            << ',' << format_number(agg.subjective_pain.mean[i]) << ','
            << format_number(agg.subjective_pain.sd[i]) << ','
            << format_number(agg.cum_f_w.mean[i]) << ','
            << format_number(agg.cum_f_w.sd[i]) << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << kHistogramHeader << '\n';
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out << format_number(h.edges[i]) << ',' << format_number(h.edges[i + 1])
            << ',' << h.counts[i] << '\n';
    }
}

}  // namespace painrl::io

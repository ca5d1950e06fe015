#ifndef OPDYN_REPORTING_HPP_
#define OPDYN_REPORTING_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opdyn/scenarios.hpp"

namespace opdyn {

inline constexpr std::string_view kToolName = "opdyn";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Raised on malformed or invalid config text. line() is the 1-based input
// line for per-line failures and 0 for cross-field validation failures.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& message, int line = 0)
        : std::runtime_error(message), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

// Parses the flat key=value config format ('#' starts a comment, blank
// lines ignored). Recognized keys: n_agents, tv_fraction, wise_fraction,
// tolerance, convergence, media_welfare, media_security, expert_welfare,
// expert_security, turns, replications, base_seed, m_attach. Missing keys
// take the ScenarioConfig defaults (convergence 0.5, m_attach 2, turns 100,
// replications 10, media (0.3, 0.8), expert (0.8, 0.3), n_agents 100,
// fractions 0, tolerance 0.5, base_seed 0). Unknown or duplicate keys and
// invalid values raise ConfigError.
ScenarioConfig parse_config(const std::string& text);

// Emits all recognized keys in their documented order; the output reparses
// to an equal config.
std::string serialize_config(const ScenarioConfig& config);

// FNV-1a over the serialized cell configs; stable across runs.
std::uint64_t grid_digest(const ResultSet& result);

// "opdyn <version> seed=<first cell seed> config=<digest hex>"; embedded as
// a comment in CSV and SVG outputs for reproducibility audits.
std::string provenance_line(const ResultSet& result);

inline constexpr std::string_view kTimeSeriesCsvHeader =
    "scenario,cell,tolerance,tv_fraction,wise_fraction,turn,"
    "mean_welfare,mean_security,tv_welfare,tv_security,"
    "wa_welfare,wa_security,wz_welfare,wz_security";

// Writes the aggregated time series of every cell, one row per (cell,
// turn), floats in fixed notation with 6 decimals, per-role columns empty
// when the role has no members. A non-empty comment becomes a leading
// "# ..." line.
void write_timeseries_csv(const ResultSet& result, std::ostream& os,
                          const std::string& comment = "");

// Same format restricted to a single cell; the cell column keeps the cell's
// index within the result set.
void write_cell_csv(const ResultSet& result, std::size_t cell_index,
                    std::ostream& os, const std::string& comment = "");

// One parsed data row of the time-series CSV.
struct TimeSeriesRow {
    std::string scenario;
    std::size_t cell = 0;
    double tolerance = 0.0;
    double tv_fraction = 0.0;
    double wise_fraction = 0.0;
    std::uint32_t turn = 0;
    double mean_welfare = 0.0;
    double mean_security = 0.0;
    std::optional<double> tv_welfare, tv_security;
    std::optional<double> wa_welfare, wa_security;
    std::optional<double> wz_welfare, wz_security;
};

// Reads a time-series CSV back (leading '#' comment lines are skipped).
// Throws std::runtime_error on schema or field errors.
std::vector<TimeSeriesRow> parse_timeseries_csv(std::istream& is);

// Final-state summary of one grid cell; inversion marks final mean welfare
// exceeding final mean security.
struct SummaryRow {
    std::string scenario;
    double tolerance = 0.0;
    double tv_fraction = 0.0;
    double wise_fraction = 0.0;
    double white_fraction = 0.0;
    double final_mean_welfare = 0.0;
    double final_mean_security = 0.0;
    bool inversion = false;
};

// Throws std::invalid_argument on an empty result set.
std::vector<SummaryRow> summarize(const ResultSet& result);

// JSON array of SummaryRow objects with snake_case fields; numeric values
// rounded to 6 decimals.
void write_summary_json(const std::vector<SummaryRow>& rows, std::ostream& os);

// One labeled polyline of an SVG chart.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Emits a standalone SVG line chart: x spans the data range, y is clamped
// to the display range [0, 1], one polyline and one legend entry per
// series. Output bytes depend only on the inputs. Throws
// std::invalid_argument when series (or any series' points) are empty.
void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               std::ostream& os, const std::string& comment = "");

}  // namespace opdyn

#endif  // OPDYN_REPORTING_HPP_

#include "opdyn/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace opdyn {

namespace {

std::string_view trim(std::string_view text) {
    const char* ws = " \t\r\n";
    const std::size_t first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const std::size_t last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view value, std::string_view key, int line) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto result = std::from_chars(first, last, out);
    if (result.ec != std::errc() || result.ptr != last) {
        throw ConfigError("invalid value for " + std::string(key) + ": '" +
                              std::string(value) + "'",
                          line);
    }
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::string fmt6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string fmt2(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t hash) {
    for (const unsigned char byte : data) {
        hash ^= byte;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;

void append_role(std::ostream& os, const std::optional<RoleMeans>& role) {
    if (role) {
        os << ',' << fmt6(role->welfare) << ',' << fmt6(role->security);
    } else {
        os << ",,";
    }
}

void write_cell_rows(const std::string& scenario, const CellResult& cell,
                     std::size_t index, std::ostream& os) {
    for (std::size_t t = 0; t < cell.aggregated.size(); ++t) {
        const TurnStats& stats = cell.aggregated[t];
        os << scenario << ',' << index << ',' << fmt6(cell.config.tolerance)
           << ',' << fmt6(cell.config.tv_fraction) << ','
           << fmt6(cell.config.wise_fraction) << ',' << t << ','
           << fmt6(stats.mean_welfare) << ',' << fmt6(stats.mean_security);
        append_role(os, stats.televiewers);
        append_role(os, stats.wise_agents);
        append_role(os, stats.white_zone);
        os << '\n';
    }
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

template <typename T>
T parse_csv_number(std::string_view value, std::string_view column, int line) {
    try {
        return parse_number<T>(value, column, line);
    } catch (const ConfigError& e) {
        throw std::runtime_error("line " + std::to_string(line) + ": " +
                                 e.what());
    }
}

std::optional<double> parse_csv_optional(std::string_view value,
                                         std::string_view column, int line) {
    if (value.empty()) return std::nullopt;
    return parse_csv_number<double>(value, column, line);
}

double round6(double value) { return std::round(value * 1e6) / 1e6; }

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    std::set<std::string, std::less<>> seen;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const std::size_t hash = line.find('#');
            hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected key=value, got '" + std::string(line) +
                                  "'",
                              line_no);
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) {
            throw ConfigError("empty value for " + std::string(key), line_no);
        }
        if (!seen.insert(std::string(key)).second) {
            throw ConfigError("duplicate key: " + std::string(key), line_no);
        }

        if (key == "n_agents") {
            config.n_agents = parse_number<NodeId>(value, key, line_no);
        } else if (key == "tv_fraction") {
            config.tv_fraction = parse_number<double>(value, key, line_no);
        } else if (key == "wise_fraction") {
            config.wise_fraction = parse_number<double>(value, key, line_no);
        } else if (key == "tolerance") {
            config.tolerance = parse_number<double>(value, key, line_no);
        } else if (key == "convergence") {
            config.convergence = parse_number<double>(value, key, line_no);
        } else if (key == "media_welfare") {
            config.media_message.welfare =
                parse_number<double>(value, key, line_no);
        } else if (key == "media_security") {
            config.media_message.security =
                parse_number<double>(value, key, line_no);
        } else if (key == "expert_welfare") {
            config.expert_message.welfare =
                parse_number<double>(value, key, line_no);
        } else if (key == "expert_security") {
            config.expert_message.security =
                parse_number<double>(value, key, line_no);
        } else if (key == "turns") {
            config.turns = parse_number<std::uint32_t>(value, key, line_no);
        } else if (key == "replications") {
            config.replications =
                parse_number<std::uint32_t>(value, key, line_no);
        } else if (key == "base_seed") {
            config.base_seed = parse_number<std::uint64_t>(value, key, line_no);
        } else if (key == "m_attach") {
            config.m_attach = parse_number<NodeId>(value, key, line_no);
        } else {
            throw ConfigError("unknown key: " + std::string(key), line_no);
        }
    }

    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return config;
}

std::string serialize_config(const ScenarioConfig& config) {
    std::string out;
    const auto kv = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    kv("n_agents", std::to_string(config.n_agents));
    kv("tv_fraction", format_double(config.tv_fraction));
    kv("wise_fraction", format_double(config.wise_fraction));
    kv("tolerance", format_double(config.tolerance));
    kv("convergence", format_double(config.convergence));
    kv("media_welfare", format_double(config.media_message.welfare));
    kv("media_security", format_double(config.media_message.security));
    kv("expert_welfare", format_double(config.expert_message.welfare));
    kv("expert_security", format_double(config.expert_message.security));
    kv("turns", std::to_string(config.turns));
    kv("replications", std::to_string(config.replications));
    kv("base_seed", std::to_string(config.base_seed));
    kv("m_attach", std::to_string(config.m_attach));
    return out;
}

std::uint64_t grid_digest(const ResultSet& result) {
    std::uint64_t hash = fnv1a64(result.name, kFnvBasis);
    hash = fnv1a64("\n", hash);
    for (const CellResult& cell : result.cells) {
        hash = fnv1a64(serialize_config(cell.config), hash);
    }
    return hash;
}

std::string provenance_line(const ResultSet& result) {
    const std::uint64_t seed =
        result.cells.empty() ? 0 : result.cells.front().config.base_seed;
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(grid_digest(result)));
    std::string line;
    line += kToolName;
    line += ' ';
    line += kToolVersion;
    line += " seed=" + std::to_string(seed);
    line += " config=";
    line += digest;
    return line;
}

void write_timeseries_csv(const ResultSet& result, std::ostream& os,
                          const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    os << kTimeSeriesCsvHeader << '\n';
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        write_cell_rows(result.name, result.cells[i], i, os);
    }
}

void write_cell_csv(const ResultSet& result, std::size_t cell_index,
                    std::ostream& os, const std::string& comment) {
    if (cell_index >= result.cells.size()) {
        throw std::out_of_range("cell index " + std::to_string(cell_index) +
                                " out of range");
    }
    if (!comment.empty()) os << "# " << comment << '\n';
    os << kTimeSeriesCsvHeader << '\n';
    write_cell_rows(result.name, result.cells[cell_index], cell_index, os);
}

std::vector<TimeSeriesRow> parse_timeseries_csv(std::istream& is) {
    std::vector<TimeSeriesRow> rows;
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(is, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty() || raw.front() == '#') continue;
        if (!header_seen) {
            if (raw != kTimeSeriesCsvHeader) {
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": unexpected header: " + raw);
            }
            header_seen = true;
            continue;
        }

        const std::vector<std::string_view> fields = split_fields(raw);
        if (fields.size() != 14) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 14 fields, got " +
                                     std::to_string(fields.size()));
        }
        TimeSeriesRow row;
        row.scenario = std::string(fields[0]);
        row.cell = parse_csv_number<std::size_t>(fields[1], "cell", line_no);
        row.tolerance =
            parse_csv_number<double>(fields[2], "tolerance", line_no);
        row.tv_fraction =
            parse_csv_number<double>(fields[3], "tv_fraction", line_no);
        row.wise_fraction =
            parse_csv_number<double>(fields[4], "wise_fraction", line_no);
        row.turn = parse_csv_number<std::uint32_t>(fields[5], "turn", line_no);
        row.mean_welfare =
            parse_csv_number<double>(fields[6], "mean_welfare", line_no);
        row.mean_security =
            parse_csv_number<double>(fields[7], "mean_security", line_no);
        row.tv_welfare = parse_csv_optional(fields[8], "tv_welfare", line_no);
        row.tv_security = parse_csv_optional(fields[9], "tv_security", line_no);
        row.wa_welfare = parse_csv_optional(fields[10], "wa_welfare", line_no);
        row.wa_security =
            parse_csv_optional(fields[11], "wa_security", line_no);
        row.wz_welfare = parse_csv_optional(fields[12], "wz_welfare", line_no);
        row.wz_security =
            parse_csv_optional(fields[13], "wz_security", line_no);
        if (row.tv_welfare.has_value() != row.tv_security.has_value() ||
            row.wa_welfare.has_value() != row.wa_security.has_value() ||
            row.wz_welfare.has_value() != row.wz_security.has_value()) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": half-empty per-role column pair");
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("missing header row");
    return rows;
}

std::vector<SummaryRow> summarize(const ResultSet& result) {
    if (result.cells.empty()) {
        throw std::invalid_argument("summarize: empty result set");
    }
    std::vector<SummaryRow> rows;
    rows.reserve(result.cells.size());
    for (const CellResult& cell : result.cells) {
        if (cell.aggregated.empty()) {
            throw std::invalid_argument("summarize: cell has no statistics");
        }
        const TurnStats& last = cell.aggregated.back();
        SummaryRow row;
        row.scenario = result.name;
        row.tolerance = cell.config.tolerance;
        row.tv_fraction = cell.config.tv_fraction;
        row.wise_fraction = cell.config.wise_fraction;
        row.white_fraction = std::clamp(
            1.0 - row.tv_fraction - row.wise_fraction, 0.0, 1.0);
        row.final_mean_welfare = last.mean_welfare;
        row.final_mean_security = last.mean_security;
        row.inversion = last.mean_welfare > last.mean_security;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_json(const std::vector<SummaryRow>& rows,
                        std::ostream& os) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const SummaryRow& row : rows) {
        nlohmann::ordered_json obj;
        obj["scenario"] = row.scenario;
        obj["tolerance"] = round6(row.tolerance);
        obj["tv_fraction"] = round6(row.tv_fraction);
        obj["wise_fraction"] = round6(row.wise_fraction);
        obj["white_fraction"] = round6(row.white_fraction);
        obj["final_mean_welfare"] = round6(row.final_mean_welfare);
        obj["final_mean_security"] = round6(row.final_mean_security);
        obj["inversion"] = row.inversion;
        array.push_back(std::move(obj));
    }
    os << array.dump(2) << '\n';
}

void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               std::ostream& os, const std::string& comment) {
    if (series.empty()) throw std::invalid_argument("emit_plot: no series");
    for (const PlotSeries& s : series) {
        if (s.points.empty()) {
            throw std::invalid_argument("emit_plot: series '" + s.label +
                                        "' has no points");
        }
    }

    double x_min = series.front().points.front().first;
    double x_max = x_min;
    for (const PlotSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }

    // Plot rectangle inside the 800x500 canvas; legend sits to the right.
    const double px0 = 60.0, px1 = 620.0, py0 = 45.0, py1 = 455.0;
    const auto to_px = [&](double x) {
        return px0 + (x - x_min) / (x_max - x_min) * (px1 - px0);
    };
    const auto to_py = [&](double y) {
        return py1 - std::clamp(y, 0.0, 1.0) * (py1 - py0);
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
          "height=\"500\" viewBox=\"0 0 800 500\">\n";
    if (!comment.empty()) {
        std::string safe = comment;
        std::size_t pos = 0;
        while ((pos = safe.find("--", pos)) != std::string::npos) {
            safe.replace(pos, 2, "- -");
        }
        os << "<!-- " << safe << " -->\n";
    }
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" "
          "fill=\"#ffffff\"/>\n"
       << "<text x=\"340\" y=\"26\" font-family=\"sans-serif\" "
          "font-size=\"16\" text-anchor=\"middle\">"
       << xml_escape(title) << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        const double y = i * 0.25;
        const std::string py = fmt2(to_py(y));
        os << "<line x1=\"60.00\" y1=\"" << py << "\" x2=\"620.00\" y2=\""
           << py << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
           << "<text x=\"54\" y=\"" << fmt2(to_py(y) + 4.0)
           << "\" font-family=\"sans-serif\" font-size=\"11\" "
              "text-anchor=\"end\">"
           << fmt2(y) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double x = x_min + (x_max - x_min) * i / 4.0;
        const std::string px = fmt2(to_px(x));
        char label[32];
        std::snprintf(label, sizeof label, "%.4g", x);
        os << "<line x1=\"" << px << "\" y1=\"455.00\" x2=\"" << px
           << "\" y2=\"460.00\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
           << "<text x=\"" << px
           << "\" y=\"472\" font-family=\"sans-serif\" font-size=\"11\" "
              "text-anchor=\"middle\">"
           << label << "</text>\n";
    }
    os << "<line x1=\"60.00\" y1=\"455.00\" x2=\"620.00\" y2=\"455.00\" "
          "stroke=\"#333333\" stroke-width=\"1\"/>\n"
       << "<line x1=\"60.00\" y1=\"45.00\" x2=\"60.00\" y2=\"455.00\" "
          "stroke=\"#333333\" stroke-width=\"1\"/>\n"
       << "<text x=\"340\" y=\"492\" font-family=\"sans-serif\" "
          "font-size=\"12\" text-anchor=\"middle\">"
       << xml_escape(x_label) << "</text>\n"
       << "<text x=\"16\" y=\"250\" font-family=\"sans-serif\" "
          "font-size=\"12\" text-anchor=\"middle\" "
          "transform=\"rotate(-90 16 250)\">"
       << xml_escape(y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [x, y] : series[i].points) {
            if (!first) os << ' ';
            first = false;
            os << fmt2(to_px(x)) << ',' << fmt2(to_py(y));
        }
        os << "\"/>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        const double y = 60.0 + 20.0 * static_cast<double>(i);
        os << "<line x1=\"632.00\" y1=\"" << fmt2(y) << "\" x2=\"656.00\" y2=\""
           << fmt2(y) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"662\" y=\"" << fmt2(y + 4.0)
           << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << xml_escape(series[i].label) << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace opdyn

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include "opdyn/reporting.hpp"

using namespace opdyn;

namespace {

ResultSet sample_result() {
    ScenarioConfig config;
    config.tolerance = 0.2;
    config.tv_fraction = 0.4;
    config.wise_fraction = 0.0;
    config.base_seed = 42;

    TurnStats t0{0.25, 0.75, RoleMeans{0.1, 0.9}, std::nullopt,
                 RoleMeans{0.3, 0.7}};
    TurnStats t1{0.5, 0.5, RoleMeans{0.2, 0.8}, std::nullopt,
                 RoleMeans{0.55, 0.45}};

    ResultSet result;
    result.name = "s";
    result.cells.push_back(CellResult{config, {t0, t1}, {}});
    return result;
}

ConfigError capture(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("unreachable");
}

}  // namespace

TEST_CASE("minimal config text fills the documented defaults") {
    const ScenarioConfig config = parse_config(
        "n_agents=100\ntolerance=0.5\ntv_fraction=0.4\nwise_fraction=0.6\n"
        "base_seed=42");
    CHECK(config.n_agents == 100);
    CHECK(config.tolerance == 0.5);
    CHECK(config.tv_fraction == 0.4);
    CHECK(config.wise_fraction == 0.6);
    CHECK(config.base_seed == 42);
    CHECK(config.convergence == 0.5);
    CHECK(config.m_attach == 2);
    CHECK(config.turns == 100);
    CHECK(config.replications == 10);
    CHECK(config.media_message == Message{0.3, 0.8});
    CHECK(config.expert_message == Message{0.8, 0.3});
}

TEST_CASE("config parsing tolerates comments and whitespace") {
    const ScenarioConfig config = parse_config(
        "# lead comment\n"
        "  n_agents =  40  \n"
        "\n"
        "tolerance=0.3 # trailing comment\n"
        "turns=0\n");
    CHECK(config.n_agents == 40);
    CHECK(config.tolerance == 0.3);
    CHECK(config.turns == 0);
}

TEST_CASE("an empty config is the default config") {
    CHECK(parse_config("") == ScenarioConfig{});
    CHECK(parse_config("# only a comment\n") == ScenarioConfig{});
}

TEST_CASE("config errors carry the offending line") {
    ConfigError e = capture("n_agents=10\nbogus=1\n");
    CHECK(std::string(e.what()) == "unknown key: bogus");
    CHECK(e.line() == 2);

    e = capture("n_agents=10\nn_agents=20\n");
    CHECK(std::string(e.what()) == "duplicate key: n_agents");
    CHECK(e.line() == 2);

    e = capture("tolerance\n");
    CHECK(e.line() == 1);

    e = capture("tolerance=\n");
    CHECK(std::string(e.what()) == "empty value for tolerance");

    e = capture("tolerance=0.x\n");
    CHECK(std::string(e.what()) ==
          "invalid value for tolerance: '0.x'");

    e = capture("n_agents=1e2\n");
    CHECK(e.line() == 1);
}

TEST_CASE("cross-field validation failures surface as config errors") {
    ConfigError e = capture("tv_fraction=0.7\nwise_fraction=0.5\n");
    CHECK(e.line() == 0);
    CHECK(std::string(e.what()).find("must not exceed 1") !=
          std::string::npos);

    e = capture("tolerance=2\n");
    CHECK(std::string(e.what()).find("tolerance") != std::string::npos);

    CHECK_THROWS_AS(parse_config("convergence=0.75\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("media_security=1.5\n"), ConfigError);
}

TEST_CASE("internal-only knobs are not part of the file format") {
    CHECK_THROWS_AS(parse_config("gossip_rounds=2\n"), ConfigError);
}

TEST_CASE("serialization is stable and round-trips exactly") {
    CHECK(serialize_config(ScenarioConfig{}) ==
          "n_agents=100\n"
          "tv_fraction=0\n"
          "wise_fraction=0\n"
          "tolerance=0.5\n"
          "convergence=0.5\n"
          "media_welfare=0.3\n"
          "media_security=0.8\n"
          "expert_welfare=0.8\n"
          "expert_security=0.3\n"
          "turns=100\n"
          "replications=10\n"
          "base_seed=0\n"
          "m_attach=2\n");

    ScenarioConfig config;
    config.n_agents = 1234;
    config.tv_fraction = 0.1 + 0.2;  // not exactly 0.3 in binary
    config.wise_fraction = 0.25;
    config.tolerance = 1.0 / 3.0;
    config.convergence = 0.125;
    config.media_message = {0.05, 0.95};
    config.expert_message = {0.9, 0.1};
    config.turns = 0;
    config.replications = 1;
    config.base_seed = 18446744073709551615ULL;
    config.m_attach = 7;
    CHECK(parse_config(serialize_config(config)) == config);
}

TEST_CASE("time-series csv uses the fixed header and six decimals") {
    std::ostringstream os;
    write_timeseries_csv(sample_result(), os, "check");
    CHECK(os.str() ==
          "# check\n"
          "scenario,cell,tolerance,tv_fraction,wise_fraction,turn,"
          "mean_welfare,mean_security,tv_welfare,tv_security,"
          "wa_welfare,wa_security,wz_welfare,wz_security\n"
          "s,0,0.200000,0.400000,0.000000,0,0.250000,0.750000,"
          "0.100000,0.900000,,,0.300000,0.700000\n"
          "s,0,0.200000,0.400000,0.000000,1,0.500000,0.500000,"
          "0.200000,0.800000,,,0.550000,0.450000\n");
}

TEST_CASE("single-cell export keeps the cell's grid index") {
    ResultSet result = sample_result();
    result.cells.push_back(result.cells.front());

    std::ostringstream os;
    write_cell_csv(result, 1, os);
    const std::string text = os.str();
    CHECK(text.find("\ns,1,") != std::string::npos);
    CHECK(text.find("\ns,0,") == std::string::npos);

    CHECK_THROWS_AS(write_cell_csv(result, 2, os), std::out_of_range);
}

TEST_CASE("the csv round-trips through the parser") {
    std::ostringstream os;
    write_timeseries_csv(sample_result(), os, "provenance here");

    std::istringstream is(os.str());
    const std::vector<TimeSeriesRow> rows = parse_timeseries_csv(is);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scenario == "s");
    CHECK(rows[0].cell == 0);
    CHECK(rows[0].tolerance == doctest::Approx(0.2));
    CHECK(rows[0].tv_fraction == doctest::Approx(0.4));
    CHECK(rows[0].turn == 0);
    CHECK(rows[1].turn == 1);
    CHECK(rows[0].mean_welfare == doctest::Approx(0.25).epsilon(5e-7));
    CHECK(rows[0].mean_security == doctest::Approx(0.75).epsilon(5e-7));
    REQUIRE(rows[0].tv_welfare.has_value());
    CHECK(*rows[0].tv_welfare == doctest::Approx(0.1).epsilon(5e-7));
    CHECK_FALSE(rows[0].wa_welfare.has_value());
    REQUIRE(rows[1].wz_security.has_value());
    CHECK(*rows[1].wz_security == doctest::Approx(0.45).epsilon(5e-7));
}

TEST_CASE("the csv parser rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_timeseries_csv(empty), std::runtime_error);

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(parse_timeseries_csv(bad_header), std::runtime_error);

    const std::string header(kTimeSeriesCsvHeader);
    std::istringstream short_row(header + "\ns,0,0.1\n");
    CHECK_THROWS_AS(parse_timeseries_csv(short_row), std::runtime_error);

    std::istringstream half_pair(
        header + "\ns,0,0.1,0.2,0.3,0,0.5,0.5,0.1,,,,,\n");
    CHECK_THROWS_AS(parse_timeseries_csv(half_pair), std::runtime_error);

    std::istringstream bad_number(
        header + "\ns,0,0.1,0.2,0.3,zero,0.5,0.5,,,,,,\n");
    CHECK_THROWS_AS(parse_timeseries_csv(bad_number), std::runtime_error);
}

TEST_CASE("summaries take the last recorded turn of each cell") {
    ResultSet result = sample_result();
    {
        ScenarioConfig config;
        config.tolerance = 0.5;
        config.tv_fraction = 0.4;
        config.wise_fraction = 0.6;
        TurnStats last{0.7, 0.3, std::nullopt, std::nullopt, std::nullopt};
        result.cells.push_back(CellResult{config, {last}, {}});
    }

    const std::vector<SummaryRow> rows = summarize(result);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scenario == "s");
    CHECK(rows[0].final_mean_welfare == doctest::Approx(0.5));
    CHECK(rows[0].final_mean_security == doctest::Approx(0.5));
    CHECK(rows[0].white_fraction == doctest::Approx(0.6));
    CHECK_FALSE(rows[0].inversion);

    CHECK(rows[1].white_fraction == 0.0);
    CHECK(rows[1].inversion);

    CHECK_THROWS_AS(summarize(ResultSet{}), std::invalid_argument);
    ResultSet no_stats;
    no_stats.cells.push_back(CellResult{});
    CHECK_THROWS_AS(summarize(no_stats), std::invalid_argument);
}

TEST_CASE("summary json is an array with rounded values") {
    SummaryRow row;
    row.scenario = "s2";
    row.tolerance = 0.5;
    row.tv_fraction = 0.25;
    row.wise_fraction = 0.25;
    row.white_fraction = 0.5;
    row.final_mean_welfare = 0.123456789;
    row.final_mean_security = 0.75;
    row.inversion = false;

    std::ostringstream os;
    write_summary_json({row}, os);
    CHECK(os.str() ==
          "[\n"
          "  {\n"
          "    \"scenario\": \"s2\",\n"
          "    \"tolerance\": 0.5,\n"
          "    \"tv_fraction\": 0.25,\n"
          "    \"wise_fraction\": 0.25,\n"
          "    \"white_fraction\": 0.5,\n"
          "    \"final_mean_welfare\": 0.123457,\n"
          "    \"final_mean_security\": 0.75,\n"
          "    \"inversion\": false\n"
          "  }\n"
          "]\n");

    std::ostringstream empty;
    write_summary_json({}, empty);
    CHECK(empty.str() == "[]\n");
}

TEST_CASE("provenance line names the tool, seed, and config digest") {
    const ResultSet result = sample_result();
    const std::string line = provenance_line(result);
    const std::string prefix = "opdyn 0.1.0 seed=42 config=";
    REQUIRE(line.size() == prefix.size() + 16);
    CHECK(line.substr(0, prefix.size()) == prefix);
    for (const char c : line.substr(prefix.size()))
        CHECK(std::isxdigit(static_cast<unsigned char>(c)));

    CHECK(provenance_line(result) == line);

    ResultSet other = sample_result();
    other.cells.front().config.tolerance = 0.9;
    CHECK(provenance_line(other) != line);
    CHECK(grid_digest(other) != grid_digest(result));
}

TEST_CASE("plots are deterministic standalone svg documents") {
    const std::vector<PlotSeries> series{
        {"welfare", {{0.0, 0.2}, {1.0, 0.4}, {2.0, 0.6}}},
        {"a<b", {{0.0, 0.9}, {1.0, 0.7}, {2.0, 0.5}}},
    };
    std::ostringstream os;
    emit_plot(series, "demo", "turn", "mean opinion", os, "prov -- line");
    const std::string svg = os.str();

    CHECK(svg.rfind("<?xml version=\"1.0\"", 0) == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") !=
          std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("a&lt;b") != std::string::npos);
    CHECK(svg.find("prov - - line") != std::string::npos);
    CHECK(svg.find("demo") != std::string::npos);

    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1))
        ++polylines;
    CHECK(polylines == 2);

    std::ostringstream again;
    emit_plot(series, "demo", "turn", "mean opinion", again, "prov -- line");
    CHECK(again.str() == svg);
}

TEST_CASE("plot values outside the display range are clamped") {
    const std::vector<PlotSeries> series{{"s", {{0.0, 1.5}, {1.0, -0.5}}}};
    std::ostringstream os;
    emit_plot(series, "t", "x", "y", os);
    // y=1 maps to the plot top, y=0 to the bottom axis.
    CHECK(os.str().find("45.00") != std::string::npos);
    CHECK(os.str().find("455.00") != std::string::npos);
}

TEST_CASE("degenerate x ranges still render") {
    const std::vector<PlotSeries> series{{"s", {{3.0, 0.5}}}};
    std::ostringstream os;
    CHECK_NOTHROW(emit_plot(series, "t", "x", "y", os));
    CHECK(os.str().find("<polyline") != std::string::npos);
}

TEST_CASE("plotting nothing is an error") {
    std::ostringstream os;
    CHECK_THROWS_AS(emit_plot({}, "t", "x", "y", os), std::invalid_argument);
    CHECK_THROWS_AS(emit_plot({{"empty", {}}}, "t", "x", "y", os),
                    std::invalid_argument);
}

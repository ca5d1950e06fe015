#include "opdyn/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "opdyn/graph.hpp"
#include "opdyn/reporting.hpp"
#include "opdyn/scenarios.hpp"

namespace opdyn {

namespace {

namespace fs = std::filesystem;

// Failures talking to the filesystem; mapped to exit status 1, while
// ConfigError and std::invalid_argument map to 2.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    if (is.bad()) throw IoError("error reading " + path.string());
    return buf.str();
}

// Binary mode keeps output byte-identical across platforms.
void write_text_file(const fs::path& path,
                     const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    writer(os);
    os.flush();
    if (!os) throw IoError("error writing " + path.string());
}

std::string fmt_tol(double tolerance) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", tolerance);
    return buf;
}

std::string fmt6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::vector<PlotSeries> means_series(const TimeSeries& stats) {
    PlotSeries welfare{"welfare", {}};
    PlotSeries security{"security", {}};
    welfare.points.reserve(stats.size());
    security.points.reserve(stats.size());
    for (std::size_t t = 0; t < stats.size(); ++t) {
        welfare.points.emplace_back(static_cast<double>(t),
                                    stats[t].mean_welfare);
        security.points.emplace_back(static_cast<double>(t),
                                     stats[t].mean_security);
    }
    return {std::move(welfare), std::move(security)};
}

int cmd_run(const std::string& config_path, std::string out_dir,
            const std::optional<std::uint64_t>& seed_override,
            std::ostream& out) {
    const std::string text = read_text_file(config_path);
    ScenarioConfig config = parse_config(text);
    if (seed_override) {
        config.base_seed = *seed_override;
        config.validate();
    }
    if (out_dir.empty()) {
        out_dir = "results/run-" + std::to_string(config.base_seed);
    }

    ResultSet result;
    result.name = "run";
    result.cells.push_back(run_cell(config));
    const std::string provenance = provenance_line(result);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file(dir / "timeseries.csv", [&](std::ostream& os) {
        write_timeseries_csv(result, os, provenance);
    });
    write_text_file(dir / "summary.json", [&](std::ostream& os) {
        write_summary_json(summarize(result), os);
    });
    write_text_file(dir / "means.svg", [&](std::ostream& os) {
        emit_plot(means_series(result.cells.front().aggregated),
                  "population means", "turn", "mean opinion", os, provenance);
    });
    out << "run complete: " << out_dir << '\n';
    return 0;
}

int cmd_scenario(int id, std::string out_dir, std::uint64_t base_seed,
                 unsigned jobs, std::ostream& out) {
    const SweepGrid grid = scenario_grid(id, base_seed);
    if (out_dir.empty()) {
        out_dir = "results/" + grid.name + "-" + std::to_string(base_seed);
    }
    const ResultSet result = run_sweep(grid, jobs);
    const std::string provenance = provenance_line(result);

    const fs::path dir(out_dir);
    fs::create_directories(dir / "cells");
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "cell_%03zu", i);
        write_text_file(dir / "cells" / (std::string(stem) + ".csv"),
                        [&](std::ostream& os) {
                            write_cell_csv(result, i, os, provenance);
                        });
        write_text_file(dir / "cells" / (std::string(stem) + ".config"),
                        [&](std::ostream& os) {
                            os << serialize_config(result.cells[i].config);
                        });
    }
    write_text_file(dir / "timeseries.csv", [&](std::ostream& os) {
        write_timeseries_csv(result, os, provenance);
    });
    write_text_file(dir / "summary.json", [&](std::ostream& os) {
        write_summary_json(summarize(result), os);
    });

    if (id == 1) {
        // One cell per tolerance: chart each cell's aggregated time series.
        for (const CellResult& cell : result.cells) {
            const std::string tol = fmt_tol(cell.config.tolerance);
            write_text_file(
                dir / ("timeseries-tol-" + tol + ".svg"),
                [&](std::ostream& os) {
                    emit_plot(means_series(cell.aggregated),
                              grid.name + " tolerance " + tol, "turn",
                              "mean opinion", os, provenance);
                });
        }
    } else {
        // Several broadcaster shares per tolerance: chart final means
        // against tv_fraction, one file per tolerance.
        std::vector<double> tolerances;
        for (const CellResult& cell : result.cells) {
            if (std::find(tolerances.begin(), tolerances.end(),
                          cell.config.tolerance) == tolerances.end()) {
                tolerances.push_back(cell.config.tolerance);
            }
        }
        for (const double tolerance : tolerances) {
            PlotSeries welfare{"welfare", {}};
            PlotSeries security{"security", {}};
            for (const CellResult& cell : result.cells) {
                if (cell.config.tolerance != tolerance) continue;
                const TurnStats& last = cell.aggregated.back();
                welfare.points.emplace_back(cell.config.tv_fraction,
                                            last.mean_welfare);
                security.points.emplace_back(cell.config.tv_fraction,
                                             last.mean_security);
            }
            const std::string tol = fmt_tol(tolerance);
            write_text_file(
                dir / ("final-means-tol-" + tol + ".svg"),
                [&](std::ostream& os) {
                    emit_plot({welfare, security},
                              grid.name + " tolerance " + tol, "tv_fraction",
                              "final mean opinion", os, provenance);
                });
        }
    }
    out << grid.name << ": " << result.cells.size() << " cells -> " << out_dir
        << '\n';
    return 0;
}

int cmd_net_stats(NodeId n, NodeId m_attach, std::uint64_t seed,
                  const std::string& edges_path, std::ostream& out) {
    const GraphParams params{n, m_attach, seed};
    const Graph graph = generate_scale_free(params);
    const std::vector<NodeId> degrees = graph.degrees();
    const auto [min_it, max_it] =
        std::minmax_element(degrees.begin(), degrees.end());
    const double mean = 2.0 * static_cast<double>(graph.edge_count()) /
                        static_cast<double>(graph.node_count());

    out << "nodes: " << graph.node_count() << '\n';
    out << "edges: " << graph.edge_count() << '\n';
    out << "degree min: " << *min_it << '\n';
    out << "degree max: " << *max_it << '\n';
    out << "degree mean: " << fmt6(mean) << '\n';
    constexpr NodeId k_min = 5;
    try {
        const double exponent = degree_exponent_estimate(graph, k_min);
        out << "tail exponent (k_min=" << k_min << "): " << fmt6(exponent)
            << '\n';
    } catch (const std::invalid_argument& e) {
        out << "tail exponent (k_min=" << k_min << "): unavailable ("
            << e.what() << ")\n";
    }
    if (!edges_path.empty()) {
        write_text_file(edges_path,
                        [&](std::ostream& os) { write_edge_list(graph, os); });
        out << "edge list: " << edges_path << '\n';
    }
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_path,
             std::ostream& out) {
    const std::string text = read_text_file(csv_path);

    // Reuse the input's provenance comment, if any, so the chart stays
    // traceable to the producing run.
    std::string comment;
    if (text.rfind("# ", 0) == 0) {
        const std::size_t eol = text.find('\n');
        comment = text.substr(2, eol == std::string::npos ? std::string::npos
                                                          : eol - 2);
    }

    std::vector<TimeSeriesRow> rows;
    try {
        std::istringstream is(text);
        rows = parse_timeseries_csv(is);
    } catch (const std::runtime_error& e) {
        throw ConfigError("bad csv: " + std::string(e.what()));
    }
    if (rows.empty()) throw ConfigError("csv has no data rows");

    std::map<std::size_t, std::vector<const TimeSeriesRow*>> by_cell;
    for (const TimeSeriesRow& row : rows) by_cell[row.cell].push_back(&row);

    std::vector<PlotSeries> series;
    for (const auto& [cell, cell_rows] : by_cell) {
        const std::string prefix =
            by_cell.size() == 1 ? "" : "c" + std::to_string(cell) + " ";
        PlotSeries welfare{prefix + "welfare", {}};
        PlotSeries security{prefix + "security", {}};
        for (const TimeSeriesRow* row : cell_rows) {
            welfare.points.emplace_back(static_cast<double>(row->turn),
                                        row->mean_welfare);
            security.points.emplace_back(static_cast<double>(row->turn),
                                         row->mean_security);
        }
        series.push_back(std::move(welfare));
        series.push_back(std::move(security));
    }

    const std::string title = rows.front().scenario + " population means";
    write_text_file(out_path, [&](std::ostream& os) {
        emit_plot(series, title, "turn", "mean opinion", os, comment);
    });
    out << "plot written: " << out_path << '\n';
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"bounded-confidence opinion dynamics simulator"};
    app.name("opdyn");
    app.require_subcommand(1);

    auto* run_cmd =
        app.add_subcommand("run", "run one config file and write its reports");
    std::string run_config;
    run_cmd->add_option("--config", run_config, "key=value config file")
        ->required();
    std::string run_out;
    run_cmd->add_option("--out", run_out,
                        "output directory (default results/run-<seed>)");
    std::optional<std::uint64_t> run_seed;
    run_cmd->add_option("--seed", run_seed, "override the config's base_seed");

    auto* scen_cmd =
        app.add_subcommand("scenario", "run one of the four predefined sweeps");
    scen_cmd->alias("sweep");
    int scen_id = 0;
    scen_cmd->add_option("--id", scen_id, "sweep id")
        ->required()
        ->check(CLI::Range(1, 4));
    std::string scen_out;
    scen_cmd->add_option(
        "--out", scen_out,
        "output directory (default results/scenario<id>-<seed>)");
    std::uint64_t scen_seed = 1;
    scen_cmd->add_option("--seed", scen_seed, "sweep base seed")
        ->capture_default_str();
    unsigned scen_jobs = 1;
    scen_cmd->add_option("--jobs", scen_jobs, "worker threads")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));

    auto* net_cmd = app.add_subcommand(
        "net-stats", "generate a network and print degree statistics");
    NodeId net_n = 0;
    net_cmd->add_option("--n", net_n, "node count")->required();
    NodeId net_m = 2;
    net_cmd->add_option("--m", net_m, "edges attached per new node")
        ->capture_default_str();
    std::uint64_t net_seed = 0;
    net_cmd->add_option("--seed", net_seed, "generator seed")
        ->capture_default_str();
    std::string net_edges;
    net_cmd->add_option("--edges", net_edges,
                        "also write the edge list to this path");

    auto* plot_cmd = app.add_subcommand(
        "plot", "render a time-series csv as an svg line chart");
    std::string plot_csv;
    plot_cmd->add_option("--csv", plot_csv, "input time-series csv")
        ->required();
    std::string plot_out;
    plot_cmd->add_option("--out", plot_out, "output svg path")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run_cmd)) {
            return cmd_run(run_config, run_out, run_seed, out);
        }
        if (app.got_subcommand(scen_cmd)) {
            return cmd_scenario(scen_id, scen_out, scen_seed, scen_jobs, out);
        }
        if (app.got_subcommand(net_cmd)) {
            return cmd_net_stats(net_n, net_m, net_seed, net_edges, out);
        }
        if (app.got_subcommand(plot_cmd)) {
            return cmd_plot(plot_csv, plot_out, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what();
        if (e.line() > 0) err << " (line " << e.line() << ")";
        err << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace opdyn

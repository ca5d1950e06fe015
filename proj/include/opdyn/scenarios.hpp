#ifndef OPDYN_SCENARIOS_HPP_
#define OPDYN_SCENARIOS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "opdyn/engine.hpp"

namespace opdyn {

// A named list of simulation cells sharing n_agents, turns and
// replications; cells differ only in swept parameters.
struct SweepGrid {
    std::string name;
    std::vector<ScenarioConfig> cells;

    bool operator==(const SweepGrid&) const = default;
};

struct CellResult {
    ScenarioConfig config;
    TimeSeries aggregated;
    std::vector<TimeSeries> replications;
};

struct ResultSet {
    std::string name;
    std::vector<CellResult> cells;
};

// The four experiment batteries, 100 agents, 100 turns, 10 replications
// each. Cells are ordered tolerance-major then by tv_fraction; cell k gets
// base_seed = mix_seed(base_seed, k).
//
// scenario1: pure gossip, tolerance 0.1..0.9 step 0.1 (9 cells).
// scenario2: media broadcast reach 0..1 step 0.1 x tolerance 0.1..0.9
//            (99 cells), media message (welfare 0.3, security 0.8).
// scenario3: TeleViewer/WiseAgent splits 0..1 step 0.1 summing to 1 x
//            tolerance {0.2, 0.5, 0.8} (33 cells), expert message
//            (welfare 0.8, security 0.3).
// scenario4: splits with a fixed 30% white zone, tv 0..0.7 step 0.1 x
//            tolerance {0.2, 0.5, 0.8} (24 cells).
SweepGrid scenario1_grid(std::uint64_t base_seed);
SweepGrid scenario2_grid(std::uint64_t base_seed);
SweepGrid scenario3_grid(std::uint64_t base_seed);
SweepGrid scenario4_grid(std::uint64_t base_seed);

// Dispatch by battery id 1..4; throws std::invalid_argument otherwise.
SweepGrid scenario_grid(int id, std::uint64_t base_seed);

// Runs all replications of one cell and aggregates them.
CellResult run_cell(const ScenarioConfig& config);

// Runs every cell of the grid on up to max_parallel worker threads.
// Results are merged by cell index, so the output is identical for any
// max_parallel >= 1. A failing cell is reported with its index.
ResultSet run_sweep(const SweepGrid& grid, unsigned max_parallel = 1);

}  // namespace opdyn

#endif  // OPDYN_SCENARIOS_HPP_

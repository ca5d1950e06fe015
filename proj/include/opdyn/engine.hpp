#ifndef OPDYN_ENGINE_HPP_
#define OPDYN_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "opdyn/dynamics.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/rng.hpp"

namespace opdyn {

// Complete parameterization of one simulation cell.
struct ScenarioConfig {
    std::uint32_t n_agents = 100;
    double tv_fraction = 0.0;
    double wise_fraction = 0.0;
    double tolerance = 0.5;
    double convergence = 0.5;
    Message media_message{0.3, 0.8};
    Message expert_message{0.8, 0.3};
    std::uint32_t turns = 100;
    std::uint32_t replications = 10;
    std::uint64_t base_seed = 0;
    std::uint32_t m_attach = 2;
    // Gossip receptions per agent per turn. Not part of the config file
    // format; programmatic only.
    std::uint32_t gossip_rounds = 1;

    bool operator==(const ScenarioConfig&) const = default;

    // Graph parameters for one replication; n is forced to n_agents.
    GraphParams graph_params(std::uint64_t seed) const {
        return {n_agents, m_attach, seed};
    }

    UpdateParams update_params() const { return {tolerance, convergence}; }

    // Throws std::invalid_argument naming the violated field.
    void validate() const;
};

struct SimulationState {
    Graph graph;
    std::vector<Agent> agents;
    std::uint32_t turn = 0;
};

struct RoleMeans {
    double welfare = 0.0;
    double security = 0.0;

    bool operator==(const RoleMeans&) const = default;
};

// Population and per-role opinion means at one recorded turn; a role entry
// is absent when the role has no members.
struct TurnStats {
    double mean_welfare = 0.0;
    double mean_security = 0.0;
    std::optional<RoleMeans> televiewers;
    std::optional<RoleMeans> wise_agents;
    std::optional<RoleMeans> white_zone;

    bool operator==(const TurnStats&) const = default;
};

// Entry t holds the statistics after t turns; entry 0 is the initial state,
// so a run of T turns yields T + 1 entries.
using TimeSeries = std::vector<TurnStats>;

// Builds the initial state: generates the interaction graph with seed
// mix_seed(seed, 0), then from stream mix_seed(seed, 1) draws each agent's
// welfare and security independently uniform on [0, 1) and assigns roles by
// shuffling the node ids and labeling the first round(n * tv_fraction) ids
// TeleViewer, the next round(n * wise_fraction) WiseAgent, the rest
// WhiteZone. Throws std::invalid_argument on an invalid config.
SimulationState init_state(const ScenarioConfig& config, std::uint64_t seed);

// Advances the state by one turn. Phase 1 (broadcast): every TeleViewer
// applies media_update with config.media_message and every WiseAgent
// applies expert_update with config.expert_message, in node-id order.
// Phase 2 (gossip): agents are visited in a fresh random permutation; each
// visited agent draws one uniform random neighbor and mixes toward that
// neighbor's current (possibly already-updated this turn) opinions. Agents
// without neighbors skip phase 2.
void step(SimulationState& state, const ScenarioConfig& config, Rng& rng);

// Runs one replication: seeds the replication stream with
// mix_seed(config.base_seed, replication_index), initializes, then advances
// config.turns turns with the stepping stream mix_seed(replication_seed, 2),
// recording population means after initialization and after every turn.
TimeSeries run_replication(const ScenarioConfig& config,
                           std::uint32_t replication_index);

// Pointwise arithmetic mean of every recorded statistic. Throws
// std::invalid_argument on an empty list, mismatched lengths, or
// inconsistent role presence.
TimeSeries aggregate(const std::vector<TimeSeries>& series);

// Arithmetic opinion means over all agents and within each non-empty role.
// Throws std::invalid_argument on an empty population.
TurnStats population_means(const SimulationState& state);

}  // namespace opdyn

#endif  // OPDYN_ENGINE_HPP_

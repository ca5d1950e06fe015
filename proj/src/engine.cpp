#include "opdyn/engine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace opdyn {

namespace {

void check_unit_interval(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument(std::string(name) +
                                    " must be in [0, 1], got " +
                                    std::to_string(value));
}

}  // namespace

void ScenarioConfig::validate() const {
    if (n_agents == 0)
        throw std::invalid_argument("n_agents must be positive");
    check_unit_interval(tv_fraction, "tv_fraction");
    check_unit_interval(wise_fraction, "wise_fraction");
    if (tv_fraction + wise_fraction > 1.0 + 1e-12)
        throw std::invalid_argument(
            "tv_fraction + wise_fraction must not exceed 1, got " +
            std::to_string(tv_fraction + wise_fraction));
    check_unit_interval(tolerance, "tolerance");
    if (!(convergence > 0.0 && convergence <= 0.5))
        throw std::invalid_argument("convergence must be in (0, 0.5], got " +
                                    std::to_string(convergence));
    check_unit_interval(media_message.welfare, "media_welfare");
    check_unit_interval(media_message.security, "media_security");
    check_unit_interval(expert_message.welfare, "expert_welfare");
    check_unit_interval(expert_message.security, "expert_security");
    if (replications == 0)
        throw std::invalid_argument("replications must be positive");
    if (m_attach == 0)
        throw std::invalid_argument("m_attach must be positive");
    if (m_attach >= n_agents)
        throw std::invalid_argument("m_attach must be smaller than n_agents");
    if (gossip_rounds == 0)
        throw std::invalid_argument("gossip_rounds must be positive");
}

SimulationState init_state(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();

    Graph graph = generate_scale_free(config.graph_params(mix_seed(seed, 0)));
    Rng rng(mix_seed(seed, 1));

    const std::uint32_t n = config.n_agents;
    std::vector<Agent> agents(n);
    for (std::uint32_t id = 0; id < n; ++id) {
        agents[id].id = id;
        agents[id].opinions.welfare = rng.uniform01();
        agents[id].opinions.security = rng.uniform01();
    }

    const auto n_tv = static_cast<std::uint32_t>(
        std::lround(static_cast<double>(n) * config.tv_fraction));
    auto n_wise = static_cast<std::uint32_t>(
        std::lround(static_cast<double>(n) * config.wise_fraction));
    n_wise = std::min(n_wise, n - n_tv);

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    for (std::uint32_t i = 0; i < n; ++i) {
        Role role = Role::WhiteZone;
        if (i < n_tv)
            role = Role::TeleViewer;
        else if (i < n_tv + n_wise)
            role = Role::WiseAgent;
        agents[order[i]].role = role;
    }

    return {std::move(graph), std::move(agents), 0};
}

void step(SimulationState& state, const ScenarioConfig& config, Rng& rng) {
    const UpdateParams params = config.update_params();

    for (Agent& agent : state.agents) {
        if (agent.role == Role::TeleViewer)
            agent.opinions =
                media_update(agent.opinions, config.media_message, params);
        else if (agent.role == Role::WiseAgent)
            agent.opinions = expert_update(agent.opinions,
                                           config.expert_message,
                                           config.convergence);
    }

    std::vector<std::uint32_t> order(state.agents.size());
    std::iota(order.begin(), order.end(), 0u);
    for (std::uint32_t round = 0; round < config.gossip_rounds; ++round) {
        rng.shuffle(order);
        for (const std::uint32_t receiver : order) {
            const auto& nbrs = state.graph.neighbors(receiver);
            if (nbrs.empty())
                continue;
            const NodeId sender =
                nbrs[rng.uniform_below(nbrs.size())];
            state.agents[receiver].opinions =
                peer_update(state.agents[receiver].opinions,
                            state.agents[sender].opinions, params);
        }
    }

    ++state.turn;
}

TimeSeries run_replication(const ScenarioConfig& config,
                           std::uint32_t replication_index) {
    const std::uint64_t rep_seed =
        mix_seed(config.base_seed, replication_index);
    SimulationState state = init_state(config, rep_seed);
    Rng rng(mix_seed(rep_seed, 2));

    TimeSeries series;
    series.reserve(config.turns + 1);
    series.push_back(population_means(state));
    for (std::uint32_t t = 0; t < config.turns; ++t) {
        step(state, config, rng);
        series.push_back(population_means(state));
    }
    return series;
}

namespace {

struct MeanAccumulator {
    double welfare = 0.0;
    double security = 0.0;
    std::size_t count = 0;

    void add(const OpinionPair& opinions) {
        welfare += opinions.welfare;
        security += opinions.security;
        ++count;
    }

    std::optional<RoleMeans> means() const {
        if (count == 0)
            return std::nullopt;
        const double scale = 1.0 / static_cast<double>(count);
        return RoleMeans{welfare * scale, security * scale};
    }
};

}  // namespace

TurnStats population_means(const SimulationState& state) {
    if (state.agents.empty())
        throw std::invalid_argument("population_means: empty population");

    MeanAccumulator all, tv, wise, white;
    for (const Agent& agent : state.agents) {
        all.add(agent.opinions);
        switch (agent.role) {
            case Role::TeleViewer: tv.add(agent.opinions); break;
            case Role::WiseAgent: wise.add(agent.opinions); break;
            case Role::WhiteZone: white.add(agent.opinions); break;
        }
    }

    const RoleMeans population = *all.means();
    return {population.welfare, population.security,
            tv.means(), wise.means(), white.means()};
}

namespace {

std::optional<RoleMeans> aggregate_role(
    const std::vector<TimeSeries>& series, std::size_t t,
    std::optional<RoleMeans> TurnStats::*role) {
    const bool present = (series.front()[t].*role).has_value();
    RoleMeans sum;
    for (const TimeSeries& s : series) {
        if ((s[t].*role).has_value() != present)
            throw std::invalid_argument(
                "aggregate: inconsistent role presence across series");
        if (present) {
            sum.welfare += (s[t].*role)->welfare;
            sum.security += (s[t].*role)->security;
        }
    }
    if (!present)
        return std::nullopt;
    const double scale = 1.0 / static_cast<double>(series.size());
    return RoleMeans{sum.welfare * scale, sum.security * scale};
}

}  // namespace

TimeSeries aggregate(const std::vector<TimeSeries>& series) {
    if (series.empty())
        throw std::invalid_argument("aggregate: empty series list");
    const std::size_t len = series.front().size();
    for (const TimeSeries& s : series)
        if (s.size() != len)
            throw std::invalid_argument("aggregate: length mismatch");

    TimeSeries out(len);
    const double scale = 1.0 / static_cast<double>(series.size());
    for (std::size_t t = 0; t < len; ++t) {
        double welfare = 0.0;
        double security = 0.0;
        for (const TimeSeries& s : series) {
            welfare += s[t].mean_welfare;
            security += s[t].mean_security;
        }
        out[t].mean_welfare = welfare * scale;
        out[t].mean_security = security * scale;
        out[t].televiewers = aggregate_role(series, t, &TurnStats::televiewers);
        out[t].wise_agents = aggregate_role(series, t, &TurnStats::wise_agents);
        out[t].white_zone = aggregate_role(series, t, &TurnStats::white_zone);
    }
    return out;
}

}  // namespace opdyn

#include "opdyn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "opdyn/rng.hpp"

namespace opdyn {

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
    if (v >= adjacency_.size())
        throw std::out_of_range("node id " + std::to_string(v) +
                                " out of range (n=" +
                                std::to_string(adjacency_.size()) + ")");
    return adjacency_[v];
}

void Graph::add_edge(NodeId u, NodeId v) {
    if (u == v)
        throw std::invalid_argument("self-loop at node " + std::to_string(u));
    if (u >= adjacency_.size() || v >= adjacency_.size())
        throw std::invalid_argument("edge endpoint out of range");
    if (has_edge(u, v))
        throw std::invalid_argument("duplicate edge " + std::to_string(u) +
                                    "-" + std::to_string(v));
    auto& au = adjacency_[u];
    auto& av = adjacency_[v];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= adjacency_.size() || v >= adjacency_.size())
        return false;
    const auto& au = adjacency_[u];
    return std::binary_search(au.begin(), au.end(), v);
}

std::vector<NodeId> Graph::degrees() const {
    std::vector<NodeId> result;
    result.reserve(adjacency_.size());
    for (const auto& nbrs : adjacency_)
        result.push_back(static_cast<NodeId>(nbrs.size()));
    return result;
}

std::size_t scale_free_edge_count(const GraphParams& params) {
    const std::size_t m0 = params.m_attach + std::size_t{1};
    return m0 * (m0 - 1) / 2 +
           (params.n - m0) * static_cast<std::size_t>(params.m_attach);
}

Graph generate_scale_free(const GraphParams& params) {
    if (params.n == 0 || params.m_attach == 0 || params.m_attach >= params.n)
        throw std::invalid_argument(
            "invalid graph params: need 0 < m_attach < n (got m_attach=" +
            std::to_string(params.m_attach) + ", n=" + std::to_string(params.n) +
            ")");

    const NodeId m0 = params.m_attach + 1;
    Graph g(params.n);

    // Each edge contributes both endpoints, so a uniform draw from this list
    // selects a node with probability proportional to its degree.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * scale_free_edge_count(params));

    auto link = [&](NodeId u, NodeId v) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
        ++g.edge_count_;
        endpoints.push_back(u);
        endpoints.push_back(v);
    };

    for (NodeId i = 0; i < m0; ++i)
        for (NodeId j = i + 1; j < m0; ++j)
            link(i, j);

    Rng rng(params.seed);
    std::vector<NodeId> chosen;
    chosen.reserve(params.m_attach);
    for (NodeId v = m0; v < params.n; ++v) {
        chosen.clear();
        // Freeze the sampling pool at the degrees as of this round; edges
        // added for v become visible to later nodes only.
        const std::size_t pool = endpoints.size();
        while (chosen.size() < params.m_attach) {
            const NodeId target = endpoints[rng.uniform_below(pool)];
            if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
                chosen.push_back(target);
        }
        for (const NodeId target : chosen)
            link(v, target);
    }

    for (auto& nbrs : g.adjacency_)
        std::sort(nbrs.begin(), nbrs.end());
    return g;
}

double tail_exponent_mle(std::span<const NodeId> degrees, NodeId k_min) {
    if (k_min == 0)
        throw std::invalid_argument("k_min must be positive");
    const double shifted = static_cast<double>(k_min) - 0.5;
    std::size_t m = 0;
    double log_sum = 0.0;
    for (const NodeId k : degrees) {
        if (k >= k_min) {
            ++m;
            log_sum += std::log(static_cast<double>(k) / shifted);
        }
    }
    if (m < 10)
        throw std::invalid_argument(
            "insufficient tail: " + std::to_string(m) +
            " degrees >= k_min=" + std::to_string(k_min) + ", need at least 10");
    return 1.0 + static_cast<double>(m) / log_sum;
}

double degree_exponent_estimate(const Graph& g, NodeId k_min) {
    const auto degs = g.degrees();
    return tail_exponent_mle(degs, k_min);
}

bool is_connected(const Graph& g) {
    const NodeId n = g.node_count();
    if (n <= 1)
        return true;
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    NodeId reached = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const NodeId v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

void write_edge_list(const Graph& g, std::ostream& os) {
    // Outer loop ascending in u and sorted adjacency give lexicographic
    // order for free.
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (const NodeId v : g.neighbors(u))
            if (u < v)
                os << u << ' ' << v << '\n';
}

}  // namespace opdyn

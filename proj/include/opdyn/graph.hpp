#ifndef OPDYN_GRAPH_HPP_
#define OPDYN_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace opdyn {

using NodeId = std::uint32_t;

// Parameters of the preferential-attachment generator. The seed core is a
// complete graph on m_attach + 1 nodes, which guarantees every later node
// can attach m_attach distinct edges.
struct GraphParams {
    NodeId n = 100;
    NodeId m_attach = 2;
    std::uint64_t seed = 0;

    bool operator==(const GraphParams&) const = default;
};

// Undirected simple graph over nodes 0..n-1. Adjacency lists are kept sorted
// ascending. A completed graph is never mutated by the simulation and is
// safe to share across concurrent readers.
class Graph {
  public:
    explicit Graph(NodeId node_count) : adjacency_(node_count) {}

    NodeId node_count() const { return static_cast<NodeId>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    // Sorted neighbor ids of v; never contains v itself.
    // Throws std::out_of_range on an invalid node id.
    const std::vector<NodeId>& neighbors(NodeId v) const;

    NodeId degree(NodeId v) const {
        return static_cast<NodeId>(neighbors(v).size());
    }

    // Inserts the undirected edge { u, v }, keeping adjacency sorted.
    // Throws std::invalid_argument on self-loops, duplicate edges, or
    // out-of-range endpoints.
    void add_edge(NodeId u, NodeId v);

    bool has_edge(NodeId u, NodeId v) const;

    std::vector<NodeId> degrees() const;

    bool operator==(const Graph&) const = default;

  private:
    friend Graph generate_scale_free(const GraphParams& params);

    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Edge count of the generator output in closed form:
// C(m0, 2) + (n - m0) * m_attach with m0 = m_attach + 1.
std::size_t scale_free_edge_count(const GraphParams& params);

// Grows a connected scale-free graph: a complete core of m_attach + 1 nodes,
// then one node at a time, each attaching m_attach distinct edges to
// existing nodes drawn with probability proportional to current degree
// (repeated-endpoint list; duplicate draws are rejected and redrawn).
// Throws std::invalid_argument unless 0 < m_attach < n.
Graph generate_scale_free(const GraphParams& params);

// Continuous maximum-likelihood estimate of the tail exponent of a power-law
// degree distribution, over the M degrees k_i >= k_min:
//   y_hat = 1 + M / sum_i ln(k_i / (k_min - 0.5))
// Throws std::invalid_argument if fewer than 10 degrees qualify (the fit is
// meaningless on a shorter tail) or if k_min == 0.
double tail_exponent_mle(std::span<const NodeId> degrees, NodeId k_min);

// Same estimate computed from a graph's degree sequence.
double degree_exponent_estimate(const Graph& g, NodeId k_min);

// True when the graph has a single connected component (vacuously true for
// n <= 1).
bool is_connected(const Graph& g);

// Writes the edge list as text, one "u v" pair per line, zero-indexed,
// u < v, pairs sorted lexicographically.
void write_edge_list(const Graph& g, std::ostream& os);

}  // namespace opdyn

#endif  // OPDYN_GRAPH_HPP_

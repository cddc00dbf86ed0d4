#ifndef MCC_GRAPH_HPP
#define MCC_GRAPH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcc/errors.hpp"

namespace mcc {

using NodeId = int;

enum class NodeKind { Source, Pre, Post };
enum class EdgeKind { Entering, Inclusion, Exiting, Transition };

/// An original (non-residual) edge of the circulation graph. Unit capacity;
/// flow is binary.
struct Edge {
    NodeId from = -1;
    NodeId to = -1;
    double cost = 0.0;
    EdgeKind kind = EdgeKind::Transition;
    int flow = 0;  // 0 or 1
};

/// A residual edge is a view over an original edge: the forward direction has
/// capacity 1-flow and cost +cost; the reverse direction has capacity flow and
/// cost -cost.
struct ResidualEdgeRef {
    int edge = -1;
    bool reverse = false;

    bool operator==(const ResidualEdgeRef&) const = default;
};

struct Cycle {
    std::vector<ResidualEdgeRef> edges;  // ordered, closed directed walk
    double total_cost = 0.0;
};

struct Trajectory {
    std::vector<std::string> fragment_ids;  // strictly increasing by last timestamp
    double first_t = 0.0;
    double last_t = 0.0;
};

/// The circulation graph over pre/post fragment nodes plus the dummy source,
/// together with its residual view. Node and edge slots are recycled through
/// free lists so windowed deletion does not grow memory.
class ResidualGraph {
public:
    ResidualGraph();

    NodeId source() const { return kSource; }

    /// Admits a fragment: adds its pre/post nodes, the entering, inclusion and
    /// exiting edges, and one transition edge per listed predecessor post node.
    /// Returns (pre, post).
    std::pair<NodeId, NodeId> add_fragment_node(
        const std::string& frag_id, double first_t, double last_t,
        double enter_cost, double exit_cost, double incl_cost,
        const std::vector<std::pair<NodeId, double>>& predecessors);

    /// Saturates forward residual edges of the cycle and drains reverse ones.
    void push_flow(const Cycle& c);

    /// Traces every flow-carrying circulation back from the source and returns
    /// one trajectory per circulation.
    std::vector<Trajectory> extract_trajectories() const;

    /// Removes the circulation whose tail post node is given, deleting all of
    /// its nodes and every incident edge. Returns the traced trajectory.
    Trajectory remove_circulation(NodeId tail_post);

    /// Deletes a fragment whose three structural edges carry no flow.
    void remove_zero_flow_fragment(const std::string& frag_id);

    /// Verification oracle: label-correcting scan over the whole residual
    /// graph. True iff some positive-capacity residual cycle has total cost
    /// below -eps.
    bool has_negative_cycle(double eps = kDefaultEpsCycle) const;

    // --- residual view ---------------------------------------------------
    double residual_cost(ResidualEdgeRef r) const {
        const Edge& e = edges_[r.edge];
        return r.reverse ? -e.cost : e.cost;
    }
    int residual_capacity(ResidualEdgeRef r) const {
        const Edge& e = edges_[r.edge];
        return r.reverse ? e.flow : 1 - e.flow;
    }
    NodeId residual_from(ResidualEdgeRef r) const {
        const Edge& e = edges_[r.edge];
        return r.reverse ? e.to : e.from;
    }
    NodeId residual_to(ResidualEdgeRef r) const {
        const Edge& e = edges_[r.edge];
        return r.reverse ? e.from : e.to;
    }
    /// Visits every positive-capacity residual edge leaving `u`.
    void for_each_residual_out(NodeId u,
                               const std::function<void(ResidualEdgeRef)>& fn) const;

    /// Statically dispatched variant for hot loops.
    template <typename F>
    void visit_residual_out(NodeId u, F&& fn) const {
        const Node& node = nodes_[u];
        for (int id : node.out_edges)
            if (edges_[id].flow == 0) fn(ResidualEdgeRef{id, false});
        for (int id : node.in_edges)
            if (edges_[id].flow == 1) fn(ResidualEdgeRef{id, true});
    }

    /// Visits every positive-capacity residual edge entering `u`.
    template <typename F>
    void visit_residual_in(NodeId u, F&& fn) const {
        const Node& node = nodes_[u];
        for (int id : node.in_edges)
            if (edges_[id].flow == 0) fn(ResidualEdgeRef{id, false});
        for (int id : node.out_edges)
            if (edges_[id].flow == 1) fn(ResidualEdgeRef{id, true});
    }

    /// (entering, inclusion, exiting) edge ids of a fragment.
    std::array<int, 3> structural_edges(const std::string& frag_id) const;

    // --- inspection -------------------------------------------------------
    int node_count() const { return alive_nodes_; }
    int edge_count() const { return alive_edges_; }
    bool node_alive(NodeId n) const { return n >= 0 && n < (int)nodes_.size() && nodes_[n].alive; }
    NodeKind node_kind(NodeId n) const { return nodes_[n].kind; }
    const Edge& edge(int id) const { return edges_[id]; }
    int max_node_id() const { return (int)nodes_.size(); }

    bool has_fragment(const std::string& frag_id) const {
        return frag_index_.count(frag_id) > 0;
    }
    NodeId pre_node(const std::string& frag_id) const;
    NodeId post_node(const std::string& frag_id) const;
    /// Fragment id attached to a pre or post node.
    const std::string& fragment_of(NodeId n) const;
    bool fragment_has_flow(const std::string& frag_id) const;

    /// Post nodes of all flow-carrying circulation tails, paired with the tail
    /// fragment's last timestamp.
    std::vector<std::pair<NodeId, double>> flow_tails() const;

    /// Ids of all fragments currently in the graph.
    std::vector<std::string> fragment_ids() const;

    /// Sum of cost*flow over original edges.
    double total_flow_cost() const;

    /// Structural check: in-flow equals out-flow at every node.
    bool flow_conserved() const;

    /// All alive original edge ids, for tests and traversals.
    std::vector<int> edge_ids() const;

    static constexpr double kDefaultEpsCycle = 1e-9;

private:
    static constexpr NodeId kSource = 0;

    struct Node {
        NodeKind kind = NodeKind::Source;
        int frag_slot = -1;
        bool alive = false;
        std::vector<int> out_edges;  // original edges with from == this
        std::vector<int> in_edges;   // original edges with to == this
    };
    struct FragEntry {
        std::string id;
        double first_t = 0.0;
        double last_t = 0.0;
        NodeId pre = -1;
        NodeId post = -1;
        bool alive = false;
    };
    NodeId alloc_node(NodeKind kind, int frag_slot);
    int alloc_edge(NodeId from, NodeId to, double cost, EdgeKind kind);
    void delete_node(NodeId n);
    void delete_edge(int id);
    const FragEntry& frag_entry_of_node(NodeId n) const;

    /// Walks flow-carrying edges backwards from a flowed exiting edge to the
    /// source, collecting fragment slots tail-first. Returns visited nodes.
    std::vector<NodeId> trace_circulation(int exit_edge_id,
                                          std::vector<int>& frag_slots) const;
    Trajectory make_trajectory(const std::vector<int>& frag_slots_tail_first) const;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<char> edge_alive_;
    std::vector<int> free_nodes_;
    std::vector<int> free_edges_;
    std::vector<FragEntry> frags_;
    std::vector<int> free_frags_;
    std::unordered_map<std::string, int> frag_index_;
    int alive_nodes_ = 0;
    int alive_edges_ = 0;
};

}  // namespace mcc

#endif

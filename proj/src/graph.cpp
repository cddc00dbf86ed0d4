#include "mcc/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace mcc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Strict-improvement guard for label correcting; keeps floating-point ties
// from cycling forever.
constexpr double kRelaxTol = 1e-12;
}  // namespace

ResidualGraph::ResidualGraph() {
    nodes_.push_back(Node{NodeKind::Source, -1, true, {}, {}});
    alive_nodes_ = 1;
}

NodeId ResidualGraph::alloc_node(NodeKind kind, int frag_slot) {
    NodeId n;
    if (!free_nodes_.empty()) {
        n = free_nodes_.back();
        free_nodes_.pop_back();
        nodes_[n] = Node{kind, frag_slot, true, {}, {}};
    } else {
        n = (NodeId)nodes_.size();
        nodes_.push_back(Node{kind, frag_slot, true, {}, {}});
    }
    ++alive_nodes_;
    return n;
}

int ResidualGraph::alloc_edge(NodeId from, NodeId to, double cost, EdgeKind kind) {
    int id;
    if (!free_edges_.empty()) {
        id = free_edges_.back();
        free_edges_.pop_back();
        edges_[id] = Edge{from, to, cost, kind, 0};
        edge_alive_[id] = 1;
    } else {
        id = (int)edges_.size();
        edges_.push_back(Edge{from, to, cost, kind, 0});
        edge_alive_.push_back(1);
    }
    nodes_[from].out_edges.push_back(id);
    nodes_[to].in_edges.push_back(id);
    ++alive_edges_;
    return id;
}

void ResidualGraph::delete_edge(int id) {
    if (!edge_alive_[id]) return;
    const Edge& e = edges_[id];
    auto drop = [id](std::vector<int>& v) {
        auto it = std::find(v.begin(), v.end(), id);
        if (it != v.end()) {
            *it = v.back();
            v.pop_back();
        }
    };
    drop(nodes_[e.from].out_edges);
    drop(nodes_[e.to].in_edges);
    edge_alive_[id] = 0;
    free_edges_.push_back(id);
    --alive_edges_;
}

void ResidualGraph::delete_node(NodeId n) {
    Node& node = nodes_[n];
    // Copy: delete_edge mutates the adjacency vectors.
    std::vector<int> incident = node.out_edges;
    incident.insert(incident.end(), node.in_edges.begin(), node.in_edges.end());
    for (int id : incident) delete_edge(id);
    node.alive = false;
    node.out_edges.clear();
    node.in_edges.clear();
    free_nodes_.push_back(n);
    --alive_nodes_;
}

std::pair<NodeId, NodeId> ResidualGraph::add_fragment_node(
    const std::string& frag_id, double first_t, double last_t,
    double enter_cost, double exit_cost, double incl_cost,
    const std::vector<std::pair<NodeId, double>>& predecessors) {
    if (frag_index_.count(frag_id)) throw DuplicateFragment(frag_id);
    for (const auto& [post, cost] : predecessors) {
        (void)cost;
        if (!node_alive(post) || nodes_[post].kind != NodeKind::Post)
            throw UnknownPredecessor(std::to_string(post) + " for " + frag_id);
    }

    int slot;
    if (!free_frags_.empty()) {
        slot = free_frags_.back();
        free_frags_.pop_back();
    } else {
        slot = (int)frags_.size();
        frags_.emplace_back();
    }
    NodeId pre = alloc_node(NodeKind::Pre, slot);
    NodeId post = alloc_node(NodeKind::Post, slot);
    frags_[slot] = FragEntry{frag_id, first_t, last_t, pre, post, true};
    frag_index_[frag_id] = slot;

    alloc_edge(kSource, pre, enter_cost, EdgeKind::Entering);
    alloc_edge(pre, post, incl_cost, EdgeKind::Inclusion);
    alloc_edge(post, kSource, exit_cost, EdgeKind::Exiting);
    for (const auto& [pred_post, cost] : predecessors)
        alloc_edge(pred_post, pre, cost, EdgeKind::Transition);
    return {pre, post};
}

void ResidualGraph::for_each_residual_out(
    NodeId u, const std::function<void(ResidualEdgeRef)>& fn) const {
    visit_residual_out(u, fn);
}

std::array<int, 3> ResidualGraph::structural_edges(const std::string& frag_id) const {
    const FragEntry& f = frags_[frag_index_.at(frag_id)];
    std::array<int, 3> out{-1, -1, -1};
    for (int id : nodes_[f.pre].in_edges)
        if (edges_[id].kind == EdgeKind::Entering) out[0] = id;
    for (int id : nodes_[f.pre].out_edges)
        if (edges_[id].kind == EdgeKind::Inclusion) out[1] = id;
    for (int id : nodes_[f.post].out_edges)
        if (edges_[id].kind == EdgeKind::Exiting) out[2] = id;
    return out;
}

void ResidualGraph::push_flow(const Cycle& c) {
    for (const ResidualEdgeRef& r : c.edges)
        if (residual_capacity(r) != 1)
            throw SaturatedEdge("edge " + std::to_string(r.edge) +
                                (r.reverse ? " (reverse)" : " (forward)"));
    for (const ResidualEdgeRef& r : c.edges) edges_[r.edge].flow = r.reverse ? 0 : 1;
}

const ResidualGraph::FragEntry& ResidualGraph::frag_entry_of_node(NodeId n) const {
    return frags_[nodes_[n].frag_slot];
}

std::vector<NodeId> ResidualGraph::trace_circulation(int exit_edge_id,
                                                     std::vector<int>& frag_slots) const {
    std::vector<NodeId> visited;
    NodeId cur = edges_[exit_edge_id].from;  // tail post node
    int guard = 2 * (int)nodes_.size() + 2;
    while (cur != kSource) {
        if (--guard < 0) throw CorruptFlow("traversal loop exceeded node count");
        visited.push_back(cur);
        const Node& node = nodes_[cur];
        int flowed = -1;
        for (int id : node.in_edges) {
            if (edges_[id].flow == 1) {
                if (flowed != -1) throw CorruptFlow("node has two flowed in-edges");
                flowed = id;
            }
        }
        if (flowed == -1)
            throw CorruptFlow("node " + std::to_string(cur) + " has no flowed in-edge");
        if (node.kind == NodeKind::Post) frag_slots.push_back(node.frag_slot);
        cur = edges_[flowed].from;
    }
    return visited;
}

Trajectory ResidualGraph::make_trajectory(const std::vector<int>& slots_tail_first) const {
    Trajectory t;
    for (auto it = slots_tail_first.rbegin(); it != slots_tail_first.rend(); ++it)
        t.fragment_ids.push_back(frags_[*it].id);
    t.first_t = frags_[slots_tail_first.back()].first_t;
    t.last_t = frags_[slots_tail_first.front()].last_t;
    return t;
}

std::vector<Trajectory> ResidualGraph::extract_trajectories() const {
    std::vector<Trajectory> out;
    for (int id : nodes_[kSource].in_edges) {
        if (edges_[id].flow != 1) continue;
        std::vector<int> slots;
        trace_circulation(id, slots);
        out.push_back(make_trajectory(slots));
    }
    return out;
}

Trajectory ResidualGraph::remove_circulation(NodeId tail_post) {
    if (!node_alive(tail_post) || nodes_[tail_post].kind != NodeKind::Post)
        throw NotATail("node " + std::to_string(tail_post) + " is not a post node");
    int exit_edge = -1;
    for (int id : nodes_[tail_post].out_edges)
        if (edges_[id].kind == EdgeKind::Exiting && edges_[id].flow == 1) exit_edge = id;
    if (exit_edge == -1)
        throw NotATail("exiting edge of node " + std::to_string(tail_post) +
                       " carries no flow");

    std::vector<int> slots;
    std::vector<NodeId> visited = trace_circulation(exit_edge, slots);
    Trajectory t = make_trajectory(slots);
    for (NodeId n : visited) delete_node(n);
    for (int slot : slots) {
        frag_index_.erase(frags_[slot].id);
        frags_[slot].alive = false;
        free_frags_.push_back(slot);
    }
    return t;
}

void ResidualGraph::remove_zero_flow_fragment(const std::string& frag_id) {
    auto it = frag_index_.find(frag_id);
    if (it == frag_index_.end()) throw UnknownPredecessor(frag_id);
    if (fragment_has_flow(frag_id))
        throw NotATail("fragment " + frag_id + " carries flow; remove its circulation");
    FragEntry& f = frags_[it->second];
    delete_node(f.pre);
    delete_node(f.post);
    f.alive = false;
    free_frags_.push_back(it->second);
    frag_index_.erase(it);
}

bool ResidualGraph::fragment_has_flow(const std::string& frag_id) const {
    int slot = frag_index_.at(frag_id);
    const FragEntry& f = frags_[slot];
    for (NodeId n : {f.pre, f.post}) {
        for (int id : nodes_[n].out_edges)
            if (edges_[id].flow == 1) return true;
        for (int id : nodes_[n].in_edges)
            if (edges_[id].flow == 1) return true;
    }
    return false;
}

NodeId ResidualGraph::pre_node(const std::string& frag_id) const {
    return frags_[frag_index_.at(frag_id)].pre;
}

NodeId ResidualGraph::post_node(const std::string& frag_id) const {
    return frags_[frag_index_.at(frag_id)].post;
}

const std::string& ResidualGraph::fragment_of(NodeId n) const {
    return frag_entry_of_node(n).id;
}

std::vector<std::pair<NodeId, double>> ResidualGraph::flow_tails() const {
    std::vector<std::pair<NodeId, double>> tails;
    for (int id : nodes_[kSource].in_edges)
        if (edges_[id].flow == 1)
            tails.emplace_back(edges_[id].from, frag_entry_of_node(edges_[id].from).last_t);
    return tails;
}

std::vector<std::string> ResidualGraph::fragment_ids() const {
    std::vector<std::string> ids;
    ids.reserve(frag_index_.size());
    for (const auto& [id, slot] : frag_index_) {
        (void)slot;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

double ResidualGraph::total_flow_cost() const {
    double total = 0.0;
    for (size_t id = 0; id < edges_.size(); ++id)
        if (edge_alive_[id] && edges_[id].flow == 1) total += edges_[id].cost;
    return total;
}

bool ResidualGraph::flow_conserved() const {
    for (NodeId n = 0; n < (NodeId)nodes_.size(); ++n) {
        if (!nodes_[n].alive) continue;
        int in = 0, out = 0;
        for (int id : nodes_[n].in_edges) in += edges_[id].flow;
        for (int id : nodes_[n].out_edges) out += edges_[id].flow;
        if (in != out) return false;
    }
    return true;
}

std::vector<int> ResidualGraph::edge_ids() const {
    std::vector<int> ids;
    for (size_t id = 0; id < edges_.size(); ++id)
        if (edge_alive_[id]) ids.push_back((int)id);
    return ids;
}

bool ResidualGraph::has_negative_cycle(double eps) const {
    // Bellman-Ford from a virtual super-source (all labels start at zero) over
    // positive-capacity residual edges; a relaxation surviving |V| passes
    // exposes a cycle, whose actual cost is then summed and compared to -eps.
    const int n = (int)nodes_.size();
    std::vector<double> dist(n, 0.0);
    std::vector<ResidualEdgeRef> parent(n, ResidualEdgeRef{});
    std::vector<NodeId> parent_node(n, -1);

    std::vector<ResidualEdgeRef> residuals;
    for (size_t id = 0; id < edges_.size(); ++id) {
        if (!edge_alive_[id]) continue;
        residuals.push_back(ResidualEdgeRef{(int)id, edges_[id].flow == 1});
    }

    std::vector<NodeId> relaxed;
    for (int pass = 0; pass <= n; ++pass) {
        relaxed.clear();
        for (const ResidualEdgeRef& r : residuals) {
            NodeId u = residual_from(r), v = residual_to(r);
            double nd = dist[u] + residual_cost(r);
            if (nd < dist[v] - kRelaxTol) {
                dist[v] = nd;
                parent[v] = r;
                parent_node[v] = u;
                relaxed.push_back(v);
            }
        }
        if (relaxed.empty()) return false;
    }

    // Walk parents n times from each late-relaxed node to land inside its
    // cycle, then close the cycle and sum its actual cost.
    for (NodeId seed : relaxed) {
        NodeId cur = seed;
        for (int i = 0; i < n; ++i) cur = parent_node[cur];
        double total = 0.0;
        NodeId start = cur;
        do {
            total += residual_cost(parent[cur]);
            cur = parent_node[cur];
        } while (cur != start);
        if (total < -eps) return true;
    }
    return false;
}

}  // namespace mcc

#include "dts/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace dts {

NetworkGraph::NetworkGraph(i64 vertex_count, std::vector<DirectedLink> links)
    : n_(vertex_count), links_(std::move(links)) {
    if (n_ < 0) throw InvalidInput("graph: negative vertex count");
    std::set<LinkKey> seen;
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const DirectedLink& l = links_[i];
        const std::string where = "link #" + std::to_string(i + 1) + " (" + std::to_string(l.from) +
                                  "->" + std::to_string(l.to) + ")";
        if (l.from < 1 || l.from > n_ || l.to < 1 || l.to > n_) {
            throw InvalidInput("graph: " + where + " references a vertex outside [1, " +
                               std::to_string(n_) + "]");
        }
        if (l.from == l.to) throw InvalidInput("graph: " + where + " is a self-loop");
        if (l.bandwidth <= 0) throw InvalidInput("graph: " + where + " has non-positive bandwidth");
        if (l.latency < 0) throw InvalidInput("graph: " + where + " has negative latency");
        if (!seen.insert({l.from, l.to}).second) {
            throw InvalidInput("graph: duplicate directed " + where);
        }
        adjacency_[l.from].push_back(i);
    }
    for (auto& [v, idx] : adjacency_) {
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return links_[a].to < links_[b].to; });
    }
}

const DirectedLink* NetworkGraph::find_link(VertexId from, VertexId to) const {
    auto it = adjacency_.find(from);
    if (it == adjacency_.end()) return nullptr;
    for (std::size_t idx : it->second) {
        if (links_[idx].to == to) return &links_[idx];
    }
    return nullptr;
}

const std::vector<std::size_t>& NetworkGraph::out_links(VertexId from) const {
    auto it = adjacency_.find(from);
    return it == adjacency_.end() ? no_links_ : it->second;
}

void validate_request(const TransferRequest& req) {
    std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, FixedBwFixedDurRequest>) {
                if (r.bandwidth <= 0) throw InvalidInput("request: bandwidth must be positive");
                if (r.duration <= 0) throw InvalidInput("request: duration must be positive");
                if (r.t1 + r.duration > r.t2) {
                    throw InvalidInput("request: window [t1, t2] shorter than duration");
                }
                if (r.lmax <= 0) throw InvalidInput("request: lmax must be positive");
                if (r.s == r.f) throw InvalidInput("request: source equals destination");
            } else if constexpr (std::is_same_v<T, FixedDataFixedDurRequest>) {
                if (r.total_data <= 0) throw InvalidInput("request: total data must be positive");
                if (r.t2 <= r.t1) throw InvalidInput("request: t2 must exceed t1");
                if (r.s == r.f) throw InvalidInput("request: source equals destination");
            } else if constexpr (std::is_same_v<T, FixedBwVarDurRequest>) {
                if (r.bandwidth <= 0) throw InvalidInput("request: bandwidth must be positive");
                if (r.lmax <= 0) throw InvalidInput("request: lmax must be positive");
                if (r.s == r.f) throw InvalidInput("request: source equals destination");
            } else {
                for (const auto& member : r.requests) {
                    std::visit([](const auto& m) { validate_request(TransferRequest(m)); }, member);
                }
                const i64 m = i64(r.requests.size());
                for (auto [u, v] : r.precedence) {
                    if (u < 1 || u > m || v < 1 || v > m) {
                        throw InvalidInput("group: precedence edge references a missing member");
                    }
                }
                topo_order(r);  // throws on cycles
            }
        },
        req);
}

namespace {

struct PartialPath {
    i64 latency;
    std::vector<VertexId> vertices;
    std::vector<std::size_t> link_index;

    // Min-heap order: latency first, then lexicographic vertex sequence.
    bool operator>(const PartialPath& o) const {
        if (latency != o.latency) return latency > o.latency;
        return vertices > o.vertices;
    }
};

}  // namespace

std::vector<DirectedPath> candidate_paths(const NetworkGraph& g, VertexId s, VertexId f, i64 lmax,
                                          std::size_t limit) {
    if (s == f) throw InvalidInput("candidate_paths: source equals destination");
    if (limit < 1) throw InvalidInput("candidate_paths: limit must be >= 1");

    std::vector<DirectedPath> out;
    std::priority_queue<PartialPath, std::vector<PartialPath>, std::greater<>> frontier;
    frontier.push({0, {s}, {}});

    while (!frontier.empty() && out.size() < limit) {
        PartialPath cur = frontier.top();
        frontier.pop();
        const VertexId last = cur.vertices.back();
        if (last == f) {
            out.push_back({std::move(cur.vertices), std::move(cur.link_index), cur.latency});
            continue;
        }
        for (std::size_t idx : g.out_links(last)) {
            const DirectedLink& l = g.links()[idx];
            if (lmax != kInf && cur.latency + l.latency > lmax) continue;
            if (std::find(cur.vertices.begin(), cur.vertices.end(), l.to) != cur.vertices.end()) {
                continue;  // keep paths simple
            }
            PartialPath next = cur;
            next.latency += l.latency;
            next.vertices.push_back(l.to);
            next.link_index.push_back(idx);
            frontier.push(std::move(next));
        }
    }
    return out;
}

std::vector<i64> topo_order(const RequestGroup& group) {
    const i64 m = i64(group.requests.size());
    std::vector<std::vector<i64>> succ(std::size_t(m) + 1);
    std::vector<i64> indegree(std::size_t(m) + 1, 0);
    for (auto [u, v] : group.precedence) {
        if (u < 1 || u > m || v < 1 || v > m) {
            throw InvalidInput("group: precedence edge references a missing member");
        }
        succ[std::size_t(u)].push_back(v);
        ++indegree[std::size_t(v)];
    }
    std::priority_queue<i64, std::vector<i64>, std::greater<>> ready;
    for (i64 i = 1; i <= m; ++i) {
        if (indegree[std::size_t(i)] == 0) ready.push(i);
    }
    std::vector<i64> order;
    order.reserve(std::size_t(m));
    while (!ready.empty()) {
        const i64 i = ready.top();
        ready.pop();
        order.push_back(i);
        for (i64 j : succ[std::size_t(i)]) {
            if (--indegree[std::size_t(j)] == 0) ready.push(j);
        }
    }
    if (i64(order.size()) != m) throw InvalidInput("group: cyclic precedence constraints");
    return order;
}

}  // namespace dts

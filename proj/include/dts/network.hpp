#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dts/numeric.hpp"

namespace dts {

using VertexId = i64;

// One direction of a physical link. Full-duplex edges appear as two entries.
struct DirectedLink {
    VertexId from = 0;
    VertexId to = 0;
    i64 bandwidth = 0;  // capacity in bandwidth units, > 0
    i64 latency = 0;    // ticks, >= 0
};

using LinkKey = std::pair<VertexId, VertexId>;

class NetworkGraph {
  public:
    NetworkGraph() = default;
    // Validates endpoints, positive bandwidth, per-direction uniqueness.
    NetworkGraph(i64 vertex_count, std::vector<DirectedLink> links);

    i64 vertex_count() const { return n_; }
    const std::vector<DirectedLink>& links() const { return links_; }
    const DirectedLink* find_link(VertexId from, VertexId to) const;
    // Out-neighbors of `from`, sorted by target id.
    const std::vector<std::size_t>& out_links(VertexId from) const;

  private:
    i64 n_ = 0;
    std::vector<DirectedLink> links_;
    std::map<VertexId, std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> no_links_;
};

struct FixedBwFixedDurRequest {
    i64 t1 = 0, t2 = 0;
    i64 bandwidth = 0;
    i64 duration = 0;
    i64 lmax = kInf;
    VertexId s = 0, f = 0;
};

struct FixedDataFixedDurRequest {
    i64 t1 = 0, t2 = 0;
    i64 total_data = 0;
    std::string dataid;
    VertexId s = 0, f = 0;
    bool ordered = false;
};

struct FixedBwVarDurRequest {
    i64 t1 = 0;
    i64 bandwidth = 0;
    i64 lmax = kInf;
    VertexId s = 0, f = 0;
};

using FixedDurRequest = std::variant<FixedBwFixedDurRequest, FixedDataFixedDurRequest>;

// Batch of fixed-duration requests connected by precedence edges
// (member u must finish before member v starts). Indices are 1-based.
struct RequestGroup {
    std::vector<FixedDurRequest> requests;
    std::vector<std::pair<i64, i64>> precedence;
};

using TransferRequest =
    std::variant<FixedBwFixedDurRequest, FixedDataFixedDurRequest, FixedBwVarDurRequest, RequestGroup>;

// Throws InvalidInput when a request violates its field invariants.
void validate_request(const TransferRequest& req);

struct DirectedPath {
    std::vector<VertexId> vertices;       // s .. f
    std::vector<std::size_t> link_index;  // indices into NetworkGraph::links()
    i64 total_latency = 0;
};

// Simple s->f paths with total latency <= lmax, in nondecreasing latency
// order (lexicographic vertex sequence on ties), at most `limit` of them.
// Best-first enumeration over partial simple paths; every emitted prefix of
// the search respects the same order, so paths pop in final order.
std::vector<DirectedPath> candidate_paths(const NetworkGraph& g, VertexId s, VertexId f, i64 lmax,
                                          std::size_t limit);

// Deterministic topological order of 1..M (smallest ready index first).
// Throws InvalidInput on a precedence cycle.
std::vector<i64> topo_order(const RequestGroup& group);

}  // namespace dts

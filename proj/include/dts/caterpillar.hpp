#pragma once

#include <map>
#include <span>
#include <vector>

#include "dts/numeric.hpp"

namespace dts {

using VertexId = i64;

// Vertex- and edge-weighted graph claimed to be a tree; weights may be
// negative. Vertices are 1..n.
struct WeightedTree {
    i64 n = 0;
    std::vector<i64> vertex_weight;  // size n + 1, index 0 unused
    struct Edge {
        VertexId u = 0, v = 0;
        i64 weight = 0;
    };
    std::vector<Edge> edges;
};

// Throws InvalidInput naming the violated condition (edge count or
// connectivity) when the graph is not a tree.
void check_tree(const WeightedTree& tree);

// Staged marking: stage 1 marks degree-1 vertices with 1; stage p marks a
// still-unmarked vertex with p when at most one neighbor has mark >= p.
// Unmarked vertices carry the kInf sentinel. Index 0 of the result is unused.
std::vector<i64> leaf_levels_staged(const WeightedTree& tree, i64 k);

// kmin per vertex via directional heights: kmin(i) = 1 + max over all
// neighbors except one with the largest directional height of
// (1 + height toward that neighbor), with max{} = 0. Linear time.
std::vector<i64> leaf_levels_linear(const WeightedTree& tree);

struct CaterpillarCertificate {
    std::vector<VertexId> central_path;
    // Off-path neighbors per path vertex; their hanging subtrees are the legs.
    std::map<VertexId, std::vector<VertexId>> legs;
};

struct RecognitionResult {
    bool is_caterpillar = false;
    CaterpillarCertificate certificate;
};

// True iff the vertices with kmin > k induce a simple (possibly empty) path.
// With every vertex within level k, any single vertex serves as the path.
// Throws when the graph is not a tree.
RecognitionResult is_k_level_caterpillar(const WeightedTree& tree, i64 k);

// Reference recognizer: tries every vertex pair as central-path endpoints and
// accepts when all off-path vertices have staged mark <= k. Returns false for
// non-trees. Guarded to n <= 64.
bool is_k_level_caterpillar_brute(const WeightedTree& tree, i64 k);

struct CaterpillarWitness {
    i64 weight = 0;
    std::vector<VertexId> path;
    std::vector<VertexId> vertices;
    std::vector<std::pair<VertexId, VertexId>> edges;
};

// Maximum total vertex + edge weight over nonempty k-level-caterpillar
// subtrees, with a witness. The DP works on directed edge states (structure
// weight per level on each side of every edge), so the answer does not depend
// on the traversal root. O(n * k) time.
CaterpillarWitness max_weight_caterpillar(const WeightedTree& tree, i64 k);

// Same computation started from an explicit traversal root; the result is
// identical for every root.
CaterpillarWitness max_weight_caterpillar_from(const WeightedTree& tree, i64 k, VertexId root);

// Exhaustive reference: enumerates connected vertex subsets and keeps the
// best one accepted by the staged-mark recognizer. Guarded to n <= 20.
CaterpillarWitness max_weight_caterpillar_brute(const WeightedTree& tree, i64 k);

}  // namespace dts

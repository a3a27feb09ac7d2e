#include "dts/caterpillar.hpp"

#include <algorithm>
#include <optional>
#include <queue>

namespace dts {

namespace {

constexpr i64 kNegInf = std::numeric_limits<i64>::min() / 4;

struct Half {
    VertexId to = 0;
    i64 weight = 0;
    std::size_t state_to = 0;    // directed state (v -> to): structure at `to` seen from v
    std::size_t state_back = 0;  // directed state (to -> v)
};

// adj[v] sorted by neighbor id.
std::vector<std::vector<Half>> build_adjacency(const WeightedTree& tree) {
    if (tree.n < 1) throw InvalidInput("tree: needs at least one vertex");
    if (i64(tree.vertex_weight.size()) != tree.n + 1) {
        throw InvalidInput("tree: vertex weight list must have n entries");
    }
    std::vector<std::vector<Half>> adj(std::size_t(tree.n) + 1);
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        const auto& edge = tree.edges[e];
        if (edge.u < 1 || edge.u > tree.n || edge.v < 1 || edge.v > tree.n) {
            throw InvalidInput("tree: edge endpoint outside [1, n]");
        }
        if (edge.u == edge.v) throw InvalidInput("tree: self-loop");
        adj[std::size_t(edge.u)].push_back({edge.v, edge.weight, 2 * e, 2 * e + 1});
        adj[std::size_t(edge.v)].push_back({edge.u, edge.weight, 2 * e + 1, 2 * e});
    }
    for (auto& halves : adj) {
        std::sort(halves.begin(), halves.end(),
                  [](const Half& a, const Half& b) { return a.to < b.to; });
    }
    return adj;
}

bool connected(const WeightedTree& tree, const std::vector<std::vector<Half>>& adj) {
    std::vector<char> seen(std::size_t(tree.n) + 1, 0);
    std::queue<VertexId> queue;
    queue.push(1);
    seen[1] = 1;
    i64 reached = 1;
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (const Half& h : adj[std::size_t(v)]) {
            if (!seen[std::size_t(h.to)]) {
                seen[std::size_t(h.to)] = 1;
                ++reached;
                queue.push(h.to);
            }
        }
    }
    return reached == tree.n;
}

}  // namespace

void check_tree(const WeightedTree& tree) {
    const auto adj = build_adjacency(tree);
    if (i64(tree.edges.size()) != tree.n - 1) {
        throw InvalidInput("not a tree: " + std::to_string(tree.edges.size()) + " edges, expected " +
                           std::to_string(tree.n - 1));
    }
    if (!connected(tree, adj)) {
        throw InvalidInput("not a tree: more than one connected component");
    }
}

std::vector<i64> leaf_levels_staged(const WeightedTree& tree, i64 k) {
    if (k < 0) throw InvalidInput("leaf levels: k must be nonnegative");
    const auto adj = build_adjacency(tree);
    std::vector<i64> mark(std::size_t(tree.n) + 1, kInf);
    if (k < 1) return mark;
    if (tree.n == 1) {
        mark[1] = 1;  // matches kmin for the degenerate single-vertex tree
        return mark;
    }
    for (VertexId v = 1; v <= tree.n; ++v) {
        if (adj[std::size_t(v)].size() == 1) mark[std::size_t(v)] = 1;
    }
    for (i64 stage = 2; stage <= k; ++stage) {
        for (VertexId v = 1; v <= tree.n; ++v) {
            if (mark[std::size_t(v)] != kInf) continue;
            i64 high = 0;
            for (const Half& h : adj[std::size_t(v)]) {
                if (mark[std::size_t(h.to)] >= stage) ++high;
            }
            if (high <= 1) mark[std::size_t(v)] = stage;
        }
    }
    return mark;
}

namespace {

// height[state (u -> v)] = max distance from v to a tree leaf within v's
// component after removing edge (u, v).
std::vector<i64> directional_heights(const WeightedTree& tree,
                                     const std::vector<std::vector<Half>>& adj) {
    std::vector<i64> height(2 * tree.edges.size(), 0);
    if (tree.n == 1) return height;

    std::vector<VertexId> order;
    order.reserve(std::size_t(tree.n));
    std::vector<VertexId> parent(std::size_t(tree.n) + 1, 0);
    std::vector<char> seen(std::size_t(tree.n) + 1, 0);
    order.push_back(1);
    seen[1] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const VertexId v = order[head];
        for (const Half& h : adj[std::size_t(v)]) {
            if (!seen[std::size_t(h.to)]) {
                seen[std::size_t(h.to)] = 1;
                parent[std::size_t(h.to)] = v;
                order.push_back(h.to);
            }
        }
    }

    // Downward heights, leaves first.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VertexId v = *it;
        for (const Half& h : adj[std::size_t(v)]) {
            if (h.to == parent[std::size_t(v)]) continue;
            // state (v -> h.to): height below h.to
            if (adj[std::size_t(h.to)].size() == 1) {
                height[h.state_to] = 0;
            } else {
                i64 best = 0;
                for (const Half& g : adj[std::size_t(h.to)]) {
                    if (g.to == v) continue;
                    best = std::max(best, 1 + height[g.state_to]);
                }
                height[h.state_to] = best;
            }
        }
    }

    // Upward heights in breadth order; at vertex p all states (p -> w) are
    // known, so each child's excluded maximum comes from the top two.
    for (const VertexId p : order) {
        const auto& halves = adj[std::size_t(p)];
        i64 top1 = -1, top2 = -1;
        VertexId arg1 = 0;
        for (const Half& h : halves) {
            const i64 val = 1 + height[h.state_to];
            if (val > top1) {
                top2 = top1;
                top1 = val;
                arg1 = h.to;
            } else if (val > top2) {
                top2 = val;
            }
        }
        for (const Half& h : halves) {
            if (h.to == parent[std::size_t(p)]) continue;
            if (halves.size() == 1) {
                height[h.state_back] = 0;  // p has degree 1
            } else {
                const i64 excl = h.to == arg1 ? top2 : top1;
                height[h.state_back] = excl < 0 ? 0 : excl;
            }
        }
    }
    return height;
}

}  // namespace

std::vector<i64> leaf_levels_linear(const WeightedTree& tree) {
    const auto adj = build_adjacency(tree);
    check_tree(tree);
    std::vector<i64> kmin(std::size_t(tree.n) + 1, 0);
    if (tree.n == 1) {
        kmin[1] = 1;
        return kmin;
    }
    const std::vector<i64> height = directional_heights(tree, adj);
    for (VertexId v = 1; v <= tree.n; ++v) {
        const auto& halves = adj[std::size_t(v)];
        if (halves.size() == 1) {
            kmin[std::size_t(v)] = 1;
            continue;
        }
        i64 top1 = -1, top2 = -1;
        for (const Half& h : halves) {
            const i64 val = height[h.state_to];
            if (val > top1) {
                top2 = top1;
                top1 = val;
            } else if (val > top2) {
                top2 = val;
            }
        }
        kmin[std::size_t(v)] = 1 + (1 + top2);
    }
    return kmin;
}

namespace {

// When `members` induces a simple path, returns it ordered from the
// smaller-id endpoint; nullopt otherwise.
std::optional<std::vector<VertexId>> induced_path(const WeightedTree& tree,
                                                  const std::vector<std::vector<Half>>& adj,
                                                  const std::vector<char>& members) {
    std::vector<VertexId> vertices;
    for (VertexId v = 1; v <= tree.n; ++v) {
        if (members[std::size_t(v)]) vertices.push_back(v);
    }
    if (vertices.empty()) return std::vector<VertexId>{};
    i64 inner_edges = 0;
    std::vector<VertexId> endpoints;
    for (const VertexId v : vertices) {
        i64 deg = 0;
        for (const Half& h : adj[std::size_t(v)]) {
            if (members[std::size_t(h.to)]) ++deg;
        }
        if (deg > 2) return std::nullopt;
        if (deg <= 1) endpoints.push_back(v);
        inner_edges += deg;
    }
    inner_edges /= 2;
    if (inner_edges != i64(vertices.size()) - 1) return std::nullopt;

    // Connectivity walk from the smaller endpoint.
    if (vertices.size() == 1) return std::vector<VertexId>{vertices[0]};
    if (endpoints.size() != 2) return std::nullopt;
    std::vector<VertexId> path{std::min(endpoints[0], endpoints[1])};
    VertexId prev = 0;
    while (true) {
        const VertexId cur = path.back();
        VertexId next = 0;
        for (const Half& h : adj[std::size_t(cur)]) {
            if (members[std::size_t(h.to)] && h.to != prev) {
                next = h.to;
                break;
            }
        }
        if (next == 0) break;
        prev = cur;
        path.push_back(next);
    }
    if (path.size() != vertices.size()) return std::nullopt;
    return path;
}

}  // namespace

RecognitionResult is_k_level_caterpillar(const WeightedTree& tree, i64 k) {
    if (k < 0) throw InvalidInput("recognition: k must be nonnegative");
    check_tree(tree);
    const auto adj = build_adjacency(tree);
    const std::vector<i64> kmin = leaf_levels_linear(tree);

    std::vector<char> high(std::size_t(tree.n) + 1, 0);
    bool any_high = false;
    for (VertexId v = 1; v <= tree.n; ++v) {
        if (kmin[std::size_t(v)] > k) {
            high[std::size_t(v)] = 1;
            any_high = true;
        }
    }

    RecognitionResult result;
    if (!any_high) {
        // Every vertex is within level k; a single maximum-level vertex
        // serves as a length-zero central path.
        VertexId best = 1;
        for (VertexId v = 2; v <= tree.n; ++v) {
            if (kmin[std::size_t(v)] > kmin[std::size_t(best)]) best = v;
        }
        result.is_caterpillar = true;
        result.certificate.central_path = {best};
        for (const Half& h : adj[std::size_t(best)]) {
            result.certificate.legs[best].push_back(h.to);
        }
        return result;
    }

    auto path = induced_path(tree, adj, high);
    if (!path) return result;
    result.is_caterpillar = true;
    result.certificate.central_path = *path;
    for (const VertexId v : *path) {
        for (const Half& h : adj[std::size_t(v)]) {
            if (!high[std::size_t(h.to)]) result.certificate.legs[v].push_back(h.to);
        }
    }
    return result;
}

bool is_k_level_caterpillar_brute(const WeightedTree& tree, i64 k) {
    if (tree.n > 64) throw InvalidInput("brute recognizer: guarded to n <= 64");
    const auto adj = build_adjacency(tree);
    if (i64(tree.edges.size()) != tree.n - 1 || !connected(tree, adj)) return false;

    const std::vector<i64> mark = leaf_levels_staged(tree, k);

    for (VertexId a = 1; a <= tree.n; ++a) {
        // Tree path from a to every b via parent pointers.
        std::vector<VertexId> parent(std::size_t(tree.n) + 1, 0);
        std::vector<char> seen(std::size_t(tree.n) + 1, 0);
        std::queue<VertexId> queue;
        queue.push(a);
        seen[std::size_t(a)] = 1;
        while (!queue.empty()) {
            const VertexId v = queue.front();
            queue.pop();
            for (const Half& h : adj[std::size_t(v)]) {
                if (!seen[std::size_t(h.to)]) {
                    seen[std::size_t(h.to)] = 1;
                    parent[std::size_t(h.to)] = v;
                    queue.push(h.to);
                }
            }
        }
        for (VertexId b = a; b <= tree.n; ++b) {
            std::vector<char> on_path(std::size_t(tree.n) + 1, 0);
            for (VertexId v = b;; v = parent[std::size_t(v)]) {
                on_path[std::size_t(v)] = 1;
                if (v == a) break;
            }
            bool ok = true;
            for (VertexId v = 1; v <= tree.n && ok; ++v) {
                if (!on_path[std::size_t(v)] && mark[std::size_t(v)] > k) ok = false;
            }
            if (ok) return true;
        }
    }
    return false;
}

namespace {

struct CaterpillarDp {
    const WeightedTree& tree;
    std::vector<std::vector<Half>> adj;
    i64 keff;
    std::vector<std::vector<i64>> wmax;  // [level][directed state]
    std::vector<i64> legterm;            // per directed state, at level keff
    std::vector<i64> leg_sum;            // per vertex: sum of all leg terms
    std::vector<i64> p1;                 // per directed state
    std::vector<VertexId> p1_choice;     // extension neighbor, 0 = endpoint
    std::vector<i64> ext;                // per directed state

    CaterpillarDp(const WeightedTree& t, i64 k, VertexId root)
        : tree(t), adj(build_adjacency(t)), keff(std::min(k, t.n)) {
        check_tree(t);
        if (root < 1 || root > t.n) throw InvalidInput("traversal root outside [1, n]");
        compute_wmax();
        compute_legs();
        compute_p1(root);
    }

    i64 wv(VertexId v) const { return tree.vertex_weight[std::size_t(v)]; }

    static i64 clamp0(i64 x) { return x > 0 ? x : 0; }
    static i64 add(i64 structure, i64 weight) {
        return structure <= kNegInf ? kNegInf : structure + weight;
    }

    // wmax[j][(u -> v)]: best structure weight rooted at v within v's side of
    // the edge, with v a <= j-level-leaf. Level-synchronous over all states.
    void compute_wmax() {
        const std::size_t states = 2 * tree.edges.size();
        wmax.assign(std::size_t(keff) + 1, std::vector<i64>(states, kNegInf));
        std::vector<i64> contrib(std::size_t(tree.n) + 1, 0);
        for (i64 j = 1; j <= keff; ++j) {
            const auto& prev = wmax[std::size_t(j - 1)];
            auto& cur = wmax[std::size_t(j)];
            for (VertexId v = 1; v <= tree.n; ++v) {
                i64 total = 0;
                for (const Half& h : adj[std::size_t(v)]) {
                    total += clamp0(add(prev[h.state_to], h.weight));
                }
                contrib[std::size_t(v)] = total;
            }
            for (std::size_t e = 0; e < tree.edges.size(); ++e) {
                const auto& edge = tree.edges[e];
                const i64 take_v = wv(edge.v) + contrib[std::size_t(edge.v)] -
                                   clamp0(add(prev[2 * e + 1], edge.weight));
                cur[2 * e] = std::max(prev[2 * e], take_v);
                const i64 take_u = wv(edge.u) + contrib[std::size_t(edge.u)] -
                                   clamp0(add(prev[2 * e], edge.weight));
                cur[2 * e + 1] = std::max(prev[2 * e + 1], take_u);
            }
        }
    }

    void compute_legs() {
        const std::size_t states = 2 * tree.edges.size();
        legterm.assign(states, 0);
        const auto& final_level = wmax[std::size_t(keff)];
        for (std::size_t e = 0; e < tree.edges.size(); ++e) {
            legterm[2 * e] = clamp0(add(final_level[2 * e], tree.edges[e].weight));
            legterm[2 * e + 1] = clamp0(add(final_level[2 * e + 1], tree.edges[e].weight));
        }
        leg_sum.assign(std::size_t(tree.n) + 1, 0);
        for (VertexId v = 1; v <= tree.n; ++v) {
            for (const Half& h : adj[std::size_t(v)]) {
                leg_sum[std::size_t(v)] += legterm[h.state_to];
            }
        }
    }

    // p1[(u -> v)]: best caterpillar whose central path starts at v and stays
    // in v's side of the edge; v's legs exclude the direction back to u.
    void compute_p1(VertexId root) {
        const std::size_t states = 2 * tree.edges.size();
        p1.assign(states, 0);
        p1_choice.assign(states, 0);
        ext.assign(states, kNegInf);
        if (tree.n == 1) return;

        std::vector<VertexId> order;
        order.reserve(std::size_t(tree.n));
        std::vector<VertexId> parent(std::size_t(tree.n) + 1, 0);
        std::vector<char> seen(std::size_t(tree.n) + 1, 0);
        order.push_back(root);
        seen[std::size_t(root)] = 1;
        for (std::size_t head = 0; head < order.size(); ++head) {
            for (const Half& h : adj[std::size_t(order[head])]) {
                if (!seen[std::size_t(h.to)]) {
                    seen[std::size_t(h.to)] = 1;
                    parent[std::size_t(h.to)] = order[head];
                    order.push_back(h.to);
                }
            }
        }

        // Downward states, deepest vertices first.
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const VertexId v = *it;
            const VertexId par = parent[std::size_t(v)];
            if (par == 0) continue;
            std::size_t state_down = 0, state_up = 0;
            i64 edge_weight = 0;
            i64 best_ext = kNegInf;
            VertexId best_child = 0;
            for (const Half& h : adj[std::size_t(v)]) {
                if (h.to == par) {
                    state_down = h.state_back;  // (par -> v)
                    state_up = h.state_to;      // (v -> par)
                    edge_weight = h.weight;
                    continue;
                }
                if (ext[h.state_to] > best_ext) {
                    best_ext = ext[h.state_to];
                    best_child = h.to;
                }
            }
            i64 value = wv(v) + leg_sum[std::size_t(v)] - legterm[state_up];
            if (best_ext > 0) {
                value += best_ext;
                p1_choice[state_down] = best_child;
            }
            p1[state_down] = value;
            ext[state_down] = value + edge_weight - legterm[state_down];
        }

        // Upward states: at vertex p every state (p -> w) is ready, so each
        // child v takes the maximum extension excluding itself.
        for (const VertexId p : order) {
            i64 top1 = kNegInf, top2 = kNegInf;
            VertexId arg1 = 0;
            for (const Half& h : adj[std::size_t(p)]) {
                const i64 val = ext[h.state_to];
                if (val > top1) {
                    top2 = top1;
                    top1 = val;
                    arg1 = h.to;
                } else if (val > top2) {
                    top2 = val;
                }
            }
            for (const Half& h : adj[std::size_t(p)]) {
                const VertexId v = h.to;
                if (parent[std::size_t(v)] != p) continue;
                const std::size_t state = h.state_back;  // (v -> p)
                const i64 excl = v == arg1 ? top2 : top1;
                i64 value = wv(p) + leg_sum[std::size_t(p)] - legterm[h.state_to];
                if (excl > 0) {
                    value += excl;
                    p1_choice[state] = v == arg1 ? second_arg(p, v) : arg1;
                }
                p1[state] = value;
                ext[state] = value + h.weight - legterm[state];
            }
        }
    }

    VertexId second_arg(VertexId p, VertexId excluded) const {
        i64 best = kNegInf;
        VertexId arg = 0;
        for (const Half& h : adj[std::size_t(p)]) {
            if (h.to == excluded) continue;
            if (ext[h.state_to] > best) {
                best = ext[h.state_to];
                arg = h.to;
            }
        }
        return arg;
    }

    const Half& half(VertexId v, VertexId to) const {
        for (const Half& h : adj[std::size_t(v)]) {
            if (h.to == to) return h;
        }
        throw ConsistencyError("caterpillar DP: missing adjacency entry");
    }

    // Path chain following recorded extension choices, starting at `to` and
    // walking away from `from`.
    void collect_chain(VertexId from, VertexId to, std::vector<VertexId>& out) const {
        VertexId prev = from, cur = to;
        while (cur != 0) {
            out.push_back(cur);
            const VertexId next = p1_choice[half(prev, cur).state_to];
            prev = cur;
            cur = next;
        }
    }

    // Structure achieving wmax[level][(from -> v)], collected into the witness.
    void collect_structure(VertexId from, VertexId v, i64 level, std::vector<VertexId>& vertices,
                           std::vector<std::pair<VertexId, VertexId>>& edges) const {
        const std::size_t state = half(from, v).state_to;
        i64 first = 1;
        while (first < level && wmax[std::size_t(first)][state] != wmax[std::size_t(level)][state]) {
            ++first;
        }
        // At the first level attaining the value the take branch won.
        vertices.push_back(v);
        if (first == 1) return;  // v alone
        for (const Half& h : adj[std::size_t(v)]) {
            if (h.to == from) continue;
            if (clamp0(add(wmax[std::size_t(first - 1)][h.state_to], h.weight)) > 0) {
                edges.emplace_back(v, h.to);
                collect_structure(v, h.to, first - 1, vertices, edges);
            }
        }
    }
};

}  // namespace

CaterpillarWitness max_weight_caterpillar_from(const WeightedTree& tree, i64 k, VertexId root) {
    if (k < 0) throw InvalidInput("max weight caterpillar: k must be nonnegative");
    CaterpillarDp dp(tree, k, root);

    VertexId apex = 0;
    i64 best = kNegInf;
    for (VertexId v = 1; v <= tree.n; ++v) {
        i64 top1 = kNegInf, top2 = kNegInf;
        for (const Half& h : dp.adj[std::size_t(v)]) {
            const i64 val = dp.ext[h.state_to];
            if (val > top1) {
                top2 = top1;
                top1 = val;
            } else if (val > top2) {
                top2 = val;
            }
        }
        const i64 value = dp.wv(v) + dp.leg_sum[std::size_t(v)] + CaterpillarDp::clamp0(top1) +
                          CaterpillarDp::clamp0(top2);
        if (value > best) {
            best = value;
            apex = v;
        }
    }

    // Path arms out of the apex: the two best positive extensions.
    VertexId arm1 = 0, arm2 = 0;
    i64 ext1 = 0, ext2 = 0;
    for (const Half& h : dp.adj[std::size_t(apex)]) {
        const i64 val = dp.ext[h.state_to];
        if (val > ext1) {
            ext2 = ext1;
            arm2 = arm1;
            ext1 = val;
            arm1 = h.to;
        } else if (val > ext2) {
            ext2 = val;
            arm2 = h.to;
        }
    }

    CaterpillarWitness witness;
    witness.weight = best;
    std::vector<VertexId> chain1, chain2;
    if (arm1 != 0) dp.collect_chain(apex, arm1, chain1);
    if (arm2 != 0) dp.collect_chain(apex, arm2, chain2);
    witness.path.assign(chain2.rbegin(), chain2.rend());
    witness.path.push_back(apex);
    witness.path.insert(witness.path.end(), chain1.begin(), chain1.end());

    std::vector<char> on_path(std::size_t(tree.n) + 1, 0);
    for (const VertexId v : witness.path) on_path[std::size_t(v)] = 1;
    witness.vertices = witness.path;
    for (std::size_t i = 0; i + 1 < witness.path.size(); ++i) {
        witness.edges.emplace_back(witness.path[i], witness.path[i + 1]);
    }
    for (const VertexId v : witness.path) {
        for (const Half& h : dp.adj[std::size_t(v)]) {
            if (on_path[std::size_t(h.to)]) continue;
            if (dp.legterm[h.state_to] > 0) {
                witness.edges.emplace_back(v, h.to);
                dp.collect_structure(v, h.to, dp.keff, witness.vertices, witness.edges);
            }
        }
    }
    std::sort(witness.vertices.begin(), witness.vertices.end());
    for (auto& [u, v] : witness.edges) {
        if (u > v) std::swap(u, v);
    }
    std::sort(witness.edges.begin(), witness.edges.end());

    // Audit: the witness must account exactly for the reported weight.
    std::map<std::pair<VertexId, VertexId>, i64> edge_weight;
    for (const auto& e : tree.edges) {
        edge_weight[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.weight;
    }
    i64 audit = 0;
    for (const VertexId v : witness.vertices) audit += tree.vertex_weight[std::size_t(v)];
    for (const auto& [u, v] : witness.edges) audit += edge_weight.at({u, v});
    if (audit != witness.weight) {
        throw ConsistencyError("caterpillar witness weight mismatch: " + std::to_string(audit) +
                               " vs " + std::to_string(witness.weight));
    }
    return witness;
}

CaterpillarWitness max_weight_caterpillar(const WeightedTree& tree, i64 k) {
    return max_weight_caterpillar_from(tree, k, 1);
}

CaterpillarWitness max_weight_caterpillar_brute(const WeightedTree& tree, i64 k) {
    if (tree.n > 20) throw InvalidInput("brute caterpillar: guarded to n <= 20");
    check_tree(tree);
    const auto adj = build_adjacency(tree);

    CaterpillarWitness best;
    best.weight = kNegInf;
    for (std::uint32_t mask = 1; mask < (1u << tree.n); ++mask) {
        // Connectivity within the subset.
        const int start = __builtin_ctz(mask);
        std::uint32_t seen = 1u << start;
        std::vector<VertexId> stack{start + 1};
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (const Half& h : adj[std::size_t(v)]) {
                const std::uint32_t bit = 1u << (h.to - 1);
                if ((mask & bit) && !(seen & bit)) {
                    seen |= bit;
                    stack.push_back(h.to);
                }
            }
        }
        if (seen != mask) continue;

        WeightedTree sub;
        sub.n = __builtin_popcount(mask);
        sub.vertex_weight.assign(std::size_t(sub.n) + 1, 0);
        std::vector<VertexId> renumber(std::size_t(tree.n) + 1, 0);
        i64 weight = 0;
        VertexId next_id = 1;
        std::vector<VertexId> members;
        for (VertexId v = 1; v <= tree.n; ++v) {
            if (mask & (1u << (v - 1))) {
                renumber[std::size_t(v)] = next_id;
                sub.vertex_weight[std::size_t(next_id)] = tree.vertex_weight[std::size_t(v)];
                weight += tree.vertex_weight[std::size_t(v)];
                members.push_back(v);
                ++next_id;
            }
        }
        std::vector<std::pair<VertexId, VertexId>> sub_edges;
        for (const auto& e : tree.edges) {
            if (renumber[std::size_t(e.u)] && renumber[std::size_t(e.v)]) {
                sub.edges.push_back({renumber[std::size_t(e.u)], renumber[std::size_t(e.v)], e.weight});
                sub_edges.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
                weight += e.weight;
            }
        }
        if (weight <= best.weight) continue;
        if (!is_k_level_caterpillar_brute(sub, k)) continue;
        best.weight = weight;
        best.vertices = members;
        best.edges = sub_edges;
        best.path.clear();
    }
    std::sort(best.edges.begin(), best.edges.end());
    return best;
}

}  // namespace dts

#pragma once

// Shared generators and brute-force oracles for the test suites. The oracles
// here deliberately use naive enumeration so they stay independent of the
// production solvers they check.

#include <algorithm>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "dts/caterpillar.hpp"
#include "dts/scheduler.hpp"

namespace testutil {

using dts::i64;

using Rng = std::mt19937_64;

inline i64 uniform(Rng& rng, i64 lo, i64 hi) {
    return lo + i64(rng() % std::uint64_t(hi - lo + 1));
}

// ---------------------------------------------------------------------------
// Scheduler oracle: scan every integer start tick.
// ---------------------------------------------------------------------------

struct BruteWindow {
    i64 ts = 0;
    i64 te = 0;
    i64 bottleneck = 0;
};

inline std::optional<BruteWindow> brute_find_window(
    const std::vector<const dts::LinkTimeline*>& links, i64 bandwidth, i64 duration, i64 t1,
    i64 t2, dts::FitPolicy policy) {
    std::optional<BruteWindow> chosen;
    for (i64 s = t1; s + duration <= t2; ++s) {
        i64 mab = dts::kInf;
        for (const dts::LinkTimeline* tl : links) {
            mab = std::min(mab, tl->min_availability(s, s + duration));
        }
        if (mab < bandwidth) continue;
        const BruteWindow candidate{s, s + duration, mab};
        switch (policy) {
            case dts::FitPolicy::FirstFit:
                if (!chosen) chosen = candidate;
                break;
            case dts::FitPolicy::LastFit:
                chosen = candidate;
                break;
            case dts::FitPolicy::BestFit:
                if (!chosen || candidate.bottleneck < chosen->bottleneck) chosen = candidate;
                break;
            case dts::FitPolicy::WorstFit:
                if (!chosen || candidate.bottleneck > chosen->bottleneck) chosen = candidate;
                break;
        }
    }
    return chosen;
}

// Random committed load built directly from valid event insertions.
inline dts::LinkTimeline random_timeline(Rng& rng, i64 capacity, int reservations, i64 horizon) {
    dts::LinkTimeline tl(1, 2, capacity);
    for (int i = 0; i < reservations; ++i) {
        const i64 s = uniform(rng, 0, horizon - 2);
        const i64 e = uniform(rng, s + 1, horizon);
        const i64 room = tl.min_availability(s, e);
        if (room <= 0) continue;
        const i64 b = uniform(rng, 1, room);
        tl.insert_delta(s, -b);
        tl.insert_delta(e, b);
    }
    tl.check_consistent();
    return tl;
}

// ---------------------------------------------------------------------------
// Random trees via Pruefer sequences.
// ---------------------------------------------------------------------------

inline dts::WeightedTree random_tree(Rng& rng, i64 n, i64 weight_lo, i64 weight_hi) {
    dts::WeightedTree tree;
    tree.n = n;
    tree.vertex_weight.assign(std::size_t(n) + 1, 0);
    for (i64 v = 1; v <= n; ++v) {
        tree.vertex_weight[std::size_t(v)] = uniform(rng, weight_lo, weight_hi);
    }
    if (n == 1) return tree;
    if (n == 2) {
        tree.edges.push_back({1, 2, uniform(rng, weight_lo, weight_hi)});
        return tree;
    }
    std::vector<i64> pruefer(std::size_t(n) - 2);
    for (auto& p : pruefer) p = uniform(rng, 1, n);
    std::vector<i64> degree(std::size_t(n) + 1, 1);
    for (const i64 p : pruefer) ++degree[std::size_t(p)];
    std::priority_queue<i64, std::vector<i64>, std::greater<>> leaves;
    for (i64 v = 1; v <= n; ++v) {
        if (degree[std::size_t(v)] == 1) leaves.push(v);
    }
    for (const i64 p : pruefer) {
        const i64 leaf = leaves.top();
        leaves.pop();
        tree.edges.push_back({leaf, p, uniform(rng, weight_lo, weight_hi)});
        if (--degree[std::size_t(p)] == 1) leaves.push(p);
    }
    const i64 a = leaves.top();
    leaves.pop();
    const i64 b = leaves.top();
    tree.edges.push_back({a, b, uniform(rng, weight_lo, weight_hi)});
    return tree;
}

}  // namespace testutil

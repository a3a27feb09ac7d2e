#include "dts/multipath.hpp"

#include <algorithm>
#include <numeric>

namespace dts {

i64 pcost(const PathTariff& path, i64 packets) {
    path.validate();
    if (packets < 0 || packets > path.packet_cap) {
        throw InvalidInput("pcost: packet count outside [0, pmax]");
    }
    if (packets == 0) return 0;
    return path.fixed_cost + packets * path.per_packet;
}

namespace {

void validate_paths(std::span<const PathTariff> paths) {
    for (const PathTariff& p : paths) p.validate();
}

// Min cost of sending exactly r packets over `paths` for all r in [0, n].
// Paths sorted by descending per-packet cost; each DP step skips the path,
// uses it fully on top of a previous state, or starts a fresh plan with the
// path partially used (valid because the partially used path of an optimal
// plan has the largest per-packet cost among the used ones).
std::vector<i64> descending_cost_table(std::span<const PathTariff> paths, i64 n) {
    std::vector<std::size_t> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (paths[a].per_packet != paths[b].per_packet) {
            return paths[a].per_packet > paths[b].per_packet;
        }
        return a < b;
    });

    std::vector<i64> dp(std::size_t(n) + 1, kInf);
    dp[0] = 0;
    std::vector<i64> next(std::size_t(n) + 1);
    for (std::size_t idx : order) {
        const PathTariff& p = paths[idx];
        const i64 cap = std::min(p.packet_cap, n);
        const i64 full_cost = p.fixed_cost + p.packet_cap * p.per_packet;
        for (i64 j = 0; j <= n; ++j) {
            i64 best = dp[std::size_t(j)];
            if (j >= 1 && j <= cap) {
                best = std::min(best, p.fixed_cost + j * p.per_packet);
            }
            if (j > p.packet_cap && dp[std::size_t(j - p.packet_cap)] != kInf) {
                best = std::min(best, dp[std::size_t(j - p.packet_cap)] + full_cost);
            }
            next[std::size_t(j)] = best;
        }
        dp.swap(next);
    }
    return dp;
}

// Lexicographically smallest optimal packet-count vector: fix each count in
// original path order to the smallest value that still lets the remaining
// paths finish at the optimal cost.
std::vector<i64> lex_min_optimal_plan(std::span<const PathTariff> paths, i64 n, i64 opt_cost) {
    std::vector<i64> plan(paths.size(), 0);
    i64 remaining = n;
    i64 budget = opt_cost;
    for (std::size_t q = 0; q < paths.size(); ++q) {
        const std::vector<i64> suffix = descending_cost_table(paths.subspan(q + 1), remaining);
        const i64 cap = std::min(paths[q].packet_cap, remaining);
        for (i64 k = 0; k <= cap; ++k) {
            const i64 own = k == 0 ? 0 : paths[q].fixed_cost + k * paths[q].per_packet;
            const i64 rest = suffix[std::size_t(remaining - k)];
            if (rest != kInf && own + rest == budget) {
                plan[q] = k;
                remaining -= k;
                budget -= own;
                break;
            }
        }
    }
    return plan;
}

AllocationResult finish(std::span<const PathTariff> paths, i64 n, i64 cost) {
    if (cost == kInf) return {};
    return {true, cost, lex_min_optimal_plan(paths, n, cost)};
}

}  // namespace

AllocationResult solve_descending(std::span<const PathTariff> paths, i64 packets) {
    validate_paths(paths);
    if (packets < 0) throw InvalidInput("negative packet count");
    return finish(paths, packets, descending_cost_table(paths, packets).back());
}

AllocationResult solve_ascending(std::span<const PathTariff> paths, i64 packets) {
    validate_paths(paths);
    if (packets < 0) throw InvalidInput("negative packet count");
    const i64 n = packets;

    std::vector<std::size_t> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (paths[a].per_packet != paths[b].per_packet) {
            return paths[a].per_packet < paths[b].per_packet;
        }
        return a < b;
    });

    // full[j]: min cost of exactly j packets with every used path fully used,
    // over the paths processed so far.
    std::vector<i64> full(std::size_t(n) + 1, kInf);
    full[0] = 0;
    i64 best = kInf;
    for (std::size_t idx : order) {
        const PathTariff& p = paths[idx];
        // p as the single partially used path on top of cheaper full paths.
        for (i64 k = 1; k <= std::min(p.packet_cap, n); ++k) {
            if (full[std::size_t(n - k)] == kInf) continue;
            best = std::min(best, full[std::size_t(n - k)] + p.fixed_cost + k * p.per_packet);
        }
        if (p.packet_cap <= n) {
            const i64 full_cost = p.fixed_cost + p.packet_cap * p.per_packet;
            for (i64 j = n; j >= p.packet_cap; --j) {
                if (full[std::size_t(j - p.packet_cap)] == kInf) continue;
                full[std::size_t(j)] =
                    std::min(full[std::size_t(j)], full[std::size_t(j - p.packet_cap)] + full_cost);
            }
        }
    }
    best = std::min(best, full[std::size_t(n)]);
    return finish(paths, packets, best);
}

AllocationResult brute_allocation(std::span<const PathTariff> paths, i64 packets) {
    validate_paths(paths);
    if (packets < 0) throw InvalidInput("negative packet count");
    if (paths.size() > 15) throw InvalidInput("brute_allocation: guarded to P <= 15");

    const std::size_t p = paths.size();
    i64 best_cost = kInf;
    std::vector<i64> best_plan;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        std::vector<std::size_t> used;
        i64 capacity = 0;
        for (std::size_t i = 0; i < p; ++i) {
            if (mask & (1u << i)) {
                used.push_back(i);
                capacity += paths[i].packet_cap;
            }
        }
        if (capacity < packets) continue;
        // Fill the cheapest per-packet path first (the structure lemma).
        std::sort(used.begin(), used.end(), [&](std::size_t a, std::size_t b) {
            if (paths[a].per_packet != paths[b].per_packet) {
                return paths[a].per_packet < paths[b].per_packet;
            }
            return a < b;
        });
        std::vector<i64> plan(p, 0);
        i64 cost = 0;
        i64 left = packets;
        for (std::size_t i : used) {
            const i64 take = std::min(paths[i].packet_cap, left);
            plan[i] = take;
            cost += paths[i].fixed_cost + take * paths[i].per_packet;
            left -= take;
        }
        if (cost < best_cost || (cost == best_cost && plan < best_plan)) {
            best_cost = cost;
            best_plan = std::move(plan);
        }
    }
    if (best_cost == kInf) return {};
    return {true, best_cost, std::move(best_plan)};
}

HalfLineEnvelope::HalfLineEnvelope(std::span<const Line> lines) {
    std::vector<Line> sorted(lines.begin(), lines.end());
    // Steepest slope first; for equal slopes only the lowest intercept matters.
    std::sort(sorted.begin(), sorted.end(), [](const Line& a, const Line& b) {
        return a.slope != b.slope ? a.slope > b.slope : a.intercept < b.intercept;
    });

    using i128 = __int128;
    // With hull lines a (older) and b, and candidate c (slope a > b > c),
    // b is dominated when c overtakes a no later than b does.
    const auto dominated = [](const Line& a, const Line& b, const Line& c) {
        return i128(c.intercept - a.intercept) * (a.slope - b.slope) <=
               i128(b.intercept - a.intercept) * (a.slope - c.slope);
    };

    for (const Line& l : sorted) {
        if (!hull_.empty() && hull_.back().slope == l.slope) continue;
        while (hull_.size() >= 2 && dominated(hull_[hull_.size() - 2], hull_.back(), l)) {
            hull_.pop_back();
        }
        // A single remaining line is dropped when the newcomer is at least as
        // good everywhere on x >= 0.
        while (hull_.size() == 1 && l.intercept <= hull_.back().intercept) {
            hull_.pop_back();
        }
        hull_.push_back(l);
    }

    boundary_.reserve(hull_.size() > 0 ? hull_.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < hull_.size(); ++i) {
        // First integer x where hull_[i+1] is at least as low as hull_[i].
        boundary_.push_back(
            ceil_div(hull_[i + 1].intercept - hull_[i].intercept,
                     hull_[i].slope - hull_[i + 1].slope));
    }
}

i64 HalfLineEnvelope::value_at(i64 x) const {
    if (x < 0) throw InvalidInput("envelope: query at negative x");
    if (hull_.empty()) return kInf;
    const std::size_t seg =
        std::size_t(std::upper_bound(boundary_.begin(), boundary_.end(), x) - boundary_.begin());
    return hull_[seg].intercept + x * hull_[seg].slope;
}

i64 HalfLineEnvelope::Cursor::value_at(i64 x) {
    if (x < last_x_) throw InvalidInput("envelope cursor: queries must be nondecreasing");
    last_x_ = x;
    if (env_.hull_.empty()) return kInf;
    while (segment_ < env_.boundary_.size() && env_.boundary_[segment_] <= x) ++segment_;
    return env_.hull_[segment_].intercept + x * env_.hull_[segment_].slope;
}

}  // namespace dts

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "dts/min_deque.hpp"
#include "dts/numeric.hpp"

namespace dts {

// K tariff levels: a batch of total size S costs C(1) when S <= L(1), C(j)
// when L(j-1) < S <= L(j), and cannot be sent at all when S > L(K).
struct TariffTable {
    std::vector<i64> size_limit;  // L, strictly increasing, L(1) >= 1
    std::vector<i64> cost;        // C, strictly increasing, C(1) >= 0

    std::size_t levels() const { return size_limit.size(); }
    void validate() const;
};

// Cost of one batch of total size S, or nullopt when S exceeds L(K).
std::optional<i64> batch_cost(i64 total_size, const TariffTable& tariff);

struct BatchResult {
    bool feasible = false;
    i64 cost = 0;
    // Inclusive 1-based [first, last] packet ranges, in transfer order.
    std::vector<std::pair<i64, i64>> batches;
};

namespace detail {

struct NoopBatchObserver {
    void on_packet(i64 /*i*/, std::span<const i64> /*prefix*/,
                   std::span<const MonotoneMinDeque> /*bands*/, std::span<const i64> /*left*/,
                   std::span<const i64> /*right*/) {}
};

// In-order batching DP with one monotone deque per tariff band. Band j holds
// the candidate split points q with L(j-1) < SP(i) - SP(q) <= L(j); the
// left/right cursors, not the deque contents, drive migration between bands
// (a dominated entry still advances the cursors). Costs and predecessors are
// exact; ties prefer the latest predecessor. O(N*K).
template <typename Observer>
BatchResult min_total_cost_impl(std::span<const i64> sizes, const TariffTable& tariff,
                                Observer& observer) {
    tariff.validate();
    const i64 n = i64(sizes.size());
    const std::size_t k = tariff.levels();
    for (i64 i = 0; i < n; ++i) {
        if (sizes[std::size_t(i)] <= 0) throw InvalidInput("packet sizes must be positive");
        if (sizes[std::size_t(i)] > tariff.size_limit.back()) return {};  // never transferable
    }

    const std::vector<i64> sp = prefix_sums(sizes);
    std::vector<i64> cmin(std::size_t(n) + 1, kInf);
    std::vector<i64> pred(std::size_t(n) + 1, -1);
    cmin[0] = 0;

    std::vector<MonotoneMinDeque> band(k);
    std::vector<i64> left(k, 0), right(k, -1);
    band[0].push_back(0, 0);  // virtual packet 0 seeds band 1
    right[0] = 0;

    for (i64 i = 1; i <= n; ++i) {
        const i64 spi = sp[std::size_t(i)];
        for (std::size_t j = 0; j + 1 < k; ++j) {
            while (left[j] <= right[j] && spi - sp[std::size_t(left[j])] > tariff.size_limit[j]) {
                band[j].remove_front_if_key(left[j]);
                band[j + 1].push_back(left[j], cmin[std::size_t(left[j])]);
                ++right[j + 1];
                ++left[j];
            }
        }
        while (left[k - 1] <= right[k - 1] &&
               spi - sp[std::size_t(left[k - 1])] > tariff.size_limit[k - 1]) {
            band[k - 1].remove_front_if_key(left[k - 1]);
            ++left[k - 1];
        }

        for (std::size_t j = 0; j < k; ++j) {
            const i64 candidate = sat_add(tariff.cost[j], band[j].min_value());
            if (candidate < cmin[std::size_t(i)]) {
                cmin[std::size_t(i)] = candidate;
                pred[std::size_t(i)] = band[j].front()->key;
            }
        }

        observer.on_packet(i, sp, band, left, right);

        band[0].push_back(i, cmin[std::size_t(i)]);
        right[0] = i;
    }

    if (cmin[std::size_t(n)] == kInf) return {};
    BatchResult result{true, cmin[std::size_t(n)], {}};
    for (i64 i = n; i > 0; i = pred[std::size_t(i)]) {
        result.batches.emplace_back(pred[std::size_t(i)] + 1, i);
    }
    std::reverse(result.batches.begin(), result.batches.end());
    return result;
}

}  // namespace detail

BatchResult min_total_cost(std::span<const i64> sizes, const TariffTable& tariff);

// Same contract via lazily pruned binary heaps per band; O(N*K*log N).
BatchResult min_total_cost_heap(std::span<const i64> sizes, const TariffTable& tariff);

// O(N^2 * K) reference: tries every split point directly. Guarded to N <= 1000.
std::optional<i64> brute_min_total_cost(std::span<const i64> sizes, const TariffTable& tariff);

}  // namespace dts

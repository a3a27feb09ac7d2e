#include "dts/batching.hpp"

#include <queue>

namespace dts {

void TariffTable::validate() const {
    if (size_limit.empty() || size_limit.size() != cost.size()) {
        throw InvalidInput("tariff: L and C must be nonempty and the same length");
    }
    if (size_limit[0] < 1) throw InvalidInput("tariff: L(1) must be at least 1");
    if (cost[0] < 0) throw InvalidInput("tariff: costs must be nonnegative");
    for (std::size_t j = 1; j < size_limit.size(); ++j) {
        if (size_limit[j] <= size_limit[j - 1]) {
            throw InvalidInput("tariff: L must be strictly increasing");
        }
        if (cost[j] <= cost[j - 1]) {
            throw InvalidInput("tariff: C must be strictly increasing");
        }
    }
}

std::optional<i64> batch_cost(i64 total_size, const TariffTable& tariff) {
    tariff.validate();
    if (total_size <= 0) throw InvalidInput("batch_cost: size must be positive");
    auto it = std::lower_bound(tariff.size_limit.begin(), tariff.size_limit.end(), total_size);
    if (it == tariff.size_limit.end()) return std::nullopt;
    return tariff.cost[std::size_t(it - tariff.size_limit.begin())];
}

BatchResult min_total_cost(std::span<const i64> sizes, const TariffTable& tariff) {
    detail::NoopBatchObserver observer;
    return detail::min_total_cost_impl(sizes, tariff, observer);
}

BatchResult min_total_cost_heap(std::span<const i64> sizes, const TariffTable& tariff) {
    tariff.validate();
    const i64 n = i64(sizes.size());
    const std::size_t k = tariff.levels();
    for (i64 i = 0; i < n; ++i) {
        if (sizes[std::size_t(i)] <= 0) throw InvalidInput("packet sizes must be positive");
        if (sizes[std::size_t(i)] > tariff.size_limit.back()) return {};
    }

    const std::vector<i64> sp = prefix_sums(sizes);
    std::vector<i64> cmin(std::size_t(n) + 1, kInf);
    std::vector<i64> pred(std::size_t(n) + 1, -1);
    cmin[0] = 0;

    struct HeapEntry {
        i64 value;
        i64 idx;
        // Min cost first; the later split point wins ties.
        bool operator>(const HeapEntry& o) const {
            return value != o.value ? value > o.value : idx < o.idx;
        }
    };
    using Band = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;
    std::vector<Band> band(k);
    std::vector<i64> left(k, 0), right(k, -1);
    band[0].push({0, 0});
    right[0] = 0;

    for (i64 i = 1; i <= n; ++i) {
        const i64 spi = sp[std::size_t(i)];
        for (std::size_t j = 0; j + 1 < k; ++j) {
            while (left[j] <= right[j] && spi - sp[std::size_t(left[j])] > tariff.size_limit[j]) {
                band[j + 1].push({cmin[std::size_t(left[j])], left[j]});
                ++right[j + 1];
                ++left[j];  // stale copies in band[j] are pruned lazily
            }
        }
        while (left[k - 1] <= right[k - 1] &&
               spi - sp[std::size_t(left[k - 1])] > tariff.size_limit[k - 1]) {
            ++left[k - 1];
        }

        for (std::size_t j = 0; j < k; ++j) {
            while (!band[j].empty() && band[j].top().idx < left[j]) band[j].pop();
            if (band[j].empty()) continue;
            const i64 candidate = sat_add(tariff.cost[j], band[j].top().value);
            if (candidate < cmin[std::size_t(i)]) {
                cmin[std::size_t(i)] = candidate;
                pred[std::size_t(i)] = band[j].top().idx;
            }
        }

        band[0].push({cmin[std::size_t(i)], i});
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

std::optional<i64> brute_min_total_cost(std::span<const i64> sizes, const TariffTable& tariff) {
    tariff.validate();
    const i64 n = i64(sizes.size());
    if (n > 1000) throw InvalidInput("brute_min_total_cost: guarded to N <= 1000");
    for (i64 i = 0; i < n; ++i) {
        if (sizes[std::size_t(i)] <= 0) throw InvalidInput("packet sizes must be positive");
    }

    const std::vector<i64> sp = prefix_sums(sizes);
    std::vector<i64> cmin(std::size_t(n) + 1, kInf);
    cmin[0] = 0;
    for (i64 i = 1; i <= n; ++i) {
        for (i64 q = i - 1; q >= 0; --q) {
            const i64 size = sp[std::size_t(i)] - sp[std::size_t(q)];
            if (size > tariff.size_limit.back()) break;
            if (const auto cost = batch_cost(size, tariff)) {
                cmin[std::size_t(i)] =
                    std::min(cmin[std::size_t(i)], sat_add(cmin[std::size_t(q)], *cost));
            }
        }
    }
    if (cmin[std::size_t(n)] == kInf) return std::nullopt;
    return cmin[std::size_t(n)];
}

}  // namespace dts

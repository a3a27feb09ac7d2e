#include "dts/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dts {

i64 flat_fee_invoice(const FlatFeePlan& plan, i64 level, i64 upload, i64 download) {
    if (level < 1 || std::size_t(level) > plan.flat_fee.size() ||
        std::size_t(level) > plan.excess_rate.size()) {
        throw InvalidInput("flat fee: unknown quality level " + std::to_string(level));
    }
    if (plan.traffic_bound <= 0) throw InvalidInput("flat fee: traffic bound must be positive");
    const i64 combined = plan.combine == FlatFeePlan::Combine::Sum ? upload + download
                                                                   : std::max(upload, download);
    const i64 excess = std::max<i64>(0, combined - plan.traffic_bound);
    return plan.flat_fee[std::size_t(level - 1)] + plan.excess_rate[std::size_t(level - 1)] * excess;
}

i64 price_fixed_bw_fixed_dur(const PricingParams& params, const FixedBwFixedDurRequest& req,
                             const Rational& utilization) {
    const i64 slack = req.t2 - req.t1 - req.duration;
    if (slack < 0) throw InvalidInput("price: negative slack");
    if (req.lmax <= 0) throw InvalidInput("price: lmax must be positive");
    if (utilization < Rational(0) || utilization > Rational(1)) {
        throw InvalidInput("price: utilization outside [0, 1]");
    }
    Rational price = params.alpha * Rational(req.bandwidth) * Rational(req.duration) /
                     (Rational(1 + slack) * Rational(req.lmax));
    price = price * (Rational(1) + params.beta * utilization);
    return price.round_half_up();
}

i64 price_fixed_data(const PricingParams& params, const FixedDataFixedDurRequest& req) {
    if (req.t2 <= req.t1) throw InvalidInput("price: empty transfer window");
    Rational price = params.alpha * Rational(req.total_data) / Rational(req.t2 - req.t1);
    if (req.ordered) price = price * params.gamma;
    return price.round_half_up();
}

i64 price_var_dur(const PricingParams& params, i64 actual_duration) {
    if (actual_duration < 0) throw InvalidInput("price: negative duration");
    if (actual_duration <= params.included_duration) return params.fixed_cost;
    return params.fixed_cost + params.variable_rate * (actual_duration - params.included_duration);
}

i64 risk_rank(const TransferRequest& req) {
    return std::visit(
        [](const auto& r) -> i64 {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, FixedDataFixedDurRequest>) {
                return r.ordered ? 2 : 1;
            } else if constexpr (std::is_same_v<T, FixedBwFixedDurRequest>) {
                return 3;
            } else if constexpr (std::is_same_v<T, FixedBwVarDurRequest>) {
                return 4;
            } else {
                return 5;
            }
        },
        req);
}

void validate_scenarios(std::span<const ForecastScenario> scenarios) {
    if (scenarios.empty()) throw InvalidInput("scenarios: need at least one");
    Rational sum(0);
    for (const auto& sc : scenarios) {
        if (sc.prob < Rational(0) || sc.prob > Rational(1)) {
            throw InvalidInput("scenarios: probability outside [0, 1]");
        }
        sum = sum + sc.prob;
    }
    const Rational tol(1, 1000000000);
    const Rational gap = sum < Rational(1) ? Rational(1) - sum : sum - Rational(1);
    if (gap > tol) {
        throw InvalidInput("scenarios: probabilities sum to " + sum.to_string() + ", expected 1");
    }
}

namespace {

// Self-contained sampling on top of mt19937_64 keeps scenario generation
// byte-identical across standard library implementations.
i64 uniform_below(std::mt19937_64& rng, i64 n) { return i64(rng() % std::uint64_t(n)); }

i64 poisson_sample(std::mt19937_64& rng, double mean) {
    if (mean <= 0) return 0;
    if (mean > 1e6) mean = 1e6;
    const double limit = std::exp(-mean);
    double product = 1.0;
    i64 count = -1;
    do {
        ++count;
        product *= double(rng() >> 11) * 0x1.0p-53;  // uniform in [0, 1)
    } while (product > limit);
    return count;
}

}  // namespace

std::vector<ForecastScenario> baseline_forecaster(std::span<const HistoryRecord> history, i64 t1,
                                                  i64 t2, i64 scenario_count, std::uint64_t seed) {
    if (scenario_count < 1) throw InvalidInput("forecaster: scenario count must be >= 1");
    if (t2 <= t1) throw InvalidInput("forecaster: empty forecast window");

    std::vector<ForecastScenario> scenarios(std::size_t(scenario_count));
    for (auto& sc : scenarios) sc.prob = Rational(1, scenario_count);
    if (history.empty()) return scenarios;

    i64 lo = history.front().arrival, hi = history.front().arrival;
    for (const auto& rec : history) {
        lo = std::min(lo, rec.arrival);
        hi = std::max(hi, rec.arrival);
    }
    const double rate = double(history.size()) / double(hi - lo + 1);

    std::mt19937_64 rng(seed);
    for (auto& sc : scenarios) {
        const i64 count = poisson_sample(rng, rate * double(t2 - t1));
        sc.fakes.reserve(std::size_t(count));
        for (i64 j = 0; j < count; ++j) {
            const auto& rec = history[std::size_t(uniform_below(rng, i64(history.size())))];
            FakeRequest fake;
            fake.arrival = t1 + uniform_below(rng, t2 - t1);
            fake.request = rec.request;
            fake.estimated_duration = rec.actual_duration;
            sc.fakes.push_back(std::move(fake));
        }
        std::stable_sort(sc.fakes.begin(), sc.fakes.end(),
                         [](const FakeRequest& a, const FakeRequest& b) { return a.arrival < b.arrival; });
    }
    return scenarios;
}

}  // namespace dts

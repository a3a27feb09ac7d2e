#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dts/network.hpp"
#include "dts/numeric.hpp"

namespace dts {

// Classic ISP plan: flat fee per quality level plus an excess rate once the
// combined monthly traffic passes the bound.
struct FlatFeePlan {
    enum class Combine { Sum, Max };
    std::vector<i64> flat_fee;     // F(j), 1-based level j
    std::vector<i64> excess_rate;  // E(j)
    i64 traffic_bound = 0;         // B, > 0
    Combine combine = Combine::Sum;
};

// F(j) + E(j) * max(0, combine(U, D) - bound). Throws on an unknown level.
i64 flat_fee_invoice(const FlatFeePlan& plan, i64 level, i64 upload, i64 download);

struct TimeMultiplier {
    i64 from = 0;  // inclusive
    i64 to = 0;    // exclusive
    Rational factor{1};
};

struct PricingParams {
    Rational alpha{1};  // base rate coefficient
    Rational beta{1};   // utilization surcharge coefficient
    Rational gamma{6, 5};  // ordered-delivery surcharge, >= 1
    i64 fixed_cost = 0;          // CF for variable-duration service
    i64 variable_rate = 1;       // CV per tick beyond the included duration
    i64 included_duration = 0;   // D
    std::vector<TimeMultiplier> time_multipliers;  // optional, first match wins

    Rational multiplier_at(i64 tick) const {
        for (const auto& m : time_multipliers) {
            if (tick >= m.from && tick < m.to) return m.factor;
        }
        return Rational(1);
    }
};

// alpha * B * D / ((1 + slack) * lmax) * (1 + beta * u), rounded half-up.
// u is the fraction of the chosen path's bandwidth already reserved.
i64 price_fixed_bw_fixed_dur(const PricingParams& params, const FixedBwFixedDurRequest& req,
                             const Rational& utilization);

// alpha * TD / (t2 - t1), times gamma for ordered delivery, rounded half-up.
i64 price_fixed_data(const PricingParams& params, const FixedDataFixedDurRequest& req);

// CF while within the included duration, then CF + CV * (D' - D).
i64 price_var_dur(const PricingParams& params, i64 actual_duration);

// Risk ordering: unordered data < ordered data < fixed-bw-fixed-dur <
// variable duration < any precedence group.
i64 risk_rank(const TransferRequest& req);

struct FakeRequest {
    i64 arrival = 0;
    TransferRequest request;
    // Duration estimate used when simulating a variable-duration fake.
    std::optional<i64> estimated_duration;
};

struct ForecastScenario {
    Rational prob{0};
    std::vector<FakeRequest> fakes;  // sorted by arrival
};

// Probabilities must sum to 1; a slack of 1e-9 is allowed because decimal
// inputs are quantized on parse. Throws otherwise.
void validate_scenarios(std::span<const ForecastScenario> scenarios);

struct HistoryRecord {
    i64 arrival = 0;
    bool accepted = false;
    TransferRequest request;
    std::optional<i64> actual_duration;  // observed for released var-dur requests
};

// K equally likely scenarios resampling the history (with replacement) at a
// Poisson rate fitted to it; arrivals land in [t1, t2). Deterministic for a
// fixed seed. An empty history yields K empty scenarios.
std::vector<ForecastScenario> baseline_forecaster(std::span<const HistoryRecord> history, i64 t1,
                                                  i64 t2, i64 scenario_count, std::uint64_t seed);

}  // namespace dts

#pragma once

#include <span>

#include "dts/pricing.hpp"
#include "dts/scheduler.hpp"

namespace dts {

// Replays fakes in arrival order against a copy of the schedule, greedily
// accepting whatever fits and summing quoted prices. The live scheduler is
// never touched. Variable-duration fakes are priced and held for their
// estimated duration (falling back to the configured horizon).
i64 simulate_revenue(const Scheduler& snapshot, std::span<const FakeRequest> fakes,
                     FitPolicy policy);

// Probability-weighted revenue over the scenario set, exact.
Rational expected_revenue(std::span<const ForecastScenario> scenarios, const Scheduler& snapshot,
                          FitPolicy policy);

struct FloorQuote {
    i64 floor = 0;          // minimum revenue-neutral price
    i64 formula_price = 0;  // price from the per-kind formula
    i64 quote = 0;          // max(floor, formula_price)
    Rational er_reject{0};
    Rational er_accept{0};  // candidate committed at price 0
};

// Prices a schedulable candidate so that accepting it at the quote never
// loses simulated revenue versus rejecting it. Throws when the candidate
// cannot be scheduled at all.
FloorQuote floor_price(const Scheduler& snapshot, const TransferRequest& candidate,
                       std::span<const ForecastScenario> scenarios, FitPolicy policy);

}  // namespace dts

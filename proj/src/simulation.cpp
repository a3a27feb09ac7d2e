#include "dts/simulation.hpp"

namespace dts {

namespace {

// Fakes with duration estimates are held for the estimate instead of the full
// horizon, mirroring how the forecast describes their expected behaviour.
SubmitOutcome submit_fake(Scheduler& sim, const FakeRequest& fake, std::size_t index,
                          FitPolicy policy) {
    const std::string id = "fake-" + std::to_string(index + 1);
    if (const auto* var = std::get_if<FixedBwVarDurRequest>(&fake.request);
        var != nullptr && fake.estimated_duration.has_value()) {
        const i64 duration = std::max<i64>(1, *fake.estimated_duration);
        FixedBwFixedDurRequest est{var->t1, var->t1 + duration, var->bandwidth,
                                   duration, var->lmax,         var->s,
                                   var->f};
        SubmitOutcome outcome = sim.submit(id, est, policy);
        if (outcome.accepted) {
            outcome.reservations[0].price = price_var_dur(sim.options().pricing, duration);
        }
        return outcome;
    }
    return sim.submit(id, fake.request, policy);
}

}  // namespace

i64 simulate_revenue(const Scheduler& snapshot, std::span<const FakeRequest> fakes,
                     FitPolicy policy) {
    for (std::size_t i = 1; i < fakes.size(); ++i) {
        if (fakes[i].arrival < fakes[i - 1].arrival) {
            throw InvalidInput("simulate_revenue: fakes must be sorted by arrival");
        }
    }
    Scheduler sim = snapshot;
    i64 revenue = 0;
    for (std::size_t i = 0; i < fakes.size(); ++i) {
        const SubmitOutcome outcome = submit_fake(sim, fakes[i], i, policy);
        if (outcome.accepted) {
            for (const Reservation& res : outcome.reservations) revenue += res.price;
        }
    }
    return revenue;
}

Rational expected_revenue(std::span<const ForecastScenario> scenarios, const Scheduler& snapshot,
                          FitPolicy policy) {
    validate_scenarios(scenarios);
    Rational er(0);
    for (const ForecastScenario& sc : scenarios) {
        er = er + sc.prob * Rational(simulate_revenue(snapshot, sc.fakes, policy));
    }
    return er;
}

FloorQuote floor_price(const Scheduler& snapshot, const TransferRequest& candidate,
                       std::span<const ForecastScenario> scenarios, FitPolicy policy) {
    Scheduler with_candidate = snapshot;
    SubmitOutcome outcome = with_candidate.submit("quote-candidate", candidate, policy);
    if (!outcome.accepted) {
        throw InvalidInput("floor_price: candidate is not schedulable (" + outcome.reason + ")");
    }

    FloorQuote q;
    q.er_reject = expected_revenue(scenarios, snapshot, policy);
    q.er_accept = expected_revenue(scenarios, with_candidate, policy);
    const Rational gap = q.er_reject - q.er_accept;
    q.floor = gap > Rational(0) ? gap.ceil() : 0;
    q.formula_price = 0;
    for (const Reservation& res : outcome.reservations) q.formula_price += res.price;
    q.quote = std::max(q.floor, q.formula_price);
    return q;
}

}  // namespace dts

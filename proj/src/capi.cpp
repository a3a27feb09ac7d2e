#include "dts.h"

#include <cstdlib>
#include <cstring>

#include "dts/json_io.hpp"
#include "dts/simulation.hpp"

using dts::i64;
using json = dts::io::json;

struct dts_scheduler {
    dts::Scheduler impl;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
dts_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const dts::ParseError& e) {
        g_last_error = e.what();
        return DTS_ERR_PARSE;
    } catch (const dts::InvalidInput& e) {
        g_last_error = e.what();
        return DTS_ERR_INVALID;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return DTS_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DTS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DTS_ERR_INTERNAL;
    }
}

dts_status require_args(const void* a, const void* b) {
    if (a == nullptr || b == nullptr) {
        g_last_error = "null argument";
        return DTS_ERR_INVALID;
    }
    return DTS_OK;
}

dts::FitPolicy parse_policy(const char* policy) {
    return dts::fit_policy_from_string(policy == nullptr ? "first" : policy);
}

}  // namespace

extern "C" {

const char* dts_status_name(dts_status status) {
    switch (status) {
        case DTS_OK: return "ok";
        case DTS_ERR_INVALID: return "invalid input";
        case DTS_ERR_PARSE: return "parse error";
        case DTS_ERR_ORACLE: return "oracle mismatch";
        case DTS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* dts_last_error(void) { return g_last_error.c_str(); }

void dts_string_free(char* s) { std::free(s); }

dts_status dts_batch_solve(const char* instance_json, int check_oracle, int pretty,
                           char** out_json) {
    if (require_args(instance_json, out_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        const auto instance =
            dts::io::batch_instance_from_json(dts::io::parse_text(instance_json, "batch instance"));
        const dts::BatchResult result = dts::min_total_cost(instance.packets, instance.tariff);
        if (check_oracle != 0) {
            if (instance.packets.size() > 1000) {
                g_last_error = "oracle check is limited to 1000 packets";
                return DTS_ERR_INVALID;
            }
            const dts::BatchResult heap = dts::min_total_cost_heap(instance.packets, instance.tariff);
            const auto brute = dts::brute_min_total_cost(instance.packets, instance.tariff);
            const bool agree = result.feasible == heap.feasible &&
                               result.feasible == brute.has_value() &&
                               (!result.feasible ||
                                (result.cost == heap.cost && result.cost == *brute));
            if (!agree) {
                g_last_error = "batch solvers disagree";
                return DTS_ERR_ORACLE;
            }
        }
        *out_json = copy_out(dts::io::dump(dts::io::batch_result_to_json(result), pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_multipath_solve(const char* instance_json, int check_oracle, int pretty,
                               char** out_json) {
    if (require_args(instance_json, out_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        const auto instance = dts::io::multipath_instance_from_json(
            dts::io::parse_text(instance_json, "multipath instance"));
        const dts::AllocationResult result = dts::solve_descending(instance.paths, instance.packets);
        if (check_oracle != 0) {
            if (instance.paths.size() > 15) {
                g_last_error = "oracle check is limited to 15 paths";
                return DTS_ERR_INVALID;
            }
            const dts::AllocationResult asc = dts::solve_ascending(instance.paths, instance.packets);
            const dts::AllocationResult brute =
                dts::brute_allocation(instance.paths, instance.packets);
            const bool agree = result.feasible == asc.feasible && result.feasible == brute.feasible &&
                               (!result.feasible ||
                                (result.cost == asc.cost && result.cost == brute.cost));
            if (!agree) {
                g_last_error = "multipath solvers disagree";
                return DTS_ERR_ORACLE;
            }
        }
        *out_json = copy_out(dts::io::dump(dts::io::allocation_result_to_json(result), pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_caterpillar_analyze(const char* instance_json, int check_oracle, int pretty,
                                   char** out_json) {
    if (require_args(instance_json, out_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        const auto instance = dts::io::caterpillar_instance_from_json(
            dts::io::parse_text(instance_json, "caterpillar instance"));
        dts::check_tree(instance.tree);
        const auto recognition = dts::is_k_level_caterpillar(instance.tree, instance.k);
        const auto kmin = dts::leaf_levels_linear(instance.tree);
        const auto witness = dts::max_weight_caterpillar(instance.tree, instance.k);

        if (check_oracle != 0) {
            if (instance.tree.n > 20) {
                g_last_error = "oracle check is limited to 20 vertices";
                return DTS_ERR_INVALID;
            }
            const auto staged = dts::leaf_levels_staged(instance.tree, std::min(instance.k, instance.tree.n));
            bool agree = dts::is_k_level_caterpillar_brute(instance.tree, instance.k) ==
                         recognition.is_caterpillar;
            for (dts::VertexId v = 1; v <= instance.tree.n && agree; ++v) {
                const bool staged_within = staged[std::size_t(v)] <= instance.k;
                const bool linear_within = kmin[std::size_t(v)] <= instance.k;
                if (staged_within != linear_within) agree = false;
            }
            const auto brute = dts::max_weight_caterpillar_brute(instance.tree, instance.k);
            if (brute.weight != witness.weight) agree = false;
            if (!agree) {
                g_last_error = "caterpillar solvers disagree";
                return DTS_ERR_ORACLE;
            }
        }

        json marks = json::array();
        for (const dts::VertexId v : instance.vertex_order) marks.push_back(kmin[std::size_t(v)]);
        json path = json::array();
        for (const dts::VertexId v : recognition.certificate.central_path) path.push_back(v);
        json witness_edges = json::array();
        for (const auto& [u, v] : witness.edges) witness_edges.push_back(json::array({u, v}));
        const json out{{"is_caterpillar", recognition.is_caterpillar},
                       {"central_path", path},
                       {"level_marks", marks},
                       {"max_weight", witness.weight},
                       {"witness", json{{"path", witness.path},
                                        {"vertices", witness.vertices},
                                        {"edges", witness_edges}}}};
        *out_json = copy_out(dts::io::dump(out, pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_scheduler_create(const char* graph_json, const char* options_json,
                                dts_scheduler** out_scheduler) {
    if (require_args(graph_json, out_scheduler) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        dts::NetworkGraph graph =
            dts::io::graph_from_json(dts::io::parse_text(graph_json, "graph"));
        dts::SchedulerOptions options = dts::io::scheduler_options_from_json(
            options_json == nullptr ? json() : dts::io::parse_text(options_json, "options"));
        *out_scheduler = new dts_scheduler{dts::Scheduler(std::move(graph), std::move(options))};
        return DTS_OK;
    });
}

void dts_scheduler_destroy(dts_scheduler* scheduler) { delete scheduler; }

dts_status dts_scheduler_submit(dts_scheduler* scheduler, const char* request_json,
                                const char* policy, const char* scenarios_json, int pretty,
                                char** out_json) {
    if (require_args(scheduler, out_json) != DTS_OK || require_args(request_json, out_json) != DTS_OK) {
        return DTS_ERR_INVALID;
    }
    return guarded([&]() -> dts_status {
        const json j = dts::io::parse_text(request_json, "request");
        const std::string id =
            j.is_object() && j.contains("id") ? j.at("id").get<std::string>() : "req";
        const dts::TransferRequest request = dts::io::request_from_json(j);
        const dts::FitPolicy fit = parse_policy(policy);

        i64 floor = 0;
        bool have_floor = false;
        if (scenarios_json != nullptr) {
            const auto scenarios =
                dts::io::scenarios_from_json(dts::io::parse_text(scenarios_json, "scenarios"));
            try {
                floor = dts::floor_price(scheduler->impl, request, scenarios, fit).floor;
                have_floor = true;
            } catch (const dts::InvalidInput&) {
                // not schedulable; the submit below reports the reason
            }
        }

        const dts::SubmitOutcome outcome = scheduler->impl.submit(id, request, fit);
        json out = dts::io::outcome_to_json(id, outcome);
        if (outcome.accepted) {
            i64 formula_total = 0;
            for (const auto& res : outcome.reservations) formula_total += res.price;
            const i64 charged = std::max(floor, formula_total);
            out["floor"] = have_floor ? floor : 0;
            out["price"] = charged;
            if (outcome.reservations.size() == 1 && charged != formula_total) {
                scheduler->impl.set_reservation_price(outcome.reservations[0].reservation_id,
                                                      charged);
                out["reservations"][0]["price"] = charged;
            }
        }
        *out_json = copy_out(dts::io::dump(out, pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_scheduler_release(dts_scheduler* scheduler, const char* request_id, int64_t t_end,
                                 int pretty, char** out_json) {
    if (require_args(scheduler, out_json) != DTS_OK || require_args(request_id, out_json) != DTS_OK) {
        return DTS_ERR_INVALID;
    }
    return guarded([&]() -> dts_status {
        i64 reservation_id = -1;
        for (const auto& res : scheduler->impl.reservations()) {
            if (res.request_id == request_id && res.releasable && !res.released) {
                reservation_id = res.reservation_id;
                break;
            }
        }
        if (reservation_id < 0) {
            throw dts::InvalidInput(std::string("no releasable reservation for request '") +
                                    request_id + "'");
        }
        const dts::Reservation res = scheduler->impl.release(reservation_id, t_end);
        json out = dts::io::reservation_to_json(res);
        out["released_at"] = t_end;
        *out_json = copy_out(dts::io::dump(out, pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_scheduler_export_state(dts_scheduler* scheduler, int pretty, char** out_json) {
    if (require_args(scheduler, out_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        *out_json =
            copy_out(dts::io::dump(dts::io::timelines_to_json(scheduler->impl), pretty != 0));
        return DTS_OK;
    });
}

dts_status dts_scheduler_import_state(dts_scheduler* scheduler, const char* state_json) {
    if (require_args(scheduler, state_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        dts::io::timelines_from_json(scheduler->impl, dts::io::parse_text(state_json, "state"));
        return DTS_OK;
    });
}

dts_status dts_simulate(const char* graph_json, const char* state_json, const char* history_jsonl,
                        const char* scenarios_json, const char* candidate_json,
                        const char* options_json, int pretty, char** out_json) {
    if (require_args(graph_json, out_json) != DTS_OK) return DTS_ERR_INVALID;
    return guarded([&]() -> dts_status {
        if ((history_jsonl == nullptr) == (scenarios_json == nullptr)) {
            throw dts::InvalidInput("exactly one of history or scenarios must be given");
        }
        const json opts =
            options_json == nullptr ? json::object() : dts::io::parse_text(options_json, "options");

        dts::NetworkGraph graph = dts::io::graph_from_json(dts::io::parse_text(graph_json, "graph"));
        dts::SchedulerOptions sched_options = dts::io::scheduler_options_from_json(opts);
        dts::Scheduler scheduler(std::move(graph), std::move(sched_options));
        if (state_json != nullptr) {
            dts::io::timelines_from_json(scheduler, dts::io::parse_text(state_json, "state"));
        }

        const dts::FitPolicy fit = parse_policy(
            opts.is_object() && opts.contains("policy")
                ? opts.at("policy").get<std::string>().c_str()
                : nullptr);

        std::vector<dts::ForecastScenario> scenarios;
        if (scenarios_json != nullptr) {
            scenarios = dts::io::scenarios_from_json(dts::io::parse_text(scenarios_json, "scenarios"));
        } else {
            const auto history = dts::io::history_from_jsonl(history_jsonl);
            const i64 start = opts.is_object() && opts.contains("start")
                                  ? opts.at("start").get<i64>()
                                  : 0;
            const i64 horizon = opts.is_object() && opts.contains("sim_horizon")
                                    ? opts.at("sim_horizon").get<i64>()
                                    : 86400;
            const i64 count = opts.is_object() && opts.contains("scenarios")
                                  ? opts.at("scenarios").get<i64>()
                                  : 1;
            const std::uint64_t seed = opts.is_object() && opts.contains("seed")
                                           ? opts.at("seed").get<std::uint64_t>()
                                           : 0;
            scenarios = dts::baseline_forecaster(history, start, start + horizon, count, seed);
        }

        dts::validate_scenarios(scenarios);
        json per_scenario = json::array();
        dts::Rational expected(0);
        for (const auto& sc : scenarios) {
            const i64 revenue = dts::simulate_revenue(scheduler, sc.fakes, fit);
            expected = expected + sc.prob * dts::Rational(revenue);
            per_scenario.push_back(json{{"prob", dts::io::rational_to_json(sc.prob)},
                                        {"revenue", revenue},
                                        {"fakes", sc.fakes.size()}});
        }

        json out{{"scenarios", per_scenario},
                 {"expected_revenue", dts::io::rational_to_json(expected)},
                 {"expected_revenue_rounded", expected.round_half_up()}};

        if (candidate_json != nullptr) {
            const dts::TransferRequest candidate =
                dts::io::request_from_json(dts::io::parse_text(candidate_json, "candidate"));
            const dts::FloorQuote quote = dts::floor_price(scheduler, candidate, scenarios, fit);
            out["candidate"] = json{{"floor", quote.floor},
                                    {"formula_price", quote.formula_price},
                                    {"quote", quote.quote},
                                    {"er_reject", dts::io::rational_to_json(quote.er_reject)},
                                    {"er_accept", dts::io::rational_to_json(quote.er_accept)}};
        }
        *out_json = copy_out(dts::io::dump(out, pretty != 0));
        return DTS_OK;
    });
}

}  // extern "C"

#include "dts/json_io.hpp"

#include <sstream>

namespace dts::io {

namespace {

const json& require(const json& j, const std::string& key, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field '" + key + "'");
    return *it;
}

i64 get_i64(const json& j, const std::string& key, const std::string& what) {
    const json& v = require(j, key, what);
    if (!v.is_number_integer()) throw ParseError(what + ": field '" + key + "' must be an integer");
    return v.get<i64>();
}

i64 get_i64_or(const json& j, const std::string& key, i64 fallback, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_i64(j, key, what);
}

std::string get_string(const json& j, const std::string& key, const std::string& what) {
    const json& v = require(j, key, what);
    if (!v.is_string()) throw ParseError(what + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

bool get_bool_or(const json& j, const std::string& key, bool fallback, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ParseError(what + ": field '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::vector<i64> get_i64_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array of integers");
    std::vector<i64> out;
    out.reserve(j.size());
    for (const json& v : j) {
        if (!v.is_number_integer()) throw ParseError(what + ": expected integers");
        out.push_back(v.get<i64>());
    }
    return out;
}

}  // namespace

json parse_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what + ": invalid JSON");
    return j;
}

std::string dump(const json& j, bool pretty) { return j.dump(pretty ? 2 : -1) + "\n"; }

Rational rational_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<i64>());
    if (j.is_number_float()) return Rational::from_decimal(j.get<double>());
    if (j.is_object()) {
        return Rational(get_i64(j, "num", what), get_i64(j, "den", what));
    }
    throw ParseError(what + ": expected a number or {num, den}");
}

json rational_to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

NetworkGraph graph_from_json(const json& j) {
    const i64 n = get_i64(j, "vertices", "graph");
    const json& links = require(j, "links", "graph");
    if (!links.is_array()) throw ParseError("graph: 'links' must be an array");
    std::vector<DirectedLink> parsed;
    parsed.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string what = "graph.links[" + std::to_string(i) + "]";
        const json& l = links[i];
        parsed.push_back({get_i64(l, "from", what), get_i64(l, "to", what),
                          get_i64(l, "bandwidth", what), get_i64(l, "latency", what)});
    }
    return NetworkGraph(n, std::move(parsed));
}

namespace {

FixedDurRequest fixed_dur_from_json(const json& j, const std::string& kind,
                                    const std::string& what) {
    if (kind == "fixed_bw_fixed_dur") {
        FixedBwFixedDurRequest r;
        r.t1 = get_i64(j, "t1", what);
        r.t2 = get_i64(j, "t2", what);
        r.bandwidth = get_i64(j, "B", what);
        r.duration = get_i64(j, "D", what);
        r.lmax = get_i64_or(j, "lmax", kInf, what);
        r.s = get_i64(j, "s", what);
        r.f = get_i64(j, "f", what);
        return r;
    }
    FixedDataFixedDurRequest r;
    r.t1 = get_i64(j, "t1", what);
    r.t2 = get_i64(j, "t2", what);
    r.total_data = get_i64(j, "TD", what);
    if (j.contains("dataid")) r.dataid = get_string(j, "dataid", what);
    r.s = get_i64(j, "s", what);
    r.f = get_i64(j, "f", what);
    r.ordered = get_bool_or(j, "o", false, what);
    return r;
}

}  // namespace

TransferRequest request_from_json(const json& j) {
    const std::string kind = get_string(j, "kind", "request");
    const std::string what = "request(" + kind + ")";
    if (kind == "fixed_bw_fixed_dur") {
        return std::get<FixedBwFixedDurRequest>(fixed_dur_from_json(j, kind, what));
    }
    if (kind == "fixed_data_fixed_dur") {
        return std::get<FixedDataFixedDurRequest>(fixed_dur_from_json(j, kind, what));
    }
    if (kind == "fixed_bw_var_dur") {
        FixedBwVarDurRequest r;
        r.t1 = get_i64(j, "t1", what);
        r.bandwidth = get_i64(j, "B", what);
        r.lmax = get_i64_or(j, "lmax", kInf, what);
        r.s = get_i64(j, "s", what);
        r.f = get_i64(j, "f", what);
        return r;
    }
    if (kind == "group") {
        RequestGroup group;
        const json& members = require(j, "requests", what);
        if (!members.is_array() || members.empty()) {
            throw ParseError(what + ": 'requests' must be a nonempty array");
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            const std::string mwhat = what + ".requests[" + std::to_string(i) + "]";
            const std::string mkind = get_string(members[i], "kind", mwhat);
            if (mkind != "fixed_bw_fixed_dur" && mkind != "fixed_data_fixed_dur") {
                throw ParseError(mwhat + ": groups may contain only fixed-duration requests");
            }
            group.requests.push_back(fixed_dur_from_json(members[i], mkind, mwhat));
        }
        if (j.contains("precedence")) {
            const json& edges = j.at("precedence");
            if (!edges.is_array()) throw ParseError(what + ": 'precedence' must be an array");
            for (const json& e : edges) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                    !e[1].is_number_integer()) {
                    throw ParseError(what + ": precedence entries must be [from, to] index pairs");
                }
                group.precedence.emplace_back(e[0].get<i64>(), e[1].get<i64>());
            }
        }
        return group;
    }
    throw ParseError("request: unknown kind '" + kind + "'");
}

std::vector<RequestEntry> request_list_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("requests: expected a top-level array");
    std::vector<RequestEntry> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& r = j[i];
        RequestEntry entry;
        entry.id = r.is_object() && r.contains("id") ? get_string(r, "id", "request")
                                                     : "req-" + std::to_string(i + 1);
        if (r.is_object() && r.contains("kind") && r.at("kind") == "release") {
            entry.release_of = get_string(r, "of", "release");
            entry.release_t_end = get_i64(r, "t_end", "release");
        } else {
            entry.request = request_from_json(r);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

json request_to_json(const TransferRequest& request) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, FixedBwFixedDurRequest>) {
                json j{{"kind", "fixed_bw_fixed_dur"}, {"t1", r.t1}, {"t2", r.t2},
                       {"B", r.bandwidth},             {"D", r.duration},
                       {"s", r.s},                     {"f", r.f}};
                if (r.lmax != kInf) j["lmax"] = r.lmax;
                return j;
            } else if constexpr (std::is_same_v<T, FixedDataFixedDurRequest>) {
                return json{{"kind", "fixed_data_fixed_dur"},
                            {"t1", r.t1},
                            {"t2", r.t2},
                            {"TD", r.total_data},
                            {"dataid", r.dataid},
                            {"s", r.s},
                            {"f", r.f},
                            {"o", r.ordered}};
            } else if constexpr (std::is_same_v<T, FixedBwVarDurRequest>) {
                json j{{"kind", "fixed_bw_var_dur"}, {"t1", r.t1}, {"B", r.bandwidth},
                       {"s", r.s},                   {"f", r.f}};
                if (r.lmax != kInf) j["lmax"] = r.lmax;
                return j;
            } else {
                json members = json::array();
                for (const FixedDurRequest& m : r.requests) {
                    members.push_back(std::visit(
                        [](const auto& fixed) { return request_to_json(TransferRequest(fixed)); },
                        m));
                }
                json precedence = json::array();
                for (auto [u, v] : r.precedence) precedence.push_back(json::array({u, v}));
                return json{{"kind", "group"}, {"requests", members}, {"precedence", precedence}};
            }
        },
        request);
}

PricingParams pricing_from_json(const json& j) {
    PricingParams params;
    if (j.is_null()) return params;
    if (!j.is_object()) throw ParseError("pricing: expected an object");
    if (j.contains("alpha")) params.alpha = rational_from_json(j.at("alpha"), "pricing.alpha");
    if (j.contains("beta")) params.beta = rational_from_json(j.at("beta"), "pricing.beta");
    if (j.contains("gamma")) params.gamma = rational_from_json(j.at("gamma"), "pricing.gamma");
    params.fixed_cost = get_i64_or(j, "cf", params.fixed_cost, "pricing");
    params.variable_rate = get_i64_or(j, "cv", params.variable_rate, "pricing");
    params.included_duration = get_i64_or(j, "d_included", params.included_duration, "pricing");
    if (params.alpha < Rational(0) || params.beta < Rational(0) || params.gamma < Rational(1)) {
        throw ParseError("pricing: alpha, beta must be >= 0 and gamma >= 1");
    }
    if (params.fixed_cost < 0 || params.variable_rate < 0 || params.included_duration < 0) {
        throw ParseError("pricing: cf, cv, d_included must be >= 0");
    }
    if (j.contains("time_multipliers")) {
        const json& table = j.at("time_multipliers");
        if (!table.is_array()) throw ParseError("pricing: 'time_multipliers' must be an array");
        for (const json& m : table) {
            TimeMultiplier tm;
            tm.from = get_i64(m, "from", "time multiplier");
            tm.to = get_i64(m, "to", "time multiplier");
            tm.factor = rational_from_json(require(m, "factor", "time multiplier"),
                                           "time multiplier factor");
            params.time_multipliers.push_back(tm);
        }
    }
    return params;
}

SchedulerOptions scheduler_options_from_json(const json& j) {
    SchedulerOptions options;
    if (j.is_null()) return options;
    if (!j.is_object()) throw ParseError("options: expected an object");
    const i64 limit = get_i64_or(j, "path_limit", i64(options.path_limit), "options");
    if (limit < 1) throw ParseError("options: path_limit must be >= 1");
    options.path_limit = std::size_t(limit);
    options.var_dur_horizon = get_i64_or(j, "var_dur_horizon", options.var_dur_horizon, "options");
    if (options.var_dur_horizon < 1) throw ParseError("options: var_dur_horizon must be >= 1");
    if (j.contains("pricing")) options.pricing = pricing_from_json(j.at("pricing"));
    return options;
}

BatchInstance batch_instance_from_json(const json& j) {
    BatchInstance instance;
    instance.packets = get_i64_array(require(j, "packets", "batch"), "batch.packets");
    const json& tariff = require(j, "tariff", "batch");
    instance.tariff.size_limit = get_i64_array(require(tariff, "L", "batch.tariff"), "tariff.L");
    instance.tariff.cost = get_i64_array(require(tariff, "C", "batch.tariff"), "tariff.C");
    instance.tariff.validate();
    return instance;
}

json batch_result_to_json(const BatchResult& result) {
    if (!result.feasible) return json{{"feasible", false}};
    json batches = json::array();
    for (auto [first, last] : result.batches) batches.push_back(json::array({first, last}));
    return json{{"feasible", true}, {"cost", result.cost}, {"batches", batches}};
}

MultipathInstance multipath_instance_from_json(const json& j) {
    MultipathInstance instance;
    instance.packets = get_i64(j, "n_packets", "multipath");
    if (instance.packets < 0) throw ParseError("multipath: n_packets must be >= 0");
    const json& paths = require(j, "paths", "multipath");
    if (!paths.is_array()) throw ParseError("multipath: 'paths' must be an array");
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const std::string what = "multipath.paths[" + std::to_string(i) + "]";
        instance.paths.push_back({get_i64(paths[i], "cf", what), get_i64(paths[i], "cv", what),
                                  get_i64(paths[i], "pmax", what)});
        instance.paths.back().validate();
    }
    return instance;
}

json allocation_result_to_json(const AllocationResult& result) {
    if (!result.feasible) return json{{"feasible", false}};
    return json{{"feasible", true}, {"cost", result.cost}, {"allocation", result.allocation}};
}

CaterpillarInstance caterpillar_instance_from_json(const json& j) {
    CaterpillarInstance instance;
    const json& vertices = require(j, "vertices", "caterpillar");
    if (!vertices.is_array() || vertices.empty()) {
        throw ParseError("caterpillar: 'vertices' must be a nonempty array");
    }
    instance.tree.n = i64(vertices.size());
    instance.tree.vertex_weight.assign(vertices.size() + 1, 0);
    for (const json& v : vertices) {
        const i64 id = get_i64(v, "id", "caterpillar.vertices");
        if (id < 1 || id > instance.tree.n) {
            throw ParseError("caterpillar: vertex ids must be 1.." + std::to_string(instance.tree.n));
        }
        instance.tree.vertex_weight[std::size_t(id)] = get_i64_or(v, "wv", 0, "caterpillar.vertices");
        instance.vertex_order.push_back(id);
    }
    const json& edges = require(j, "edges", "caterpillar");
    if (!edges.is_array()) throw ParseError("caterpillar: 'edges' must be an array");
    for (const json& e : edges) {
        instance.tree.edges.push_back({get_i64(e, "u", "caterpillar.edges"),
                                       get_i64(e, "v", "caterpillar.edges"),
                                       get_i64_or(e, "we", 0, "caterpillar.edges")});
    }
    instance.k = get_i64_or(j, "k", 1, "caterpillar");
    if (instance.k < 0) throw ParseError("caterpillar: k must be >= 0");
    return instance;
}

json reservation_to_json(const Reservation& res) {
    json path = json::array();
    for (const VertexId v : res.path.vertices) path.push_back(v);
    json j{{"reservation_id", res.reservation_id},
           {"request_id", res.request_id},
           {"kind", res.kind},
           {"path", path},
           {"window", json::array({res.ts, res.te})},
           {"bandwidth", res.bandwidth},
           {"bottleneck", res.bottleneck},
           {"price", res.price}};
    if (res.releasable) j["released"] = res.released;
    return j;
}

json outcome_to_json(const std::string& request_id, const SubmitOutcome& outcome) {
    json j{{"id", request_id}, {"accepted", outcome.accepted}};
    if (outcome.accepted) {
        json reservations = json::array();
        for (const Reservation& res : outcome.reservations) {
            reservations.push_back(reservation_to_json(res));
        }
        j["reservations"] = reservations;
    } else {
        j["reason"] = outcome.reason;
    }
    return j;
}

json timelines_to_json(const Scheduler& scheduler) {
    json timelines = json::array();
    for (const auto& [key, tl] : scheduler.timelines()) {
        json events = json::array();
        for (const BandwidthEvent& e : tl.events()) events.push_back(json::array({e.t, e.delta}));
        timelines.push_back(json{{"from", key.first},
                                 {"to", key.second},
                                 {"capacity", tl.capacity()},
                                 {"events", events}});
    }
    return json{{"timelines", timelines}};
}

void timelines_from_json(Scheduler& scheduler, const json& j) {
    const json& timelines = require(j, "timelines", "state");
    if (!timelines.is_array()) throw ParseError("state: 'timelines' must be an array");
    for (const json& tl : timelines) {
        const i64 from = get_i64(tl, "from", "state.timeline");
        const i64 to = get_i64(tl, "to", "state.timeline");
        const json& events = require(tl, "events", "state.timeline");
        if (!events.is_array()) throw ParseError("state: 'events' must be an array");
        std::vector<BandwidthEvent> parsed;
        for (const json& e : events) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw ParseError("state: events must be [t, delta] integer pairs");
            }
            parsed.push_back({e[0].get<i64>(), e[1].get<i64>()});
        }
        try {
            scheduler.replace_timeline_events(from, to, std::move(parsed));
        } catch (const ConsistencyError& err) {
            throw ParseError(std::string("state: ") + err.what());
        }
    }
}

std::vector<ForecastScenario> scenarios_from_json(const json& j) {
    const json& scenarios = require(j, "scenarios", "scenario set");
    if (!scenarios.is_array() || scenarios.empty()) {
        throw ParseError("scenario set: 'scenarios' must be a nonempty array");
    }
    std::vector<ForecastScenario> out;
    for (const json& s : scenarios) {
        ForecastScenario scenario;
        scenario.prob = rational_from_json(require(s, "prob", "scenario"), "scenario.prob");
        if (s.contains("fakes")) {
            const json& fakes = s.at("fakes");
            if (!fakes.is_array()) throw ParseError("scenario: 'fakes' must be an array");
            for (const json& f : fakes) {
                FakeRequest fake;
                fake.arrival = get_i64(f, "arrival", "fake");
                fake.request = request_from_json(require(f, "request", "fake"));
                if (f.contains("estimated_duration")) {
                    fake.estimated_duration = get_i64(f, "estimated_duration", "fake");
                }
                scenario.fakes.push_back(std::move(fake));
            }
        }
        std::stable_sort(scenario.fakes.begin(), scenario.fakes.end(),
                         [](const FakeRequest& a, const FakeRequest& b) { return a.arrival < b.arrival; });
        out.push_back(std::move(scenario));
    }
    validate_scenarios(out);
    return out;
}

std::vector<HistoryRecord> history_from_jsonl(const std::string& text) {
    std::vector<HistoryRecord> out;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw ParseError("history line " + std::to_string(lineno) + ": invalid JSON");
        }
        HistoryRecord rec;
        rec.arrival = get_i64(j, "arrival", "history record");
        rec.accepted = get_bool_or(j, "accepted", false, "history record");
        rec.request = request_from_json(require(j, "request", "history record"));
        if (j.contains("actual_duration")) {
            rec.actual_duration = get_i64(j, "actual_duration", "history record");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace dts::io

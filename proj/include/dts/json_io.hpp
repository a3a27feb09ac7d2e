#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dts/batching.hpp"
#include "dts/caterpillar.hpp"
#include "dts/multipath.hpp"
#include "dts/pricing.hpp"
#include "dts/scheduler.hpp"

// External JSON schemas. Parsing throws ParseError with the offending field;
// serialization is deterministic (objects dump with sorted keys).

namespace dts::io {

using json = nlohmann::json;

json parse_text(const std::string& text, const std::string& what);
std::string dump(const json& j, bool pretty);

// Accepts an integer, a decimal (quantized to 1e-9), or {"num", "den"}.
Rational rational_from_json(const json& j, const std::string& what);
json rational_to_json(const Rational& r);

NetworkGraph graph_from_json(const json& j);

// A schedule input entry: either a transfer request or a release directive
// {"kind": "release", "of": <request id>, "t_end": tick}.
struct RequestEntry {
    std::string id;
    std::optional<TransferRequest> request;
    std::string release_of;
    i64 release_t_end = 0;
};

TransferRequest request_from_json(const json& j);
std::vector<RequestEntry> request_list_from_json(const json& j);
json request_to_json(const TransferRequest& request);

PricingParams pricing_from_json(const json& j);
SchedulerOptions scheduler_options_from_json(const json& j);

struct BatchInstance {
    std::vector<i64> packets;
    TariffTable tariff;
};
BatchInstance batch_instance_from_json(const json& j);
json batch_result_to_json(const BatchResult& result);

struct MultipathInstance {
    i64 packets = 0;
    std::vector<PathTariff> paths;
};
MultipathInstance multipath_instance_from_json(const json& j);
json allocation_result_to_json(const AllocationResult& result);

struct CaterpillarInstance {
    WeightedTree tree;
    i64 k = 1;
    std::vector<VertexId> vertex_order;  // input order, for level_marks output
};
CaterpillarInstance caterpillar_instance_from_json(const json& j);

json reservation_to_json(const Reservation& res);
json outcome_to_json(const std::string& request_id, const SubmitOutcome& outcome);

json timelines_to_json(const Scheduler& scheduler);
void timelines_from_json(Scheduler& scheduler, const json& j);

std::vector<ForecastScenario> scenarios_from_json(const json& j);
std::vector<HistoryRecord> history_from_jsonl(const std::string& text);

}  // namespace dts::io

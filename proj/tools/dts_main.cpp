// Command-line frontend for the dts toolkit. All solver work happens behind
// the C API in libdts; this binary only shuttles JSON documents around.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dts.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitOracle = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int status_to_exit(dts_status status) {
    switch (status) {
        case DTS_OK: return kExitOk;
        case DTS_ERR_ORACLE: return kExitOracle;
        case DTS_ERR_INTERNAL: return kExitInternal;
        default: return kExitInput;
    }
}

int fail(dts_status status) {
    std::cerr << "error: " << dts_status_name(status) << ": " << dts_last_error() << "\n";
    return status_to_exit(status);
}

void emit(const std::string& text, const std::optional<std::string>& out_path) {
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write file: " + *out_path);
        out << text;
    } else {
        std::cout << text;
    }
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { dts_string_free(ptr); }
    std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

// One-shot solver subcommands share the same call shape.
int run_solver(dts_status (*solve)(const char*, int, int, char**), const std::string& input_path,
               bool oracle, bool pretty, const std::optional<std::string>& out_path,
               const std::optional<json>& patch) {
    std::string text = read_file(input_path);
    if (patch) {
        json j = json::parse(text);
        j.update(*patch);
        text = j.dump();
    }
    OwnedString out;
    const dts_status status = solve(text.c_str(), oracle ? 1 : 0, pretty ? 1 : 0, &out.ptr);
    if (status != DTS_OK) return fail(status);
    emit(out.str(), out_path);
    return kExitOk;
}

struct ScheduleArgs {
    std::string graph_path;
    std::string requests_path;
    std::string policy = "first";
    std::optional<std::string> pricing_path;
    std::optional<std::string> forecast_path;
    std::optional<std::string> state_in;
    std::optional<std::string> state_out;
    std::optional<std::string> out_path;
    std::int64_t path_limit = 8;
    std::int64_t horizon = 2592000;
    bool pretty = false;
};

int run_schedule(const ScheduleArgs& args) {
    const std::string graph = read_file(args.graph_path);
    json options{{"path_limit", args.path_limit}, {"var_dur_horizon", args.horizon}};
    if (args.pricing_path) options["pricing"] = json::parse(read_file(*args.pricing_path));
    const std::string options_text = options.dump();

    std::optional<std::string> scenarios_text;
    if (args.forecast_path) scenarios_text = read_file(*args.forecast_path);

    dts_scheduler* scheduler = nullptr;
    dts_status status = dts_scheduler_create(graph.c_str(), options_text.c_str(), &scheduler);
    if (status != DTS_OK) return fail(status);
    struct Guard {
        dts_scheduler* s;
        ~Guard() { dts_scheduler_destroy(s); }
    } guard{scheduler};

    if (args.state_in) {
        status = dts_scheduler_import_state(scheduler, read_file(*args.state_in).c_str());
        if (status != DTS_OK) return fail(status);
    }

    const json requests = json::parse(read_file(args.requests_path), nullptr, false);
    if (requests.is_discarded() || !requests.is_array()) {
        std::cerr << "error: requests file must hold a JSON array\n";
        return kExitInput;
    }

    json results = json::array();
    std::size_t index = 0;
    for (const json& entry : requests) {
        ++index;
        json item = entry;
        if (!item.is_object()) {
            std::cerr << "error: request #" << index << " is not an object\n";
            return kExitInput;
        }
        if (!item.contains("id")) item["id"] = "req-" + std::to_string(index);
        OwnedString out;
        if (item.value("kind", "") == "release") {
            status = dts_scheduler_release(scheduler, item.at("of").get<std::string>().c_str(),
                                           item.at("t_end").get<std::int64_t>(), 0, &out.ptr);
        } else {
            status = dts_scheduler_submit(scheduler, item.dump().c_str(), args.policy.c_str(),
                                          scenarios_text ? scenarios_text->c_str() : nullptr, 0,
                                          &out.ptr);
        }
        if (status != DTS_OK) return fail(status);
        results.push_back(json::parse(out.str()));
    }

    OwnedString state;
    status = dts_scheduler_export_state(scheduler, 0, &state.ptr);
    if (status != DTS_OK) return fail(status);

    if (args.state_out) emit(state.str(), args.state_out);
    const json report{{"results", results}, {"timelines", json::parse(state.str()).at("timelines")}};
    emit(report.dump(args.pretty ? 2 : -1) + "\n", args.out_path);
    return kExitOk;
}

struct SimulateArgs {
    std::string graph_path;
    std::optional<std::string> history_path;
    std::optional<std::string> scenarios_path;
    std::optional<std::string> candidate_path;
    std::optional<std::string> state_path;
    std::optional<std::string> out_path;
    std::string policy = "first";
    std::optional<std::string> pricing_path;
    std::int64_t scenario_count = 1;
    std::int64_t seed = 0;
    std::int64_t start = 0;
    std::int64_t horizon = 86400;
    std::int64_t path_limit = 8;
    bool pretty = false;
};

int run_simulate(const SimulateArgs& args) {
    if (args.history_path.has_value() == args.scenarios_path.has_value()) {
        std::cerr << "error: give exactly one of --history or --forecast\n";
        return kExitInput;
    }
    const std::string graph = read_file(args.graph_path);
    json options{{"policy", args.policy}, {"scenarios", args.scenario_count},
                 {"seed", args.seed},     {"start", args.start},
                 {"sim_horizon", args.horizon}, {"path_limit", args.path_limit}};
    if (args.pricing_path) options["pricing"] = json::parse(read_file(*args.pricing_path));
    const std::string options_text = options.dump();

    std::optional<std::string> history, scenarios, candidate, state;
    if (args.history_path) history = read_file(*args.history_path);
    if (args.scenarios_path) scenarios = read_file(*args.scenarios_path);
    if (args.candidate_path) candidate = read_file(*args.candidate_path);
    if (args.state_path) state = read_file(*args.state_path);

    OwnedString out;
    const dts_status status = dts_simulate(
        graph.c_str(), state ? state->c_str() : nullptr, history ? history->c_str() : nullptr,
        scenarios ? scenarios->c_str() : nullptr, candidate ? candidate->c_str() : nullptr,
        options_text.c_str(), args.pretty ? 1 : 0, &out.ptr);
    if (status != DTS_OK) return fail(status);
    emit(out.str(), args.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dts — advance bandwidth reservation and transfer-cost toolkit"};
    app.require_subcommand(1);

    ScheduleArgs sched;
    auto* cmd_schedule = app.add_subcommand("schedule", "Schedule transfer requests on a network");
    cmd_schedule->add_option("graph", sched.graph_path, "network graph JSON")->required();
    cmd_schedule->add_option("requests", sched.requests_path, "request list JSON")->required();
    cmd_schedule->add_option("--policy", sched.policy, "fit policy: first|last|best|worst");
    cmd_schedule->add_option("--pricing", sched.pricing_path, "pricing parameters JSON");
    cmd_schedule->add_option("--forecast", sched.forecast_path,
                             "scenario set JSON for floor pricing");
    cmd_schedule->add_option("--state-in", sched.state_in, "import timeline state");
    cmd_schedule->add_option("--state-out", sched.state_out, "export timeline state");
    cmd_schedule->add_option("--out", sched.out_path, "write the report here instead of stdout");
    cmd_schedule->add_option("--path-limit", sched.path_limit, "candidate paths per request");
    cmd_schedule->add_option("--horizon", sched.horizon,
                             "variable-duration hold length in ticks");
    cmd_schedule->add_flag("--pretty", sched.pretty, "indent output");

    struct SolverArgs {
        std::string input;
        bool oracle = false;
        bool pretty = false;
        std::optional<std::string> out_path;
    };
    SolverArgs batch, multipath, caterpillar;
    std::int64_t caterpillar_k = -1;

    auto* cmd_batch = app.add_subcommand("batch", "Minimum-cost in-order packet batching");
    cmd_batch->add_option("instance", batch.input, "instance JSON")->required();
    cmd_batch->add_flag("--oracle", batch.oracle, "cross-check against reference solvers");
    cmd_batch->add_flag("--pretty", batch.pretty, "indent output");
    cmd_batch->add_option("--out", batch.out_path, "write result here instead of stdout");

    auto* cmd_multipath = app.add_subcommand("multipath", "Minimum-cost multipath packet allocation");
    cmd_multipath->add_option("instance", multipath.input, "instance JSON")->required();
    cmd_multipath->add_flag("--oracle", multipath.oracle, "cross-check against reference solvers");
    cmd_multipath->add_flag("--pretty", multipath.pretty, "indent output");
    cmd_multipath->add_option("--out", multipath.out_path, "write result here instead of stdout");

    auto* cmd_caterpillar =
        app.add_subcommand("caterpillar", "k-level-caterpillar analysis of a weighted tree");
    cmd_caterpillar->add_option("instance", caterpillar.input, "instance JSON")->required();
    cmd_caterpillar->add_option("--k", caterpillar_k, "override the level bound k");
    cmd_caterpillar->add_flag("--oracle", caterpillar.oracle, "cross-check against reference solvers");
    cmd_caterpillar->add_flag("--pretty", caterpillar.pretty, "indent output");
    cmd_caterpillar->add_option("--out", caterpillar.out_path, "write result here instead of stdout");

    SimulateArgs sim;
    auto* cmd_simulate = app.add_subcommand("simulate", "Forecast-driven revenue simulation");
    cmd_simulate->add_option("graph", sim.graph_path, "network graph JSON")->required();
    cmd_simulate->add_option("--history", sim.history_path, "request history (JSON lines)");
    cmd_simulate->add_option("--forecast", sim.scenarios_path, "explicit scenario set JSON");
    cmd_simulate->add_option("--candidate", sim.candidate_path, "candidate request to quote");
    cmd_simulate->add_option("--state", sim.state_path, "timeline state JSON");
    cmd_simulate->add_option("--policy", sim.policy, "fit policy: first|last|best|worst");
    cmd_simulate->add_option("--pricing", sim.pricing_path, "pricing parameters JSON");
    cmd_simulate->add_option("--scenarios", sim.scenario_count, "scenario count K");
    cmd_simulate->add_option("--seed", sim.seed, "forecast RNG seed");
    cmd_simulate->add_option("--start", sim.start, "forecast window start tick");
    cmd_simulate->add_option("--horizon", sim.horizon, "forecast window length T in ticks");
    cmd_simulate->add_option("--path-limit", sim.path_limit, "candidate paths per request");
    cmd_simulate->add_option("--out", sim.out_path, "write report here instead of stdout");
    cmd_simulate->add_flag("--pretty", sim.pretty, "indent output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_schedule->parsed()) return run_schedule(sched);
        if (cmd_batch->parsed()) {
            return run_solver(dts_batch_solve, batch.input, batch.oracle, batch.pretty,
                              batch.out_path, std::nullopt);
        }
        if (cmd_multipath->parsed()) {
            return run_solver(dts_multipath_solve, multipath.input, multipath.oracle,
                              multipath.pretty, multipath.out_path, std::nullopt);
        }
        if (cmd_caterpillar->parsed()) {
            std::optional<json> patch;
            if (caterpillar_k >= 0) patch = json{{"k", caterpillar_k}};
            return run_solver(dts_caterpillar_analyze, caterpillar.input, caterpillar.oracle,
                              caterpillar.pretty, caterpillar.out_path, patch);
        }
        if (cmd_simulate->parsed()) return run_simulate(sim);
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

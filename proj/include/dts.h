/* dts — advance bandwidth reservation and transfer-cost toolkit.
 *
 * C interface to the scheduling, pricing and optimization core. All inputs
 * and outputs are JSON documents (UTF-8, NUL-terminated). Output strings are
 * allocated by the library and must be returned via dts_string_free().
 * Functions report failures through dts_status; dts_last_error() carries a
 * human-readable detail message for the calling thread's last failure.
 */

#ifndef DTS_H
#define DTS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dts_status {
    DTS_OK = 0,
    DTS_ERR_INVALID = 1,  /* input violates a documented invariant */
    DTS_ERR_PARSE = 2,    /* malformed input document */
    DTS_ERR_ORACLE = 3,   /* solver result failed the brute-force cross-check */
    DTS_ERR_INTERNAL = 4
} dts_status;

const char* dts_status_name(dts_status status);
const char* dts_last_error(void);
void dts_string_free(char* s);

/* Tariff-band packet batching.
 * in: {"packets": [sizes...], "tariff": {"L": [...], "C": [...]}}
 * out: {"feasible": bool, "cost": int, "batches": [[first, last], ...]}
 * check_oracle != 0 re-solves with the heap variant and the O(N^2 K)
 * reference and fails with DTS_ERR_ORACLE on any cost disagreement. */
dts_status dts_batch_solve(const char* instance_json, int check_oracle, int pretty,
                           char** out_json);

/* Multipath packet allocation.
 * in: {"n_packets": int, "paths": [{"cf", "cv", "pmax"}, ...]}
 * out: {"feasible": bool, "cost": int, "allocation": [per-path counts]} */
dts_status dts_multipath_solve(const char* instance_json, int check_oracle, int pretty,
                               char** out_json);

/* k-level-caterpillar analysis on a weighted tree.
 * in: {"vertices": [{"id", "wv"}...], "edges": [{"u", "v", "we"}...], "k": int}
 * out: {"is_caterpillar", "central_path", "level_marks", "max_weight",
 *       "witness": {"path", "vertices", "edges"}} */
dts_status dts_caterpillar_analyze(const char* instance_json, int check_oracle, int pretty,
                                   char** out_json);

/* Advance-reservation scheduler. Holds the network graph and the per-link
 * event timelines behind an opaque handle. */
typedef struct dts_scheduler dts_scheduler;

/* graph: {"vertices": n, "links": [{"from","to","bandwidth","latency"}...]}
 * options (nullable): {"path_limit", "var_dur_horizon", "pricing": {...}} */
dts_status dts_scheduler_create(const char* graph_json, const char* options_json,
                                dts_scheduler** out_scheduler);
void dts_scheduler_destroy(dts_scheduler* scheduler);

/* Submits one transfer request (see README for the request schema).
 * policy: "first" | "last" | "best" | "worst".
 * scenarios_json (nullable): a forecast scenario set; when present the
 * response carries a floor price and the request is charged
 * max(floor, formula price).
 * out: {"id", "accepted", "floor", "price", "reservations": [...]} or
 *      {"id", "accepted": false, "reason"} */
dts_status dts_scheduler_submit(dts_scheduler* scheduler, const char* request_json,
                                const char* policy, const char* scenarios_json, int pretty,
                                char** out_json);

/* Ends the variable-duration hold created by request `request_id` at t_end. */
dts_status dts_scheduler_release(dts_scheduler* scheduler, const char* request_id, int64_t t_end,
                                 int pretty, char** out_json);

/* Timeline state, one sorted event list per directed link. */
dts_status dts_scheduler_export_state(dts_scheduler* scheduler, int pretty, char** out_json);
dts_status dts_scheduler_import_state(dts_scheduler* scheduler, const char* state_json);

/* Revenue forecast simulation. Exactly one of history_jsonl (line-delimited
 * request log driving the baseline forecaster) or scenarios_json (explicit
 * scenario set) must be non-NULL. candidate_json (nullable) requests a floor
 * quote for one more request on top of the current state.
 * options: {"start", "sim_horizon", "scenarios", "seed", "policy",
 *           "pricing", "path_limit", "var_dur_horizon"}
 * out: {"scenarios": [{"prob", "revenue", "fakes"}...], "expected_revenue",
 *       "expected_revenue_rounded", "candidate"?} */
dts_status dts_simulate(const char* graph_json, const char* state_json,
                        const char* history_jsonl, const char* scenarios_json,
                        const char* candidate_json, const char* options_json, int pretty,
                        char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* DTS_H */

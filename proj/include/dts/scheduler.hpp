#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "dts/min_deque.hpp"
#include "dts/network.hpp"
#include "dts/pricing.hpp"

namespace dts {

struct BandwidthEvent {
    i64 t = 0;
    i64 delta = 0;  // signed bandwidth change taking effect at t
};

// Per-direction reservation state: a sorted, coalesced list of bandwidth
// deltas. Availability at tick u is capacity + sum of deltas with t <= u and
// must stay within [0, capacity] after every commit.
class LinkTimeline {
  public:
    LinkTimeline() = default;
    LinkTimeline(VertexId from, VertexId to, i64 capacity)
        : from_(from), to_(to), capacity_(capacity) {}

    VertexId from() const { return from_; }
    VertexId to() const { return to_; }
    i64 capacity() const { return capacity_; }
    const std::vector<BandwidthEvent>& events() const { return events_; }

    void insert_delta(i64 t, i64 delta);

    i64 availability_at(i64 tick) const;
    // Minimum availability over the half-open tick range [from, to).
    i64 min_availability(i64 from, i64 to) const;

    // Verifies availability stays in [0, capacity] across all events.
    void check_consistent() const;

    void replace_events(std::vector<BandwidthEvent> events);

  private:
    VertexId from_ = 0;
    VertexId to_ = 0;
    i64 capacity_ = 0;
    std::vector<BandwidthEvent> events_;
};

enum class FitPolicy { FirstFit, LastFit, BestFit, WorstFit };

FitPolicy fit_policy_from_string(const std::string& name);
std::string to_string(FitPolicy policy);

struct FoundWindow {
    i64 ts = 0;
    i64 te = 0;          // te = ts + D
    i64 bottleneck = 0;  // min over links of window-minimum availability
};

namespace detail {

struct NoopSweepObserver {
    void on_check(i64 /*t*/, std::span<const i64> /*per_link_min_avail*/) {}
};

// Event sweep over the merged per-link streams. Every original event (t, dB)
// contributes two zero-delta companions on its link: (t + D, 0) so windows
// starting at t are examined, and (t + 1, 0) so windows that just absorbed
// the delta are examined (Best-Fit needs the earliest start attaining the
// minimum bottleneck). Two boundary markers at t1 + D and t2 cover the ends
// of the request window. At each tick every link's deque receives the
// availability sample before that tick's deltas apply, so the deque front is
// the minimum availability over the half-open window [t - D, t).
template <typename Observer>
std::optional<FoundWindow> find_window_impl(std::span<const LinkTimeline* const> links, i64 bandwidth,
                                            i64 duration, i64 t1, i64 t2, FitPolicy policy,
                                            Observer& observer) {
    if (links.empty()) throw InvalidInput("find_window: empty path");
    if (duration <= 0) throw InvalidInput("find_window: duration must be positive");
    if (t1 + duration > t2) throw InvalidInput("find_window: window shorter than duration");

    const std::size_t nl = links.size();

    struct StreamEvent {
        i64 t;
        i64 delta;
    };
    std::vector<std::vector<StreamEvent>> stream(nl);
    for (std::size_t i = 0; i < nl; ++i) {
        const auto& evs = links[i]->events();
        stream[i].reserve(evs.size() * 3 + (i == 0 ? 2 : 0));
        for (const auto& e : evs) {
            stream[i].push_back({e.t, e.delta});
            stream[i].push_back({e.t + 1, 0});
            stream[i].push_back({e.t + duration, 0});
        }
        if (i == 0) {
            stream[i].push_back({t1 + duration, 0});
            stream[i].push_back({t2, 0});
        }
        std::sort(stream[i].begin(), stream[i].end(),
                  [](const StreamEvent& a, const StreamEvent& b) { return a.t < b.t; });
    }

    // Balanced-tree merge of the per-link streams: the heap holds the next
    // event of each link.
    struct Cursor {
        i64 t;
        std::size_t link;
        std::size_t pos;
        bool operator>(const Cursor& o) const {
            return t != o.t ? t > o.t : link > o.link;
        }
    };
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> merge;
    for (std::size_t i = 0; i < nl; ++i) {
        if (!stream[i].empty()) merge.push({stream[i][0].t, i, 0});
    }

    std::vector<i64> avail(nl);
    for (std::size_t i = 0; i < nl; ++i) avail[i] = links[i]->capacity();
    std::vector<MonotoneMinDeque> window_min(nl);
    std::vector<i64> per_link_ab(nl);

    i64 best_tfin = -1;
    i64 best_bottleneck = policy == FitPolicy::BestFit ? kInf : -1;

    while (!merge.empty()) {
        const i64 t = merge.top().t;
        if (t > t2) break;

        for (std::size_t i = 0; i < nl; ++i) {
            window_min[i].push_back(t, avail[i]);
            window_min[i].expire_front_by_key(t - duration);
        }

        if (t >= t1 + duration) {
            i64 mab = kInf;
            for (std::size_t i = 0; i < nl; ++i) {
                per_link_ab[i] = window_min[i].min_value();
                mab = std::min(mab, per_link_ab[i]);
            }
            observer.on_check(t, per_link_ab);
            if (mab >= bandwidth) {
                switch (policy) {
                    case FitPolicy::FirstFit:
                        return FoundWindow{t - duration, t, mab};
                    case FitPolicy::LastFit:
                        best_tfin = t;
                        best_bottleneck = mab;
                        break;
                    case FitPolicy::BestFit:
                        if (mab < best_bottleneck || best_tfin < 0) {
                            best_tfin = t;
                            best_bottleneck = mab;
                        }
                        break;
                    case FitPolicy::WorstFit:
                        if (mab > best_bottleneck) {
                            best_tfin = t;
                            best_bottleneck = mab;
                        }
                        break;
                }
            }
        }

        while (!merge.empty() && merge.top().t == t) {
            const Cursor cur = merge.top();
            merge.pop();
            avail[cur.link] += stream[cur.link][cur.pos].delta;
            if (cur.pos + 1 < stream[cur.link].size()) {
                merge.push({stream[cur.link][cur.pos + 1].t, cur.link, cur.pos + 1});
            }
        }
    }

    if (best_tfin < 0) return std::nullopt;
    return FoundWindow{best_tfin - duration, best_tfin, best_bottleneck};
}

}  // namespace detail

std::optional<FoundWindow> find_window(std::span<const LinkTimeline* const> links, i64 bandwidth,
                                       i64 duration, i64 t1, i64 t2, FitPolicy policy);

// Inserts the (ts, -B) and (te, +B) events into every path link and verifies
// the capacity invariant. A violation means the match was not produced
// against these timelines and is reported as a ConsistencyError.
void commit_window(std::span<LinkTimeline* const> links, const FoundWindow& window, i64 bandwidth);

struct Reservation {
    i64 reservation_id = 0;
    std::string request_id;
    std::string kind;
    DirectedPath path;
    i64 ts = 0;
    i64 te = 0;
    i64 bandwidth = 0;
    i64 bottleneck = 0;
    i64 price = 0;
    bool releasable = false;  // variable-duration holds can be released early
    bool released = false;
};

struct SubmitOutcome {
    bool accepted = false;
    std::vector<Reservation> reservations;
    std::string reason;
};

struct SchedulerOptions {
    std::size_t path_limit = 8;
    // A variable-duration request holds its path from t1 to t1 + this span
    // until released (default 30 days of one-second ticks).
    i64 var_dur_horizon = 2592000;
    PricingParams pricing;
};

// Owns the per-link timelines. Copy a scheduler to get an isolated snapshot
// for what-if simulation; accepted reservations are never cancelled, though
// variable-duration holds may be released early.
class Scheduler {
  public:
    Scheduler(NetworkGraph graph, SchedulerOptions options);

    SubmitOutcome submit(const std::string& request_id, const TransferRequest& request,
                         FitPolicy policy);

    // Ends a variable-duration hold at t_end, restoring bandwidth from there.
    Reservation release(i64 reservation_id, i64 t_end);

    // Overrides the charged price (used when a floor quote tops the formula).
    void set_reservation_price(i64 reservation_id, i64 price);

    const NetworkGraph& graph() const { return graph_; }
    const SchedulerOptions& options() const { return options_; }
    const std::map<LinkKey, LinkTimeline>& timelines() const { return timelines_; }
    const std::vector<Reservation>& reservations() const { return reservations_; }

    const LinkTimeline& timeline(VertexId from, VertexId to) const;
    void replace_timeline_events(VertexId from, VertexId to, std::vector<BandwidthEvent> events);

  private:
    struct PathMatch {
        DirectedPath path;
        FoundWindow window;
    };

    std::optional<PathMatch> match_on_candidates(VertexId s, VertexId f, i64 lmax, i64 bandwidth,
                                                 i64 duration, i64 t1, i64 t2, FitPolicy policy,
                                                 std::map<LinkKey, LinkTimeline>& timelines) const;
    Rational path_utilization(const PathMatch& match,
                              const std::map<LinkKey, LinkTimeline>& timelines) const;
    void commit_match(const PathMatch& match, i64 bandwidth,
                      std::map<LinkKey, LinkTimeline>& timelines) const;

    SubmitOutcome submit_fixed_bw(const std::string& request_id, const FixedBwFixedDurRequest& req,
                                  FitPolicy policy, std::map<LinkKey, LinkTimeline>& timelines,
                                  i64 reservation_id) const;
    SubmitOutcome submit_fixed_data(const std::string& request_id,
                                    const FixedDataFixedDurRequest& req, FitPolicy policy,
                                    std::map<LinkKey, LinkTimeline>& timelines,
                                    i64 reservation_id) const;
    SubmitOutcome submit_var_dur(const std::string& request_id, const FixedBwVarDurRequest& req,
                                 FitPolicy policy, std::map<LinkKey, LinkTimeline>& timelines,
                                 i64 reservation_id) const;
    SubmitOutcome submit_group(const std::string& request_id, const RequestGroup& group,
                               FitPolicy policy);

    NetworkGraph graph_;
    SchedulerOptions options_;
    std::map<LinkKey, LinkTimeline> timelines_;
    std::vector<Reservation> reservations_;
    i64 next_reservation_id_ = 1;
};

}  // namespace dts

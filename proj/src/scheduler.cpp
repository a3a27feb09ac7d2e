#include "dts/scheduler.hpp"

namespace dts {

void LinkTimeline::insert_delta(i64 t, i64 delta) {
    if (delta == 0) return;
    auto it = std::lower_bound(events_.begin(), events_.end(), t,
                               [](const BandwidthEvent& e, i64 tick) { return e.t < tick; });
    if (it != events_.end() && it->t == t) {
        it->delta += delta;
        if (it->delta == 0) events_.erase(it);
        return;
    }
    events_.insert(it, BandwidthEvent{t, delta});
}

i64 LinkTimeline::availability_at(i64 tick) const {
    i64 avail = capacity_;
    for (const auto& e : events_) {
        if (e.t > tick) break;
        avail += e.delta;
    }
    return avail;
}

i64 LinkTimeline::min_availability(i64 from, i64 to) const {
    i64 avail = capacity_;
    std::size_t i = 0;
    for (; i < events_.size() && events_[i].t <= from; ++i) avail += events_[i].delta;
    i64 min_avail = avail;
    for (; i < events_.size() && events_[i].t < to; ++i) {
        avail += events_[i].delta;
        min_avail = std::min(min_avail, avail);
    }
    return min_avail;
}

void LinkTimeline::check_consistent() const {
    i64 avail = capacity_;
    i64 prev = kInf;
    for (const auto& e : events_) {
        if (prev != kInf && e.t <= prev) {
            throw ConsistencyError("timeline: events out of order");
        }
        prev = e.t;
        avail += e.delta;
        if (avail < 0 || avail > capacity_) {
            throw ConsistencyError("timeline " + std::to_string(from_) + "->" + std::to_string(to_) +
                                   ": availability " + std::to_string(avail) + " outside [0, " +
                                   std::to_string(capacity_) + "] at tick " + std::to_string(e.t));
        }
    }
}

void LinkTimeline::replace_events(std::vector<BandwidthEvent> events) {
    std::sort(events.begin(), events.end(),
              [](const BandwidthEvent& a, const BandwidthEvent& b) { return a.t < b.t; });
    std::vector<BandwidthEvent> merged;
    for (const auto& e : events) {
        if (!merged.empty() && merged.back().t == e.t) {
            merged.back().delta += e.delta;
            if (merged.back().delta == 0) merged.pop_back();
        } else if (e.delta != 0) {
            merged.push_back(e);
        }
    }
    events_ = std::move(merged);
    check_consistent();
}

FitPolicy fit_policy_from_string(const std::string& name) {
    if (name == "first") return FitPolicy::FirstFit;
    if (name == "last") return FitPolicy::LastFit;
    if (name == "best") return FitPolicy::BestFit;
    if (name == "worst") return FitPolicy::WorstFit;
    throw InvalidInput("unknown fit policy '" + name + "' (expected first|last|best|worst)");
}

std::string to_string(FitPolicy policy) {
    switch (policy) {
        case FitPolicy::FirstFit: return "first";
        case FitPolicy::LastFit: return "last";
        case FitPolicy::BestFit: return "best";
        case FitPolicy::WorstFit: return "worst";
    }
    return "?";
}

std::optional<FoundWindow> find_window(std::span<const LinkTimeline* const> links, i64 bandwidth,
                                       i64 duration, i64 t1, i64 t2, FitPolicy policy) {
    detail::NoopSweepObserver observer;
    return detail::find_window_impl(links, bandwidth, duration, t1, t2, policy, observer);
}

void commit_window(std::span<LinkTimeline* const> links, const FoundWindow& window, i64 bandwidth) {
    for (LinkTimeline* tl : links) {
        tl->insert_delta(window.ts, -bandwidth);
        tl->insert_delta(window.te, bandwidth);
        tl->check_consistent();
    }
}

Scheduler::Scheduler(NetworkGraph graph, SchedulerOptions options)
    : graph_(std::move(graph)), options_(std::move(options)) {
    for (const DirectedLink& l : graph_.links()) {
        timelines_.emplace(LinkKey{l.from, l.to}, LinkTimeline(l.from, l.to, l.bandwidth));
    }
}

const LinkTimeline& Scheduler::timeline(VertexId from, VertexId to) const {
    auto it = timelines_.find({from, to});
    if (it == timelines_.end()) {
        throw InvalidInput("no directed link " + std::to_string(from) + "->" + std::to_string(to));
    }
    return it->second;
}

void Scheduler::replace_timeline_events(VertexId from, VertexId to,
                                        std::vector<BandwidthEvent> events) {
    auto it = timelines_.find({from, to});
    if (it == timelines_.end()) {
        throw InvalidInput("no directed link " + std::to_string(from) + "->" + std::to_string(to));
    }
    it->second.replace_events(std::move(events));
}

std::optional<Scheduler::PathMatch> Scheduler::match_on_candidates(
    VertexId s, VertexId f, i64 lmax, i64 bandwidth, i64 duration, i64 t1, i64 t2,
    FitPolicy policy, std::map<LinkKey, LinkTimeline>& timelines) const {
    // First feasible path in latency order wins; the fit policy chooses the
    // window within a path.
    for (DirectedPath& path : candidate_paths(graph_, s, f, lmax, options_.path_limit)) {
        std::vector<const LinkTimeline*> tls;
        tls.reserve(path.link_index.size());
        for (std::size_t idx : path.link_index) {
            const DirectedLink& l = graph_.links()[idx];
            tls.push_back(&timelines.at({l.from, l.to}));
        }
        if (auto window = find_window(tls, bandwidth, duration, t1, t2, policy)) {
            return PathMatch{std::move(path), *window};
        }
    }
    return std::nullopt;
}

Rational Scheduler::path_utilization(const PathMatch& match,
                                     const std::map<LinkKey, LinkTimeline>& timelines) const {
    Rational utilization(0);
    for (std::size_t idx : match.path.link_index) {
        const DirectedLink& l = graph_.links()[idx];
        const LinkTimeline& tl = timelines.at({l.from, l.to});
        const i64 reserved = tl.capacity() - tl.min_availability(match.window.ts, match.window.te);
        const Rational frac(reserved, tl.capacity());
        if (frac > utilization) utilization = frac;
    }
    return utilization;
}

void Scheduler::commit_match(const PathMatch& match, i64 bandwidth,
                             std::map<LinkKey, LinkTimeline>& timelines) const {
    std::vector<LinkTimeline*> tls;
    tls.reserve(match.path.link_index.size());
    for (std::size_t idx : match.path.link_index) {
        const DirectedLink& l = graph_.links()[idx];
        tls.push_back(&timelines.at({l.from, l.to}));
    }
    commit_window(tls, match.window, bandwidth);
}

SubmitOutcome Scheduler::submit(const std::string& request_id, const TransferRequest& request,
                                FitPolicy policy) {
    validate_request(request);
    SubmitOutcome outcome = std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, FixedBwFixedDurRequest>) {
                return submit_fixed_bw(request_id, r, policy, timelines_, next_reservation_id_);
            } else if constexpr (std::is_same_v<T, FixedDataFixedDurRequest>) {
                return submit_fixed_data(request_id, r, policy, timelines_, next_reservation_id_);
            } else if constexpr (std::is_same_v<T, FixedBwVarDurRequest>) {
                return submit_var_dur(request_id, r, policy, timelines_, next_reservation_id_);
            } else {
                return submit_group(request_id, r, policy);
            }
        },
        request);
    if (outcome.accepted && !std::holds_alternative<RequestGroup>(request)) {
        next_reservation_id_ += i64(outcome.reservations.size());
        for (const Reservation& res : outcome.reservations) reservations_.push_back(res);
    }
    return outcome;
}

SubmitOutcome Scheduler::submit_fixed_bw(const std::string& request_id,
                                         const FixedBwFixedDurRequest& req, FitPolicy policy,
                                         std::map<LinkKey, LinkTimeline>& timelines,
                                         i64 reservation_id) const {
    auto match = match_on_candidates(req.s, req.f, req.lmax, req.bandwidth, req.duration, req.t1,
                                     req.t2, policy, timelines);
    if (!match) {
        const bool no_path = candidate_paths(graph_, req.s, req.f, req.lmax, 1).empty();
        return {false, {}, no_path ? "no candidate path within lmax" : "no feasible window"};
    }
    const Rational utilization = path_utilization(*match, timelines);
    i64 price = price_fixed_bw_fixed_dur(options_.pricing, req, utilization);
    price = (options_.pricing.multiplier_at(match->window.ts) * Rational(price)).round_half_up();
    commit_match(*match, req.bandwidth, timelines);
    Reservation res{reservation_id, request_id,         "fixed_bw_fixed_dur",
                    match->path,    match->window.ts,   match->window.te,
                    req.bandwidth,  match->window.bottleneck, price};
    return {true, {res}, ""};
}

SubmitOutcome Scheduler::submit_fixed_data(const std::string& request_id,
                                           const FixedDataFixedDurRequest& req, FitPolicy policy,
                                           std::map<LinkKey, LinkTimeline>& timelines,
                                           i64 reservation_id) const {
    // Constant-rate reduction: spread the data across the whole window. A
    // single path carries the transfer, so ordered delivery holds trivially.
    const i64 duration = req.t2 - req.t1;
    const i64 bandwidth = ceil_div(req.total_data, duration);
    auto match = match_on_candidates(req.s, req.f, kInf, bandwidth, duration, req.t1, req.t2,
                                     policy, timelines);
    if (!match) {
        const bool no_path = candidate_paths(graph_, req.s, req.f, kInf, 1).empty();
        return {false, {},
                no_path ? "no path between endpoints"
                        : "no window for rate " + std::to_string(bandwidth)};
    }
    i64 price = price_fixed_data(options_.pricing, req);
    price = (options_.pricing.multiplier_at(match->window.ts) * Rational(price)).round_half_up();
    commit_match(*match, bandwidth, timelines);
    Reservation res{reservation_id, request_id,       "fixed_data_fixed_dur",
                    match->path,    match->window.ts, match->window.te,
                    bandwidth,      match->window.bottleneck, price};
    return {true, {res}, ""};
}

SubmitOutcome Scheduler::submit_var_dur(const std::string& request_id,
                                        const FixedBwVarDurRequest& req, FitPolicy policy,
                                        std::map<LinkKey, LinkTimeline>& timelines,
                                        i64 reservation_id) const {
    // Hold the path from t1 to the horizon; release() hands bandwidth back at
    // the actual termination tick. The admission price is the fixed cost CF,
    // the final charge is settled on release.
    const i64 horizon = req.t1 + options_.var_dur_horizon;
    auto match = match_on_candidates(req.s, req.f, req.lmax, req.bandwidth, horizon - req.t1,
                                     req.t1, horizon, policy, timelines);
    if (!match) {
        const bool no_path = candidate_paths(graph_, req.s, req.f, req.lmax, 1).empty();
        return {false, {},
                no_path ? "no candidate path within lmax" : "bandwidth not free through horizon"};
    }
    const i64 price = price_var_dur(options_.pricing, 0);
    commit_match(*match, req.bandwidth, timelines);
    Reservation res{reservation_id, request_id,       "fixed_bw_var_dur",
                    match->path,    match->window.ts, match->window.te,
                    req.bandwidth,  match->window.bottleneck, price};
    res.releasable = true;
    return {true, {res}, ""};
}

SubmitOutcome Scheduler::submit_group(const std::string& request_id, const RequestGroup& group,
                                      FitPolicy policy) {
    std::vector<i64> order = topo_order(group);

    // Stage the whole group on a scratch copy; only a fully scheduled group
    // reaches the live timelines.
    std::map<LinkKey, LinkTimeline> scratch = timelines_;
    std::vector<i64> finish(group.requests.size() + 1, 0);
    std::vector<Reservation> members;
    i64 reservation_id = next_reservation_id_;

    for (i64 index : order) {
        i64 earliest = 0;
        for (auto [u, v] : group.precedence) {
            if (v == index) earliest = std::max(earliest, finish[std::size_t(u)]);
        }
        const std::string member_id = request_id + "[" + std::to_string(index) + "]";
        const FixedDurRequest& member = group.requests[std::size_t(index - 1)];
        SubmitOutcome sub;
        if (const auto* bw = std::get_if<FixedBwFixedDurRequest>(&member)) {
            FixedBwFixedDurRequest lifted = *bw;
            lifted.t1 = std::max(lifted.t1, earliest);
            if (lifted.t1 + lifted.duration > lifted.t2) {
                return {false, {},
                        "member " + std::to_string(index) + ": predecessors finish too late"};
            }
            sub = submit_fixed_bw(member_id, lifted, policy, scratch, reservation_id);
        } else {
            FixedDataFixedDurRequest lifted = std::get<FixedDataFixedDurRequest>(member);
            lifted.t1 = std::max(lifted.t1, earliest);
            if (lifted.t1 >= lifted.t2) {
                return {false, {},
                        "member " + std::to_string(index) + ": predecessors finish too late"};
            }
            sub = submit_fixed_data(member_id, lifted, policy, scratch, reservation_id);
        }
        if (!sub.accepted) {
            return {false, {}, "member " + std::to_string(index) + ": " + sub.reason};
        }
        finish[std::size_t(index)] = sub.reservations[0].te;
        members.push_back(sub.reservations[0]);
        ++reservation_id;
    }

    timelines_ = std::move(scratch);
    next_reservation_id_ = reservation_id;
    for (const Reservation& res : members) reservations_.push_back(res);
    return {true, std::move(members), ""};
}

Reservation Scheduler::release(i64 reservation_id, i64 t_end) {
    for (Reservation& res : reservations_) {
        if (res.reservation_id != reservation_id) continue;
        if (!res.releasable) throw InvalidInput("reservation is not a variable-duration hold");
        if (res.released) throw InvalidInput("reservation already released");
        if (t_end < res.ts || t_end > res.te) {
            throw InvalidInput("release tick outside the reserved interval");
        }
        if (t_end < res.te) {
            for (std::size_t idx : res.path.link_index) {
                const DirectedLink& l = graph_.links()[idx];
                LinkTimeline& tl = timelines_.at({l.from, l.to});
                tl.insert_delta(t_end, res.bandwidth);
                tl.insert_delta(res.te, -res.bandwidth);
                tl.check_consistent();
            }
        }
        res.released = true;
        res.price = price_var_dur(options_.pricing, t_end - res.ts);
        return res;
    }
    throw InvalidInput("unknown reservation id " + std::to_string(reservation_id));
}

void Scheduler::set_reservation_price(i64 reservation_id, i64 price) {
    for (Reservation& res : reservations_) {
        if (res.reservation_id == reservation_id) {
            res.price = price;
            return;
        }
    }
    throw InvalidInput("unknown reservation id " + std::to_string(reservation_id));
}

}  // namespace dts

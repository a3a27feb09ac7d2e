#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dts/numeric.hpp"

namespace dts {

// Disjoint path with a fixed activation cost, a per-packet cost, and a cap.
struct PathTariff {
    i64 fixed_cost = 0;    // cf
    i64 per_packet = 0;    // cv
    i64 packet_cap = 1;    // pmax

    void validate() const {
        if (fixed_cost < 0 || per_packet < 0) throw InvalidInput("path: costs must be nonnegative");
        if (packet_cap < 1) throw InvalidInput("path: pmax must be at least 1");
    }
};

// 0 for an unused path, cf + k * cv otherwise. Throws when k violates the cap.
i64 pcost(const PathTariff& path, i64 packets);

struct AllocationResult {
    bool feasible = false;
    i64 cost = 0;
    std::vector<i64> allocation;  // packets per path, original order
};

// DP over paths sorted by descending per-packet cost: each state either skips
// a path, uses it fully on top of an earlier state, or opens a fresh plan
// with the path partially used. Exact optimum in O(P*N); the returned plan is
// the lexicographically smallest optimal packet-count vector.
AllocationResult solve_descending(std::span<const PathTariff> paths, i64 packets);

// Independent route: full-use-only DP over paths sorted by ascending
// per-packet cost, combined with an explicit scan over the single partially
// used path (which, in an optimal plan, has the largest per-packet cost among
// the used paths). Same optimum and tie-break as solve_descending.
AllocationResult solve_ascending(std::span<const PathTariff> paths, i64 packets);

// Subset enumeration filling cheapest per-packet cost first; exact reference.
// Guarded to P <= 15.
AllocationResult brute_allocation(std::span<const PathTariff> paths, i64 packets);

// Lower envelope of half-lines y = intercept + x * slope over x >= 0.
class HalfLineEnvelope {
  public:
    struct Line {
        i64 intercept;  // cf
        i64 slope;      // cv
    };

    explicit HalfLineEnvelope(std::span<const Line> lines);

    // Pointwise minimum at x; +inf sentinel when the envelope is empty.
    i64 value_at(i64 x) const;

    const std::vector<Line>& hull() const { return hull_; }

    // Amortized O(1) lookups for nondecreasing query sequences.
    class Cursor {
      public:
        explicit Cursor(const HalfLineEnvelope& env) : env_(env) {}
        i64 value_at(i64 x);

      private:
        const HalfLineEnvelope& env_;
        std::size_t segment_ = 0;
        i64 last_x_ = -1;
    };

  private:
    std::vector<Line> hull_;     // decreasing slope
    std::vector<i64> boundary_;  // boundary_[i]: first x where hull_[i+1] wins
};

}  // namespace dts

#pragma once

#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "dts/numeric.hpp"

namespace dts {

// Sliding-window minimum deque over (key, value) pairs. Keys are pushed in
// strictly increasing order; entries older than a moving key threshold are
// expired from the front. Both keys and values stay strictly increasing from
// front to back, so the front always holds the window minimum.
class MonotoneMinDeque {
  public:
    struct Entry {
        i64 key;
        i64 value;
    };

    // Pop-back uses >= so that on equal values the later key survives.
    void push_back(i64 key, i64 value) {
        if (!entries_.empty() && key <= entries_.back().key) {
            throw InvalidInput("MonotoneMinDeque: keys must be strictly increasing");
        }
        while (!entries_.empty() && entries_.back().value >= value) {
            entries_.pop_back();
        }
        entries_.push_back({key, value});
    }

    // Drop all front entries with key <= threshold.
    void expire_front_by_key(i64 threshold) {
        while (!entries_.empty() && entries_.front().key <= threshold) {
            entries_.pop_front();
        }
    }

    // Remove the front entry iff it carries exactly this key; a mismatch means
    // the entry was already dominated away and there is nothing to do.
    void remove_front_if_key(i64 key) {
        if (!entries_.empty() && entries_.front().key == key) {
            entries_.pop_front();
        }
    }

    i64 min_value() const { return entries_.empty() ? kInf : entries_.front().value; }

    std::optional<Entry> front() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.front();
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    const std::deque<Entry>& entries() const { return entries_; }

  private:
    std::deque<Entry> entries_;
};

// SP(0) = 0, SP(i) = SP(i-1) + x(i); one entry longer than the input.
inline std::vector<i64> prefix_sums(std::span<const i64> sizes) {
    std::vector<i64> sp(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        sp[i + 1] = sp[i] + sizes[i];
    }
    return sp;
}

}  // namespace dts

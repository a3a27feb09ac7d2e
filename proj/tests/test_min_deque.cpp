#include <doctest.h>

#include <random>

#include "dts/min_deque.hpp"

using dts::i64;
using dts::MonotoneMinDeque;

TEST_CASE("push pops dominated back entries") {
    MonotoneMinDeque d;
    d.push_back(1, 5);
    d.push_back(2, 7);
    d.push_back(3, 4);
    REQUIRE(d.size() == 1);
    CHECK(d.front()->key == 3);
    CHECK(d.front()->value == 4);
}

TEST_CASE("single push is kept as-is") {
    MonotoneMinDeque d;
    d.push_back(1, 5);
    REQUIRE(d.size() == 1);
    CHECK(d.min_value() == 5);
}

TEST_CASE("equal values: the later key survives") {
    MonotoneMinDeque d;
    d.push_back(1, 3);
    d.push_back(2, 3);
    REQUIRE(d.size() == 1);
    CHECK(d.front()->key == 2);
}

TEST_CASE("non-increasing keys are rejected") {
    MonotoneMinDeque d;
    d.push_back(5, 1);
    CHECK_THROWS_AS(d.push_back(5, 0), dts::InvalidInput);
    CHECK_THROWS_AS(d.push_back(4, 0), dts::InvalidInput);
}

TEST_CASE("expire_front_by_key") {
    MonotoneMinDeque d;
    d.push_back(1, 5);
    d.push_back(4, 8);

    SUBCASE("threshold hits the front") {
        d.expire_front_by_key(1);
        REQUIRE(d.size() == 1);
        CHECK(d.front()->key == 4);
    }
    SUBCASE("threshold below every key") {
        d.expire_front_by_key(0);
        CHECK(d.size() == 2);
    }
    SUBCASE("threshold above every key") {
        d.expire_front_by_key(9);
        CHECK(d.empty());
    }
}

TEST_CASE("remove_front_if_key only pops an exact match") {
    MonotoneMinDeque d;
    d.push_back(3, 4);

    SUBCASE("match") {
        d.remove_front_if_key(3);
        CHECK(d.empty());
    }
    SUBCASE("dominated entry is a no-op") {
        d.remove_front_if_key(2);
        CHECK(d.size() == 1);
    }
    SUBCASE("empty deque is a no-op") {
        d.remove_front_if_key(3);
        d.remove_front_if_key(3);
        CHECK(d.empty());
    }
}

TEST_CASE("min_value") {
    MonotoneMinDeque d;
    CHECK(d.min_value() == dts::kInf);
    d.push_back(3, 4);
    d.push_back(7, 9);
    CHECK(d.min_value() == 4);
}

TEST_CASE("min_value matches a naive window scan on random sequences") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        MonotoneMinDeque d;
        std::vector<std::pair<i64, i64>> pushed;  // (key, value)
        i64 key = 0;
        i64 expire_threshold = -1;
        for (int step = 0; step < 100; ++step) {
            if (rng() % 4 != 0) {
                key += 1 + i64(rng() % 5);
                const i64 value = i64(rng() % 50);
                d.push_back(key, value);
                pushed.emplace_back(key, value);
            } else {
                expire_threshold = key - 1 - i64(rng() % 10);
                d.expire_front_by_key(expire_threshold);
            }
            i64 naive = dts::kInf;
            for (const auto& [k, v] : pushed) {
                if (k > expire_threshold) naive = std::min(naive, v);
            }
            REQUIRE(d.min_value() == naive);
            REQUIRE(d.size() <= pushed.size());
        }
    }
}

TEST_CASE("deque invariants hold after every operation") {
    std::mt19937_64 rng(99);
    MonotoneMinDeque d;
    i64 key = 0;
    for (int step = 0; step < 500; ++step) {
        key += 1 + i64(rng() % 3);
        d.push_back(key, i64(rng() % 100));
        if (step % 7 == 0) d.expire_front_by_key(key - 10);
        const auto& entries = d.entries();
        for (std::size_t i = 1; i < entries.size(); ++i) {
            REQUIRE(entries[i - 1].key < entries[i].key);
            REQUIRE(entries[i - 1].value < entries[i].value);
        }
    }
}

TEST_CASE("prefix_sums") {
    const std::vector<i64> x{2, 3, 5};
    CHECK(dts::prefix_sums(x) == std::vector<i64>{0, 2, 5, 10});
    CHECK(dts::prefix_sums(std::vector<i64>{}) == std::vector<i64>{0});
    CHECK(dts::prefix_sums(std::vector<i64>{7}) == std::vector<i64>{0, 7});
}

TEST_CASE("saturating arithmetic with the infinity sentinel") {
    CHECK(dts::sat_add(dts::kInf, 5) == dts::kInf);
    CHECK(dts::sat_add(5, dts::kInf) == dts::kInf);
    CHECK(dts::sat_add(dts::kInf - 1, 10) == dts::kInf);
    CHECK(dts::sat_add(3, 4) == 7);
}

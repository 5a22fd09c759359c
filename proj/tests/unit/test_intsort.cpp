#include <doctest.h>

#include <random>

#include "rdelta/intsort.hpp"

using namespace rdelta;

namespace {

std::vector<std::uint32_t> payloads(const std::vector<KeyedItem>& items) {
    std::vector<std::uint32_t> out;
    for (const auto& item : items) out.push_back(item.payload);
    return out;
}

}  // namespace

TEST_SUITE("intsort") {

TEST_CASE("small orders and stability") {
    for (auto strategy : {SortStrategy::Comparison, SortStrategy::Radix}) {
        CHECK(payloads(sort_by_key({{0, 3, 0}, {0, 1, 1}, {0, 2, 2}}, strategy)) == std::vector<std::uint32_t>{1, 2, 0});
        CHECK(payloads(sort_by_key({{0, 5, 'A'}, {0, 5, 'B'}}, strategy)) == std::vector<std::uint32_t>{'A', 'B'});
        CHECK(sort_by_key({}, strategy).empty());
        // hi dominates lo
        CHECK(payloads(sort_by_key({{1, 0, 0}, {0, ~0ULL, 1}}, strategy)) == std::vector<std::uint32_t>{1, 0});
    }
}

TEST_CASE("radix equals comparison on random 62-bit keys") {
    std::mt19937_64 rng(3);
    std::vector<KeyedItem> items(100'000);
    for (std::uint32_t i = 0; i < items.size(); ++i) items[i] = {0, rng() >> 2, i};
    CHECK(sort_by_key(items, SortStrategy::Radix) == sort_by_key(items, SortStrategy::Comparison));
}

TEST_CASE("radix equals comparison on composite keys with many ties") {
    std::mt19937_64 rng(4);
    for (int round = 0; round < 50; ++round) {
        std::vector<KeyedItem> items(rng() % 3000);
        for (std::uint32_t i = 0; i < items.size(); ++i) {
            items[i] = {rng() % 5, (rng() % 7) << (rng() % 60), i};
        }
        CHECK(sort_by_key(items, SortStrategy::Radix) == sort_by_key(items, SortStrategy::Comparison));
    }
}

TEST_CASE("digit width follows r") {
    CHECK(radix_digit_bits(1) == 8);
    CHECK(radix_digit_bits(1000) == 10);
    CHECK(radix_digit_bits(1024) == 10);
    CHECK(radix_digit_bits(1025) == 11);
    CHECK(radix_digit_bits(10'000'000) == 16);
}

}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rdelta/suffix_array.hpp"

using namespace rdelta;

TEST_SUITE("suffix_array") {

TEST_CASE("SA-IS matches std::sort of suffixes") {
    std::mt19937 rng(5);
    for (int round = 0; round < 300; ++round) {
        const std::uint32_t alphabet = 2 + rng() % 6;
        std::vector<std::uint32_t> text(rng() % 200);
        for (auto& c : text) c = 1 + rng() % (alphabet - 1);
        text.push_back(0);

        std::vector<std::int64_t> expected(text.size());
        std::iota(expected.begin(), expected.end(), 0);
        std::sort(expected.begin(), expected.end(), [&](std::int64_t a, std::int64_t b) {
            return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
        });
        const auto sa = suffix_array_sais(text, alphabet);
        REQUIRE(sa == expected);

        const auto lcp = lcp_array(text, sa);
        for (std::size_t i = 1; i < sa.size(); ++i) {
            std::int64_t h = 0;
            while (text[sa[i] + h] == text[sa[i - 1] + h]) ++h;
            CHECK(lcp[i] == h);
        }
    }
}

TEST_CASE("repetitive inputs recurse") {
    std::vector<std::uint32_t> text;
    for (int i = 0; i < 500; ++i) {
        text.push_back(1);
        text.push_back(2);
        text.push_back(i % 7 == 0 ? 3 : 1);
    }
    text.push_back(0);
    const auto sa = suffix_array_sais(text, 4);
    for (std::size_t i = 1; i < sa.size(); ++i) {
        CHECK(std::lexicographical_compare(text.begin() + sa[i - 1], text.end(), text.begin() + sa[i], text.end()));
    }
}

TEST_CASE("single sentinel") {
    const std::vector<std::uint32_t> text{0};
    CHECK(suffix_array_sais(text, 1) == std::vector<std::int64_t>{0});
}

}

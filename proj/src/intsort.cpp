#include "rdelta/intsort.hpp"

#include <algorithm>
#include <bit>

namespace rdelta {

unsigned radix_digit_bits(std::size_t count) noexcept {
    unsigned bits = count <= 1 ? 0u : static_cast<unsigned>(std::bit_width(count - 1));
    return std::clamp(bits, 8u, 16u);
}

namespace {

void radix_pass(std::vector<KeyedItem>& src, std::vector<KeyedItem>& dst,
                std::vector<std::size_t>& counts, bool high_word, unsigned shift, unsigned bits) {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    auto digit = [&](const KeyedItem& item) {
        return static_cast<std::size_t>(((high_word ? item.hi : item.lo) >> shift) & mask);
    };
    std::fill(counts.begin(), counts.end(), 0);
    for (const KeyedItem& item : src) ++counts[digit(item)];
    std::size_t sum = 0;
    for (std::size_t& c : counts) {
        std::size_t here = c;
        c = sum;
        sum += here;
    }
    for (const KeyedItem& item : src) dst[counts[digit(item)]++] = item;
    src.swap(dst);
}

}  // namespace

std::vector<KeyedItem> sort_by_key(std::vector<KeyedItem> items, SortStrategy strategy) {
    if (items.size() < 2) return items;
    if (strategy == SortStrategy::Comparison) {
        std::stable_sort(items.begin(), items.end(), [](const KeyedItem& a, const KeyedItem& b) {
            return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
        });
        return items;
    }

    std::uint64_t max_lo = 0;
    std::uint64_t max_hi = 0;
    for (const KeyedItem& item : items) {
        max_lo = std::max(max_lo, item.lo);
        max_hi = std::max(max_hi, item.hi);
    }
    // Once hi is non-zero every lo bit matters.
    const unsigned lo_bits = max_hi != 0 ? 64u : static_cast<unsigned>(std::bit_width(max_lo));
    const unsigned hi_bits = static_cast<unsigned>(std::bit_width(max_hi));

    const unsigned bits = radix_digit_bits(items.size());
    std::vector<KeyedItem> scratch(items.size());
    std::vector<std::size_t> counts(std::size_t{1} << bits);
    for (unsigned shift = 0; shift < lo_bits; shift += bits) {
        radix_pass(items, scratch, counts, false, shift, std::min(bits, 64u - shift));
    }
    for (unsigned shift = 0; shift < hi_bits; shift += bits) {
        radix_pass(items, scratch, counts, true, shift, std::min(bits, 64u - shift));
    }
    return items;
}

}  // namespace rdelta

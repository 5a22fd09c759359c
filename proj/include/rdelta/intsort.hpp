#pragma once

#include <cstdint>
#include <vector>

namespace rdelta {

// Key is the 128-bit value (hi << 64) | lo; callers keep it below 2^124.
struct KeyedItem {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    std::uint32_t payload = 0;

    friend bool operator==(const KeyedItem&, const KeyedItem&) = default;
};

enum class SortStrategy { Comparison, Radix };

// Stable sort by key. Both strategies return identical sequences.
//
// Radix is LSD with 2^b buckets, b = ceil(lg r) clamped to [8, 16], and
// only as many passes as the largest key needs: O(r lg_r K) for keys < K.
// Auxiliary memory is one scratch copy of the items plus the bucket counts.
std::vector<KeyedItem> sort_by_key(std::vector<KeyedItem> items,
                                   SortStrategy strategy = SortStrategy::Radix);

// Digit width used by the radix path for `count` items.
unsigned radix_digit_bits(std::size_t count) noexcept;

}  // namespace rdelta

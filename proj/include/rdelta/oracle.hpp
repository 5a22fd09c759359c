#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rdelta/sweep.hpp"

namespace rdelta {

inline constexpr std::size_t kOracleLimit = 1'000'000;
inline constexpr std::size_t kQuadraticLimit = 4096;

// counts[k - 1] = |Substr_T(k)| for k in [1, n].
struct Profile {
    std::vector<std::uint64_t> counts;

    std::uint64_t at(std::uint64_t k) const { return counts[k - 1]; }
    friend bool operator==(const Profile&, const Profile&) = default;
};

// Suffix array (prefix doubling) + LCP histogram over the uncompressed text.
Profile naive_profile(std::span<const std::uint32_t> text);
Profile naive_profile(std::string_view text);

// Exact max over the whole profile; change_points holds every k.
DeltaResult naive_delta(std::span<const std::uint32_t> text);
DeltaResult naive_delta(std::string_view text);
DeltaResult naive_delta(const RleString& rle);

// O(n^2) naming of every substring by its one-shorter prefix and last
// character, with no suffix sorting. Checks naive_profile.
Profile quadratic_profile(std::span<const std::uint32_t> text);
Profile quadratic_profile(std::string_view text);

}  // namespace rdelta

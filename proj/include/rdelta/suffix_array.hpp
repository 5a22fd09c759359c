#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rdelta {

// Suffix array by induced sorting (SA-IS). `text` must end with a unique
// smallest symbol 0; all symbols lie in [0, alphabet).
std::vector<std::int64_t> suffix_array_sais(std::span<const std::uint32_t> text, std::uint32_t alphabet);

// lcp[i] = LCP(text[sa[i-1]..], text[sa[i]..]) in symbols; lcp[0] = 0. Kasai et al.
std::vector<std::int64_t> lcp_array(std::span<const std::uint32_t> text, std::span<const std::int64_t> sa);

}  // namespace rdelta

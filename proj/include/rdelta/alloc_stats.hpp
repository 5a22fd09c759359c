#pragma once

#include <cstddef>

namespace rdelta::alloc_stats {

// Live heap bytes and high-water mark since the last reset, counted by the
// replacement operator new/delete in librdelta_alloc. Only meaningful in
// binaries that link that library.
std::size_t current_bytes() noexcept;
std::size_t peak_bytes() noexcept;
// Restarts the high-water mark at the current live size.
void reset_peak() noexcept;

}  // namespace rdelta::alloc_stats

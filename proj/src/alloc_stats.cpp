#include "rdelta/alloc_stats.hpp"

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::size_t> g_current{0};
std::atomic<std::size_t> g_peak{0};

// Header keeps the size so delete can account for it; 16 bytes preserves
// max_align_t alignment.
constexpr std::size_t kHeader = 16;

void* tracked_alloc(std::size_t size) noexcept {
    auto* raw = static_cast<unsigned char*>(std::malloc(size + kHeader));
    if (raw == nullptr) return nullptr;
    *reinterpret_cast<std::size_t*>(raw) = size;
    std::size_t now = g_current.fetch_add(size, std::memory_order_relaxed) + size;
    std::size_t peak = g_peak.load(std::memory_order_relaxed);
    while (now > peak && !g_peak.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
    return raw + kHeader;
}

void tracked_free(void* ptr) noexcept {
    if (ptr == nullptr) return;
    auto* raw = static_cast<unsigned char*>(ptr) - kHeader;
    g_current.fetch_sub(*reinterpret_cast<std::size_t*>(raw), std::memory_order_relaxed);
    std::free(raw);
}

void* throwing_alloc(std::size_t size) {
    if (void* p = tracked_alloc(size == 0 ? 1 : size)) return p;
    throw std::bad_alloc();
}

}  // namespace

namespace rdelta::alloc_stats {

std::size_t current_bytes() noexcept { return g_current.load(std::memory_order_relaxed); }
std::size_t peak_bytes() noexcept { return g_peak.load(std::memory_order_relaxed); }
void reset_peak() noexcept { g_peak.store(g_current.load(std::memory_order_relaxed), std::memory_order_relaxed); }

}  // namespace rdelta::alloc_stats

void* operator new(std::size_t size) { return throwing_alloc(size); }
void* operator new[](std::size_t size) { return throwing_alloc(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept { return tracked_alloc(size == 0 ? 1 : size); }
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept { return tracked_alloc(size == 0 ? 1 : size); }
void operator delete(void* ptr) noexcept { tracked_free(ptr); }
void operator delete[](void* ptr) noexcept { tracked_free(ptr); }
void operator delete(void* ptr, std::size_t) noexcept { tracked_free(ptr); }
void operator delete[](void* ptr, std::size_t) noexcept { tracked_free(ptr); }
void operator delete(void* ptr, const std::nothrow_t&) noexcept { tracked_free(ptr); }
void operator delete[](void* ptr, const std::nothrow_t&) noexcept { tracked_free(ptr); }

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdelta/dmn.hpp"
#include "rdelta/intsort.hpp"
#include "rdelta/lca.hpp"
#include "rdelta/rle.hpp"
#include "rdelta/rstree.hpp"

namespace rdelta {

// Contribution `w` to ddiff(k + 1) - ddiff(k), where ddiff(k) = |D_k| - |D_{k-1}|.
struct Event {
    std::uint64_t k = 0;
    std::int64_t w = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

struct ChangePoint {
    std::uint64_t k = 0;
    std::uint64_t count = 0;  // |D_k| = |Substr_T(k)|

    friend bool operator==(const ChangePoint&, const ChangePoint&) = default;
};

struct DeltaResult {
    std::uint64_t num = 0;  // delta = num / den, lowest terms
    std::uint64_t den = 1;
    std::uint64_t argmax_k = 0;
    std::uint64_t substr_at_argmax = 0;
    std::vector<ChangePoint> change_points;  // every k the maximization looked at, ascending
    std::size_t r = 0;
    std::uint64_t n = 0;
    std::uint32_t sigma = 0;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    bool same_delta(const DeltaResult& other) const noexcept { return num == other.num && den == other.den; }
};

// a/b < c/d by 128-bit cross multiplication.
inline bool ratio_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) noexcept {
    return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}

// Roots emit (t-1, +1), (d, -1); explicit nodes emit (t, h-1), (d+1, 1-h).
// Zero-weight events are dropped.
std::vector<Event> build_events(std::span<const DNodeAttr> roots, std::span<const DNodeAttr> explicits);

// Sums weights per coordinate, drops zeros, ascending k.
std::vector<Event> aggregate_events(std::vector<Event> events, SortStrategy strategy = SortStrategy::Radix);

// Sweeps the events and maximizes |D_k| / k over each event coordinate and
// its successor, clamped to [1, n]. Throws InvariantViolation when the
// events do not describe a valid profile.
DeltaResult compute_delta(std::vector<Event> events, std::uint64_t n, SortStrategy strategy = SortStrategy::Radix);

// |D_k| for every k in [1, n] (index k - 1). Test and debugging aid.
std::vector<std::uint64_t> expand_profile(std::vector<Event> events, std::uint64_t n);

struct PipelineOptions {
    RmqKind rmq = RmqKind::SparseTable;
    // Comparison sorting keeps the running time independent of n; radix
    // needs a pass per lg r bits of the largest key.
    SortStrategy sort = SortStrategy::Comparison;
};

// Every intermediate product of the compressed pipeline.
struct PipelineTrace {
    RSuffixTree tree;
    std::vector<LeafRecord> leaves;
    std::vector<DNodeAttr> roots;
    std::vector<DNodeAttr> explicits;
    std::vector<Event> events;
    DeltaResult result;
};

// `rle` must outlive the returned trace (the tree refers to it).
PipelineTrace run_pipeline(const RleString& rle, const PipelineOptions& options = {});

DeltaResult delta_from_rle(const RleString& rle, const PipelineOptions& options = {});

}  // namespace rdelta

#include "rdelta/sweep.hpp"

#include <algorithm>
#include <numeric>

#include "rdelta/error.hpp"

namespace rdelta {

std::vector<Event> build_events(std::span<const DNodeAttr> roots, std::span<const DNodeAttr> explicits) {
    std::vector<Event> events;
    events.reserve(2 * (roots.size() + explicits.size()));
    for (const DNodeAttr& v : roots) {
        events.push_back({v.t_len - 1, +1});
        events.push_back({v.d, -1});
    }
    for (const DNodeAttr& u : explicits) {
        const std::int64_t w = static_cast<std::int64_t>(u.h) - 1;
        if (w == 0) continue;
        events.push_back({u.t_len, w});
        events.push_back({u.d + 1, -w});
    }
    return events;
}

std::vector<Event> aggregate_events(std::vector<Event> events, SortStrategy strategy) {
    std::vector<KeyedItem> keyed;
    keyed.reserve(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        keyed.push_back({0, events[i].k, static_cast<std::uint32_t>(i)});
    }
    keyed = sort_by_key(std::move(keyed), strategy);
    std::vector<Event> out;
    for (const KeyedItem& item : keyed) {
        const Event& ev = events[item.payload];
        if (!out.empty() && out.back().k == ev.k) {
            out.back().w += ev.w;
        } else {
            out.push_back(ev);
        }
    }
    std::erase_if(out, [](const Event& ev) { return ev.w == 0; });
    return out;
}

namespace {

void check_zero_sums(std::span<const Event> events) {
    __int128 weight = 0;
    __int128 moment = 0;
    for (const Event& ev : events) {
        weight += ev.w;
        moment += static_cast<__int128>(ev.w) * static_cast<__int128>(ev.k);
    }
    if (weight != 0) throw InvariantViolation("event weights do not sum to zero");
    if (moment != 0) throw InvariantViolation("event moments do not sum to zero");
}

}  // namespace

DeltaResult compute_delta(std::vector<Event> events, std::uint64_t n, SortStrategy strategy) {
    DeltaResult result;
    result.n = n;
    if (n == 0) {
        if (!events.empty()) throw InvariantViolation("events for an empty text");
        result.num = 0;
        result.den = 1;
        return result;
    }
    check_zero_sums(events);
    events = aggregate_events(std::move(events), strategy);

    // ddiff is constant between consecutive event coordinates, so |D_k|/k
    // peaks at one of them or right after one.
    std::vector<std::uint64_t> candidates;
    candidates.reserve(2 * events.size());
    for (const Event& ev : events) {
        candidates.push_back(std::clamp<std::uint64_t>(ev.k, 1, n));
        candidates.push_back(std::clamp<std::uint64_t>(ev.k + 1, 1, n));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // count = |D_at|; slope = ddiff on (at, next event coordinate].
    __int128 count = 0;
    __int128 slope = 0;
    std::uint64_t at = 0;
    std::size_t next = 0;
    auto apply_through = [&](auto keep_going) {
        while (next < events.size() && keep_going(events[next].k)) {
            const Event& ev = events[next++];
            count += slope * static_cast<__int128>(ev.k - at);
            at = ev.k;
            if (count < 0) throw InvariantViolation("|D_k| went negative at k = " + std::to_string(at));
            slope += ev.w;
        }
    };
    for (std::uint64_t k : candidates) {
        apply_through([k](std::uint64_t ek) { return ek < k; });
        const __int128 value = count + slope * static_cast<__int128>(k - at);
        if (value < 0) throw InvariantViolation("|D_k| went negative at k = " + std::to_string(k));
        result.change_points.push_back({k, static_cast<std::uint64_t>(value)});
    }
    apply_through([](std::uint64_t) { return true; });
    if (slope != 0 || count != 0) {
        throw InvariantViolation("|D_k| does not return to zero after the last event");
    }

    // Ties go to the smallest k.
    bool first = true;
    for (const ChangePoint& cp : result.change_points) {
        if (first || ratio_less(result.substr_at_argmax, result.argmax_k, cp.count, cp.k)) {
            first = false;
            result.argmax_k = cp.k;
            result.substr_at_argmax = cp.count;
        }
    }
    const std::uint64_t g = std::gcd(result.substr_at_argmax, result.argmax_k);
    result.num = result.substr_at_argmax / g;
    result.den = result.argmax_k / g;
    return result;
}

std::vector<std::uint64_t> expand_profile(std::vector<Event> events, std::uint64_t n) {
    events = aggregate_events(std::move(events), SortStrategy::Comparison);
    std::vector<std::uint64_t> profile(n, 0);
    std::size_t next = 0;
    std::int64_t slope = 0;
    std::int64_t count = 0;
    // ddiff(k) picks up events at k - 1.
    for (std::uint64_t k = 1; k <= n; ++k) {
        while (next < events.size() && events[next].k <= k - 1) slope += events[next++].w;
        count += slope;
        profile[k - 1] = static_cast<std::uint64_t>(std::max<std::int64_t>(count, 0));
        if (count < 0) throw InvariantViolation("|D_k| went negative");
    }
    return profile;
}

PipelineTrace run_pipeline(const RleString& rle, const PipelineOptions& options) {
    PipelineTrace trace{build_rsuffix_tree(rle, options.sort), {}, {}, {}, {}, {}};
    if (!rle.empty()) {
        const LcaOracle oracle(trace.tree, options.rmq);
        const RemLists lists = build_rem_lists(trace.tree);
        trace.leaves = compute_b_depths(trace.tree, oracle, lists, options.sort);
        trace.roots = collect_dmn_roots(trace.tree, trace.leaves);
        trace.explicits = collect_explicit_d_nodes(trace.tree, trace.leaves);
        trace.events = build_events(trace.roots, trace.explicits);
    }
    trace.result = compute_delta(trace.events, rle.n(), options.sort);
    trace.result.r = rle.r();
    trace.result.sigma = rle.sigma();
    return trace;
}

DeltaResult delta_from_rle(const RleString& rle, const PipelineOptions& options) {
    return run_pipeline(rle, options).result;
}

}  // namespace rdelta

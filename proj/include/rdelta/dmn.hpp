#pragma once

#include <cstdint>
#include <vector>

#include "rdelta/intsort.hpp"
#include "rdelta/lca.hpp"
#include "rdelta/rstree.hpp"

namespace rdelta {

// One per boundary suffix j in [0, r). rem(j) is suffix j + 1.
struct LeafRecord {
    std::uint32_t suffix = 0;
    NodeId node = kNoNode;
    std::uint32_t symbol = 0;
    std::uint64_t exponent = 0;
    std::uint32_t rem_suffix = 0;
    // Depth of b(l): the deepest node on the path to this suffix that is
    // dominated by a node with the same t(.) and a longer first run.
    std::uint64_t b_depth = 0;
};

// For each symbol c, the suffixes whose first run is a c-run, ordered by
// the character-lexicographic order of their rem(.).
struct RemLists {
    std::vector<std::vector<std::uint32_t>> by_symbol;
};

RemLists build_rem_lists(const RSuffixTree& tree);

// b-depths for every boundary suffix, processing each list in increasing
// exponent order and resolving equal-exponent stretches against their
// nearest surviving neighbours with a longer first run.
std::vector<LeafRecord> compute_b_depths(const RSuffixTree& tree, const LcaOracle& oracle, const RemLists& lists,
                                         SortStrategy strategy = SortStrategy::Radix);

enum class DNodeKind { DmnRoot, ExplicitD };

// A D member together with the depths that bound its k-interval [t_len, d].
struct DNodeAttr {
    DNodeKind kind = DNodeKind::ExplicitD;
    // For explicit nodes the node itself; for roots the explicit node at the
    // lower end of the edge holding the root (the root itself when explicit).
    NodeId node = kNoNode;
    std::uint64_t d = 0;
    std::uint64_t t_len = 0;
    std::uint32_t h = 0;  // real children; explicit nodes only
};

std::vector<DNodeAttr> collect_dmn_roots(const RSuffixTree& tree, const std::vector<LeafRecord>& leaves);
std::vector<DNodeAttr> collect_explicit_d_nodes(const RSuffixTree& tree, const std::vector<LeafRecord>& leaves);

}  // namespace rdelta

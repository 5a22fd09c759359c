#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rdelta/intsort.hpp"
#include "rdelta/rle.hpp"

namespace rdelta {

// The text with every run replaced by its rank among the distinct
// (symbol, exponent) pairs, terminated by the sentinel rank 0.
struct MetaString {
    std::vector<std::uint32_t> w;  // r + 1 entries, w[r] == 0
    std::vector<Run> rank_table;   // rank -> run; rank_table[0] is the sentinel placeholder

    std::uint32_t alphabet() const noexcept { return static_cast<std::uint32_t>(rank_table.size()); }
};

MetaString build_meta_string(const RleString& rle, SortStrategy strategy = SortStrategy::Radix);

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kNoSuffix = std::numeric_limits<std::uint32_t>::max();

// Suffix tree of the meta string, built from its suffix array and LCP array.
// Depths count meta characters, the sentinel included.
struct MetaSuffixTree {
    struct Node {
        std::uint32_t depth = 0;
        std::uint32_t rep = 0;  // leftmost suffix in the subtree
        std::uint32_t suffix = kNoSuffix;  // set on leaves only
        std::vector<NodeId> children;  // meta-rank order
    };
    std::vector<Node> nodes;  // nodes[0] is the root
};

MetaSuffixTree build_meta_suffix_tree(const MetaString& meta);

// Where an edge label lives in the RLE: it begins `run_offset` runs after
// boundary suffix `suffix` (1-based), with `head_exponent` characters of
// that first run remaining, and spans `length` characters.
struct EdgeLabel {
    std::uint32_t suffix = 0;
    std::uint32_t run_offset = 0;
    std::uint64_t head_exponent = 0;
    std::uint64_t length = 0;
};

// Compacted trie of the suffixes of T that start at run boundaries.
//
// Boundary suffixes are identified by 0-based run index j in [0, r]; suffix r
// is the empty suffix and sits at the root. A suffix that is a proper prefix
// of another ends at an internal node instead of at a sentinel leaf, so every
// node's children are real characters only.
class RSuffixTree {
public:
    struct Node {
        NodeId parent = kNoNode;
        std::vector<NodeId> children;  // ordered by first character
        std::uint64_t depth = 0;       // characters
        std::uint32_t first_symbol = 0;
        std::uint64_t first_exponent = 0;  // exponent of the first maximal run of str(v)
        // str(v) is the prefix of boundary suffix `rep` that ends `end_skip`
        // characters into run rep + end_run. Valid for every suffix below v.
        std::uint32_t rep = 0;
        std::uint32_t end_run = 0;
        std::uint64_t end_skip = 0;
        std::uint32_t suffix = kNoSuffix;  // boundary suffix spelled exactly by str(v)
        bool chain = false;                // introduced by run-prefix normalization
    };

    const RleString& text() const noexcept { return *rle_; }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    const Node& node(NodeId id) const { return nodes_[id]; }
    std::size_t size() const noexcept { return nodes_.size(); }
    NodeId root() const noexcept { return 0; }

    // Node whose string is boundary suffix j; suffix r maps to the root.
    NodeId suffix_node(std::size_t j) const { return suffix_nodes_[j]; }

    // Boundary suffixes in character-lexicographic order, the empty one first.
    std::vector<std::uint32_t> suffixes_in_lex_order() const;

    EdgeLabel edge_label(NodeId id) const;
    // First character (symbol rank) of the edge entering `id`.
    std::uint32_t edge_symbol(NodeId id) const;
    // Expanded edge label, for tests and debugging only.
    std::vector<std::uint32_t> edge_text(NodeId id) const;

    std::string to_dot() const;

private:
    friend RSuffixTree normalize_run_prefixes(const MetaSuffixTree&, const MetaString&, const RleString&);

    std::vector<Node> nodes_;
    std::vector<NodeId> suffix_nodes_;
    const RleString* rle_ = nullptr;
};

// Merges sibling edges whose first runs share a symbol into chains of run
// prefixes, turning the meta suffix tree into the character-level tree.
// The returned tree refers to `rle`, which must outlive it.
RSuffixTree normalize_run_prefixes(const MetaSuffixTree& meta_tree, const MetaString& meta, const RleString& rle);

RSuffixTree build_rsuffix_tree(const RleString& rle, SortStrategy strategy = SortStrategy::Radix);

}  // namespace rdelta

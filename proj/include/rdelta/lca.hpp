#pragma once

#include <cstdint>
#include <vector>

#include "rdelta/rstree.hpp"

namespace rdelta {

// O(m lg m) words, O(1) query.
class SparseTableRmq {
public:
    SparseTableRmq() = default;
    explicit SparseTableRmq(std::vector<std::uint32_t> values);

    // Position of the leftmost minimum in [begin, end], inclusive.
    std::size_t arg_min(std::size_t begin, std::size_t end) const;

private:
    std::vector<std::uint32_t> values_;
    std::vector<std::vector<std::uint32_t>> table_;  // table_[k][i] = argmin of [i, i + 2^k)
};

// Blocks of ~lg m values with a sparse table over block minima: O(m) words,
// O(lg m) query from the in-block scans.
class BlockRmq {
public:
    BlockRmq() = default;
    explicit BlockRmq(std::vector<std::uint32_t> values);

    std::size_t arg_min(std::size_t begin, std::size_t end) const;

private:
    std::size_t scan(std::size_t begin, std::size_t end) const;

    std::vector<std::uint32_t> values_;
    std::size_t block_ = 1;
    std::vector<std::uint32_t> block_arg_;  // argmin position per block
    SparseTableRmq over_blocks_;
};

enum class RmqKind { SparseTable, Block };

// Lowest common ancestors over an RSuffixTree via an Euler tour, and the
// character LCP of two boundary suffixes as the depth of their leaves' LCA.
class LcaOracle {
public:
    explicit LcaOracle(const RSuffixTree& tree, RmqKind kind = RmqKind::SparseTable);

    NodeId lca(NodeId a, NodeId b) const;

    // Suffix indices are 0-based run indices in [0, r]; r is the empty suffix.
    std::uint64_t lcp_suffixes(std::size_t a, std::size_t b) const {
        return tree_->node(lca(tree_->suffix_node(a), tree_->suffix_node(b))).depth;
    }

private:
    const RSuffixTree* tree_;
    RmqKind kind_;
    std::vector<NodeId> tour_;
    std::vector<std::uint32_t> first_;
    SparseTableRmq sparse_;
    BlockRmq block_;
};

}  // namespace rdelta

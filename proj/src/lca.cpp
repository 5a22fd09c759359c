#include "rdelta/lca.hpp"

#include <bit>

namespace rdelta {

SparseTableRmq::SparseTableRmq(std::vector<std::uint32_t> values) : values_(std::move(values)) {
    const std::size_t m = values_.size();
    if (m == 0) return;
    table_.emplace_back(m);
    for (std::size_t i = 0; i < m; ++i) table_[0][i] = static_cast<std::uint32_t>(i);
    for (std::size_t width = 2; width <= m; width *= 2) {
        const auto& prev = table_.back();
        std::vector<std::uint32_t> row(m - width + 1);
        const std::size_t half = width / 2;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::uint32_t left = prev[i];
            std::uint32_t right = prev[i + half];
            row[i] = values_[right] < values_[left] ? right : left;
        }
        table_.push_back(std::move(row));
    }
}

std::size_t SparseTableRmq::arg_min(std::size_t begin, std::size_t end) const {
    const std::size_t width = end - begin + 1;
    const auto level = static_cast<std::size_t>(std::bit_width(width) - 1);
    std::uint32_t left = table_[level][begin];
    std::uint32_t right = table_[level][end + 1 - (std::size_t{1} << level)];
    return values_[right] < values_[left] ? right : left;
}

BlockRmq::BlockRmq(std::vector<std::uint32_t> values) : values_(std::move(values)) {
    const std::size_t m = values_.size();
    block_ = std::max<std::size_t>(1, std::bit_width(m));
    std::vector<std::uint32_t> minima;
    for (std::size_t start = 0; start < m; start += block_) {
        std::size_t best = scan(start, std::min(m, start + block_) - 1);
        block_arg_.push_back(static_cast<std::uint32_t>(best));
        minima.push_back(values_[best]);
    }
    over_blocks_ = SparseTableRmq(std::move(minima));
}

std::size_t BlockRmq::scan(std::size_t begin, std::size_t end) const {
    std::size_t best = begin;
    for (std::size_t i = begin + 1; i <= end; ++i) {
        if (values_[i] < values_[best]) best = i;
    }
    return best;
}

std::size_t BlockRmq::arg_min(std::size_t begin, std::size_t end) const {
    const std::size_t first_block = begin / block_;
    const std::size_t last_block = end / block_;
    if (first_block == last_block) return scan(begin, end);
    std::size_t best = scan(begin, (first_block + 1) * block_ - 1);
    if (first_block + 1 < last_block) {
        std::size_t mid = block_arg_[over_blocks_.arg_min(first_block + 1, last_block - 1)];
        if (values_[mid] < values_[best]) best = mid;
    }
    std::size_t tail = scan(last_block * block_, end);
    if (values_[tail] < values_[best]) best = tail;
    return best;
}

LcaOracle::LcaOracle(const RSuffixTree& tree, RmqKind kind) : tree_(&tree), kind_(kind) {
    const std::size_t count = tree.size();
    first_.assign(count, 0);
    tour_.reserve(2 * count);
    std::vector<std::uint32_t> levels;
    levels.reserve(2 * count);

    // Iterative DFS; each frame remembers the next child to descend into.
    std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
    first_[tree.root()] = 0;
    tour_.push_back(tree.root());
    levels.push_back(0);
    while (!stack.empty()) {
        auto& [id, next] = stack.back();
        const auto& children = tree.node(id).children;
        if (next < children.size()) {
            NodeId child = children[next++];
            first_[child] = static_cast<std::uint32_t>(tour_.size());
            tour_.push_back(child);
            levels.push_back(static_cast<std::uint32_t>(stack.size()));
            stack.emplace_back(child, 0);
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                tour_.push_back(stack.back().first);
                levels.push_back(static_cast<std::uint32_t>(stack.size() - 1));
            }
        }
    }
    if (kind_ == RmqKind::SparseTable) {
        sparse_ = SparseTableRmq(std::move(levels));
    } else {
        block_ = BlockRmq(std::move(levels));
    }
}

NodeId LcaOracle::lca(NodeId a, NodeId b) const {
    std::size_t lo = first_[a];
    std::size_t hi = first_[b];
    if (lo > hi) std::swap(lo, hi);
    std::size_t pos = kind_ == RmqKind::SparseTable ? sparse_.arg_min(lo, hi) : block_.arg_min(lo, hi);
    return tour_[pos];
}

}  // namespace rdelta

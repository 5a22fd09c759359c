#include "rdelta/dmn.hpp"

#include <algorithm>

#include "rdelta/error.hpp"

namespace rdelta {

RemLists build_rem_lists(const RSuffixTree& tree) {
    const RleString& rle = tree.text();
    RemLists lists;
    lists.by_symbol.resize(rle.sigma());
    // Scanning suffixes in lex order visits rem(j - 1) = suffix j in order.
    for (std::uint32_t j : tree.suffixes_in_lex_order()) {
        if (j == 0) continue;
        lists.by_symbol[rle.run(j - 1).symbol].push_back(j - 1);
    }
    return lists;
}

std::vector<LeafRecord> compute_b_depths(const RSuffixTree& tree, const LcaOracle& oracle, const RemLists& lists,
                                         SortStrategy strategy) {
    const RleString& rle = tree.text();
    const std::size_t r = rle.r();
    std::vector<LeafRecord> leaves(r);
    for (std::uint32_t j = 0; j < r; ++j) {
        LeafRecord& leaf = leaves[j];
        leaf.suffix = j;
        leaf.node = tree.suffix_node(j);
        leaf.symbol = rle.run(j).symbol;
        leaf.exponent = rle.run(j).exponent;
        leaf.rem_suffix = j + 1;
    }

    // Doubly linked lists over suffix indices; kNoSuffix terminates.
    std::vector<std::uint32_t> prev(r, kNoSuffix);
    std::vector<std::uint32_t> next(r, kNoSuffix);
    std::vector<bool> removed(r, false);
    for (const auto& list : lists.by_symbol) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0) prev[list[i]] = list[i - 1];
            if (i + 1 < list.size()) next[list[i]] = list[i + 1];
        }
    }
    auto unlink = [&](std::uint32_t j) {
        if (prev[j] != kNoSuffix) next[prev[j]] = next[j];
        if (next[j] != kNoSuffix) prev[next[j]] = prev[j];
        removed[j] = true;
    };

    // Lists are independent, so one global (symbol, exponent) order serves all.
    std::vector<KeyedItem> order;
    order.reserve(r);
    for (std::uint32_t j = 0; j < r; ++j) order.push_back({leaves[j].symbol, leaves[j].exponent, j});
    order = sort_by_key(std::move(order), strategy);

    for (const KeyedItem& item : order) {
        const std::uint32_t l = item.payload;
        if (removed[l]) continue;
        const std::uint64_t e = leaves[l].exponent;
        std::uint32_t first = l;
        std::uint32_t p = prev[l];
        while (p != kNoSuffix && leaves[p].exponent <= e) {
            first = p;
            p = prev[p];
        }
        std::uint32_t s = next[l];
        while (s != kNoSuffix && leaves[s].exponent <= e) s = next[s];

        std::uint32_t cur = first;
        while (cur != s) {
            // Earlier rounds removed every shorter run, so `cur` has exponent e.
            const std::uint32_t after = next[cur];
            LeafRecord& leaf = leaves[cur];
            if (p == kNoSuffix && s == kNoSuffix) {
                leaf.b_depth = e - 1;
            } else {
                std::uint64_t best = 0;
                if (p != kNoSuffix) best = std::max(best, oracle.lcp_suffixes(cur + 1, p + 1));
                if (s != kNoSuffix) best = std::max(best, oracle.lcp_suffixes(cur + 1, s + 1));
                leaf.b_depth = e + best;
            }
            unlink(cur);
            cur = after;
        }
    }
    return leaves;
}

std::vector<DNodeAttr> collect_dmn_roots(const RSuffixTree& tree, const std::vector<LeafRecord>& leaves) {
    std::vector<DNodeAttr> roots;
    std::vector<std::uint64_t> root_depth(tree.size(), 0);
    std::vector<NodeId> path;
    std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
    path.push_back(tree.root());
    while (!stack.empty()) {
        auto& [id, next] = stack.back();
        const auto& node = tree.node(id);
        if (next == 0 && node.suffix != kNoSuffix && node.suffix < leaves.size()) {
            const LeafRecord& leaf = leaves[node.suffix];
            if (leaf.b_depth < node.depth) {
                const std::uint64_t target = leaf.b_depth + 1;
                // Path depths increase strictly, so binary search finds the edge.
                auto it = std::lower_bound(path.begin(), path.end(), target, [&](NodeId v, std::uint64_t d) {
                    return tree.node(v).depth < d;
                });
                const NodeId below = *it;
                if (root_depth[below] == 0) {
                    root_depth[below] = target;
                    DNodeAttr attr;
                    attr.kind = DNodeKind::DmnRoot;
                    attr.node = below;
                    attr.d = target;
                    attr.t_len = target - std::min(target, leaf.exponent) + 1;
                    roots.push_back(attr);
                } else if (root_depth[below] != target) {
                    throw InvariantViolation("suffixes disagree on the DMN-root of a shared edge");
                }
            }
        }
        if (next < node.children.size()) {
            NodeId child = node.children[next++];
            path.push_back(child);
            stack.emplace_back(child, 0);
        } else {
            stack.pop_back();
            path.pop_back();
        }
    }
    return roots;
}

std::vector<DNodeAttr> collect_explicit_d_nodes(const RSuffixTree& tree, const std::vector<LeafRecord>& leaves) {
    std::vector<DNodeAttr> out;
    for (NodeId id = 1; id < tree.size(); ++id) {
        const auto& node = tree.node(id);
        // Membership in D does not depend on which suffix below is asked.
        if (node.depth <= leaves[node.rep].b_depth) continue;
        DNodeAttr attr;
        attr.kind = DNodeKind::ExplicitD;
        attr.node = id;
        attr.d = node.depth;
        attr.t_len = node.depth - node.first_exponent + 1;
        attr.h = static_cast<std::uint32_t>(node.children.size());
        out.push_back(attr);
    }
    return out;
}

}  // namespace rdelta

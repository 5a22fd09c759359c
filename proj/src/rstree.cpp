#include "rdelta/rstree.hpp"

#include <algorithm>
#include <sstream>

#include "rdelta/error.hpp"
#include "rdelta/suffix_array.hpp"

namespace rdelta {

MetaString build_meta_string(const RleString& rle, SortStrategy strategy) {
    std::vector<KeyedItem> items;
    items.reserve(rle.r());
    for (std::size_t j = 0; j < rle.r(); ++j) {
        const Run& run = rle.run(j);
        items.push_back({run.symbol, run.exponent, static_cast<std::uint32_t>(j)});
    }
    items = sort_by_key(std::move(items), strategy);

    MetaString meta;
    meta.w.assign(rle.r() + 1, 0);
    meta.rank_table.push_back({});
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i == 0 || items[i].hi != items[i - 1].hi || items[i].lo != items[i - 1].lo) {
            meta.rank_table.push_back(rle.run(items[i].payload));
        }
        meta.w[items[i].payload] = static_cast<std::uint32_t>(meta.rank_table.size() - 1);
    }
    return meta;
}

MetaSuffixTree build_meta_suffix_tree(const MetaString& meta) {
    const auto sa = suffix_array_sais(meta.w, meta.alphabet());
    const auto lcp = lcp_array(meta.w, sa);
    const auto total = static_cast<std::uint32_t>(meta.w.size());

    MetaSuffixTree tree;
    tree.nodes.reserve(2 * sa.size());
    tree.nodes.push_back({});
    tree.nodes[0].rep = static_cast<std::uint32_t>(sa[0]);

    // Standard bottom-up construction: the stack holds the rightmost path.
    std::vector<NodeId> stack{0};
    auto attach = [&](NodeId child, NodeId parent) { tree.nodes[parent].children.push_back(child); };
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const auto shared = static_cast<std::uint32_t>(lcp[i]);
        while (tree.nodes[stack.back()].depth > shared) {
            NodeId last = stack.back();
            stack.pop_back();
            if (tree.nodes[stack.back()].depth >= shared) {
                attach(last, stack.back());
            } else {
                auto split = static_cast<NodeId>(tree.nodes.size());
                tree.nodes.push_back({shared, tree.nodes[last].rep, kNoSuffix, {}});
                attach(last, split);
                stack.push_back(split);
            }
        }
        const auto suffix = static_cast<std::uint32_t>(sa[i]);
        auto leaf = static_cast<NodeId>(tree.nodes.size());
        tree.nodes.push_back({total - suffix, suffix, suffix, {}});
        stack.push_back(leaf);
    }
    while (stack.size() > 1) {
        NodeId last = stack.back();
        stack.pop_back();
        attach(last, stack.back());
    }
    return tree;
}

namespace {

// Position right after `chars` characters consumed from boundary suffix `rep`,
// expressed as (absolute run, characters already consumed in that run).
struct RunCursor {
    std::size_t run;
    std::uint64_t skip;
};

RunCursor normalized_cursor(const RleString& rle, std::size_t run, std::uint64_t skip) {
    if (run < rle.r() && skip == rle.run(run).exponent) return {run + 1, 0};
    return {run, skip};
}

std::uint64_t prefix_length(const RleString& rle, std::size_t run) {
    return run < rle.r() ? rle.boundary(run) - 1 : rle.n();
}

}  // namespace

RSuffixTree normalize_run_prefixes(const MetaSuffixTree& meta_tree, const MetaString& meta, const RleString& rle) {
    const auto r = static_cast<std::uint32_t>(rle.r());
    RSuffixTree tree;
    tree.rle_ = &rle;
    tree.suffix_nodes_.assign(r + 1, kNoNode);
    tree.nodes_.reserve(meta_tree.nodes.size() + meta_tree.nodes.size() / 2 + 1);

    auto new_node = [&](NodeId parent, std::uint32_t rep, std::uint32_t end_run, std::uint64_t end_skip, bool chain) {
        auto id = static_cast<NodeId>(tree.nodes_.size());
        RSuffixTree::Node node;
        node.parent = parent;
        node.rep = rep;
        node.end_run = end_run;
        node.end_skip = end_skip;
        node.chain = chain;
        tree.nodes_.push_back(std::move(node));
        if (parent != kNoNode) tree.nodes_[parent].children.push_back(id);
        return id;
    };
    auto mark_suffix = [&](NodeId id, std::uint32_t suffix) {
        if (tree.nodes_[id].suffix != kNoSuffix) {
            throw InvariantViolation("two boundary suffixes end at the same node");
        }
        tree.nodes_[id].suffix = suffix;
        tree.suffix_nodes_[suffix] = id;
    };
    // Depth in meta characters of a meta node, sentinel excluded.
    auto real_depth = [&](const MetaSuffixTree::Node& u) {
        return u.suffix != kNoSuffix ? u.depth - 1 : u.depth;
    };

    struct Pending {
        NodeId meta_node;
        NodeId parent;      // char-tree parent
        std::uint32_t parent_meta_depth;
        NodeId preassigned;  // char node already standing for this meta node
    };

    tree.nodes_.push_back({});
    tree.nodes_[0].rep = meta_tree.nodes[0].rep;
    std::vector<Pending> work;
    work.push_back({0, kNoNode, 0, 0});

    while (!work.empty()) {
        Pending item = work.back();
        work.pop_back();
        const MetaSuffixTree::Node& u = meta_tree.nodes[item.meta_node];

        if (item.meta_node != 0 && item.preassigned == kNoNode && real_depth(u) == item.parent_meta_depth) {
            // Edge is the sentinel alone: the suffix ends at the parent.
            mark_suffix(item.parent, u.suffix);
            continue;
        }
        NodeId id = item.preassigned != kNoNode ? item.preassigned
                                                 : new_node(item.parent, u.rep, real_depth(u), 0, false);
        if (u.suffix != kNoSuffix) {
            mark_suffix(id, u.suffix);
            continue;
        }

        // Children are in meta-rank order, so those sharing a first symbol
        // are contiguous and sorted by exponent.
        const auto& kids = u.children;
        std::size_t i = 0;
        while (i < kids.size()) {
            const MetaSuffixTree::Node& first = meta_tree.nodes[kids[i]];
            const std::uint32_t head = meta.w[first.rep + u.depth];
            if (head == 0) {
                work.push_back({kids[i], id, u.depth, kNoNode});
                ++i;
                continue;
            }
            const std::uint32_t symbol = meta.rank_table[head].symbol;
            std::size_t end = i + 1;
            while (end < kids.size()) {
                const std::uint32_t h = meta.w[meta_tree.nodes[kids[end]].rep + u.depth];
                if (h == 0 || meta.rank_table[h].symbol != symbol) break;
                ++end;
            }
            if (end - i == 1) {
                work.push_back({kids[i], id, u.depth, kNoNode});
                i = end;
                continue;
            }
            // Chain c^{e_1} -> c^{e_2} -> ... with each shorter run's branch
            // hanging off its chain node.
            NodeId prev = id;
            std::uint64_t prev_exp = 0;
            for (std::size_t t = i; t < end; ++t) {
                const MetaSuffixTree::Node& child = meta_tree.nodes[kids[t]];
                const std::uint64_t exp = meta.rank_table[meta.w[child.rep + u.depth]].exponent;
                if (exp <= prev_exp) {
                    throw InvariantViolation("sibling edges share a full first run");
                }
                prev_exp = exp;
                if (t + 1 == end) {
                    work.push_back({kids[t], prev, u.depth, kNoNode});
                    break;
                }
                NodeId chain = new_node(prev, child.rep, u.depth, exp, true);
                if (real_depth(child) == u.depth + 1) {
                    work.push_back({kids[t], kNoNode, u.depth, chain});
                } else {
                    work.push_back({kids[t], chain, u.depth, kNoNode});
                }
                prev = chain;
            }
            i = end;
        }
    }

    for (std::uint32_t j = 0; j <= r; ++j) {
        if (tree.suffix_nodes_[j] == kNoNode) throw InvariantViolation("boundary suffix without a node");
    }

    // A meta node whose children all shared one first symbol now has a single
    // child; unless a suffix ends there it is not a node of the compacted trie.
    {
        const std::size_t count = tree.nodes_.size();
        std::vector<NodeId> remap(count, kNoNode);
        std::vector<RSuffixTree::Node> kept;
        kept.reserve(count);
        // Parents precede children in creation order.
        for (NodeId id = 0; id < count; ++id) {
            const auto& node = tree.nodes_[id];
            const bool splice = id != 0 && node.children.size() == 1 && node.suffix == kNoSuffix;
            NodeId parent = node.parent;
            while (parent != kNoNode && remap[parent] == kNoNode) parent = tree.nodes_[parent].parent;
            if (splice) continue;
            remap[id] = static_cast<NodeId>(kept.size());
            kept.push_back(node);
            kept.back().children.clear();
            kept.back().parent = parent == kNoNode ? kNoNode : remap[parent];
            if (parent != kNoNode) kept[remap[parent]].children.push_back(remap[id]);
        }
        tree.nodes_ = std::move(kept);
        for (auto& id : tree.suffix_nodes_) id = remap[id];
    }

    // Depths and first-run metadata.
    for (NodeId id = 1; id < tree.nodes_.size(); ++id) {
        auto& node = tree.nodes_[id];
        node.depth = prefix_length(rle, node.rep + node.end_run) - prefix_length(rle, node.rep) + node.end_skip;
        node.first_symbol = rle.run(node.rep).symbol;
        node.first_exponent = std::min(node.depth, rle.run(node.rep).exponent);
    }
    for (NodeId id = 1; id < tree.nodes_.size(); ++id) {
        const auto& node = tree.nodes_[id];
        if (node.depth <= tree.nodes_[node.parent].depth) {
            throw InvariantViolation("child not deeper than parent");
        }
    }
    for (auto& node : tree.nodes_) {
        std::vector<std::pair<std::uint32_t, NodeId>> keyed;
        keyed.reserve(node.children.size());
        for (NodeId c : node.children) keyed.emplace_back(tree.edge_symbol(c), c);
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t k = 0; k < keyed.size(); ++k) {
            if (k > 0 && keyed[k].first == keyed[k - 1].first) {
                throw InvariantViolation("siblings share a first character after normalization");
            }
            node.children[k] = keyed[k].second;
        }
    }
    return tree;
}

RSuffixTree build_rsuffix_tree(const RleString& rle, SortStrategy strategy) {
    const MetaString meta = build_meta_string(rle, strategy);
    const MetaSuffixTree meta_tree = build_meta_suffix_tree(meta);
    return normalize_run_prefixes(meta_tree, meta, rle);
}

std::vector<std::uint32_t> RSuffixTree::suffixes_in_lex_order() const {
    std::vector<std::uint32_t> order;
    order.reserve(suffix_nodes_.size());
    std::vector<NodeId> stack{root()};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        const Node& node = nodes_[id];
        // A suffix ending here is a prefix of everything below, hence smaller.
        if (node.suffix != kNoSuffix) order.push_back(node.suffix);
        for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

EdgeLabel RSuffixTree::edge_label(NodeId id) const {
    const Node& node = nodes_[id];
    if (node.parent == kNoNode) return {node.rep + 1, 0, 0, 0};
    const Node& parent = nodes_[node.parent];
    RunCursor at = normalized_cursor(*rle_, node.rep + parent.end_run, parent.end_skip);
    EdgeLabel label;
    label.suffix = node.rep + 1;
    label.run_offset = static_cast<std::uint32_t>(at.run - node.rep);
    label.head_exponent = rle_->run(at.run).exponent - at.skip;
    label.length = node.depth - parent.depth;
    return label;
}

std::uint32_t RSuffixTree::edge_symbol(NodeId id) const {
    const Node& node = nodes_[id];
    const Node& parent = nodes_[node.parent];
    RunCursor at = normalized_cursor(*rle_, node.rep + parent.end_run, parent.end_skip);
    return rle_->run(at.run).symbol;
}

std::vector<std::uint32_t> RSuffixTree::edge_text(NodeId id) const {
    std::vector<std::uint32_t> out;
    if (id == root()) return out;
    EdgeLabel label = edge_label(id);
    std::size_t run = label.suffix - 1 + label.run_offset;
    std::uint64_t avail = label.head_exponent;
    std::uint64_t left = label.length;
    while (left > 0) {
        std::uint64_t take = std::min(avail, left);
        out.insert(out.end(), take, rle_->run(run).symbol);
        left -= take;
        ++run;
        if (run < rle_->r()) avail = rle_->run(run).exponent;
    }
    return out;
}

std::string RSuffixTree::to_dot() const {
    std::ostringstream os;
    os << "digraph rsuffix_tree {\n  node [shape=box, fontname=monospace];\n";
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        const Node& node = nodes_[id];
        os << "  n" << id << " [label=\"d=" << node.depth;
        if (id != root()) {
            os << "\\nfirst=(" << rle_->external_symbol(node.first_symbol) << "," << node.first_exponent << ")";
        }
        if (node.suffix != kNoSuffix) os << "\\nsuffix=" << node.suffix + 1;
        os << "\\n" << (node.chain ? "chain" : "explicit") << "\"";
        if (node.children.empty()) os << ", style=rounded";
        os << "];\n";
    }
    for (NodeId id = 1; id < nodes_.size(); ++id) {
        const Node& node = nodes_[id];
        EdgeLabel label = edge_label(id);
        os << "  n" << node.parent << " -> n" << id << " [label=\"" << rle_->external_symbol(edge_symbol(id))
           << " len=" << label.length << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace rdelta

#include <doctest.h>

#include <random>

#include "rdelta/rstree.hpp"
#include "support/brute.hpp"

using namespace rdelta;

namespace {

RleString text(std::string_view s) { return encode(s); }

brute::Str spell(const RSuffixTree& tree, NodeId id) {
    brute::Str out;
    std::vector<NodeId> path;
    for (NodeId v = id; v != tree.root(); v = tree.node(v).parent) path.push_back(v);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        for (std::uint32_t c : tree.edge_text(*it)) out.push_back(c);
    }
    return out;
}

RleString random_rle(std::mt19937_64& rng, std::uint32_t sigma, std::size_t max_runs, std::uint64_t max_exp) {
    std::uniform_int_distribution<std::size_t> runs(1, max_runs);
    RandomRunsParams p;
    p.runs = runs(rng);
    p.sigma = sigma;
    p.min_exponent = 1;
    p.max_exponent = max_exp;
    p.seed = rng();
    return random_runs(p);
}

// Every structural property that can be checked against the expanded text.
void check_tree(const RleString& rle) {
    const RSuffixTree tree = build_rsuffix_tree(rle);
    const brute::Text bt(rle);
    const brute::Trie trie(bt);
    REQUIRE(tree.size() <= 4 * rle.r() + 4);
    CHECK(tree.node(tree.root()).depth == 0);
    CHECK(tree.suffix_node(rle.r()) == tree.root());

    for (std::size_t j = 0; j < rle.r(); ++j) {
        const NodeId v = tree.suffix_node(j);
        CHECK(tree.node(v).suffix == j);
        CHECK(spell(tree, v) == bt.boundary_prefix(j, bt.suffix_len(j)));
    }
    CHECK(tree.suffixes_in_lex_order() == brute::lex_sorted_suffixes(bt));

    for (NodeId id = 1; id < tree.size(); ++id) {
        const auto& node = tree.node(id);
        const brute::Str s = spell(tree, id);
        REQUIRE(s.size() == node.depth);
        CHECK(trie.has(s));
        CHECK(node.first_symbol == s[0]);
        CHECK(node.first_exponent == brute::first_run_len(s));
        // Compacted: a non-root node either branches or ends a suffix.
        CHECK((node.children.empty() || node.children.size() >= 2 || node.suffix != kNoSuffix));
        CHECK(trie.children(s).size() == node.children.size());
        for (std::size_t k = 1; k < node.children.size(); ++k) {
            CHECK(tree.edge_symbol(node.children[k - 1]) < tree.edge_symbol(node.children[k]));
        }
    }
    // And every branching trie node is explicit.
    std::set<brute::Str> explicit_strings;
    for (NodeId id = 1; id < tree.size(); ++id) explicit_strings.insert(spell(tree, id));
    for (const auto& s : trie.nodes) {
        if (trie.children(s).size() >= 2) CHECK(explicit_strings.count(s) == 1);
    }
}

}  // namespace

TEST_SUITE("rstree") {
    TEST_CASE("meta string ranks runs by symbol then exponent") {
        const RleString t1 = text("aabbbaabb");
        CHECK(build_meta_string(t1).w == std::vector<std::uint32_t>{1, 3, 1, 2, 0});
        CHECK(build_meta_string(text("aaaaa")).w == std::vector<std::uint32_t>{1, 0});
        const RleString t2 = text("aabbbaabbaaa");
        const MetaString m = build_meta_string(t2);
        CHECK(m.w == std::vector<std::uint32_t>{1, 4, 1, 3, 2, 0});
        CHECK(m.alphabet() == 5);
        CHECK(build_meta_string(t2, SortStrategy::Comparison).w == m.w);
    }

    TEST_CASE("running example shape") {
        const RleString rle = text("aabbbaabbaaa");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        std::multiset<std::uint64_t> internal;
        std::vector<std::uint64_t> leaf_depths;
        for (NodeId id = 1; id < tree.size(); ++id) {
            if (!tree.node(id).children.empty()) internal.insert(tree.node(id).depth);
        }
        for (std::size_t j = 0; j < rle.r(); ++j) leaf_depths.push_back(tree.node(tree.suffix_node(j)).depth);
        CHECK(internal == std::multiset<std::uint64_t>{2, 2, 4});
        CHECK(leaf_depths == std::vector<std::uint64_t>{12, 10, 7, 5, 3});
        CHECK(tree.size() == 9);
        // aa and bb are chain nodes with the longer run below them.
        const auto& root = tree.node(tree.root());
        REQUIRE(root.children.size() == 2);
        for (NodeId c : root.children) {
            CHECK(tree.node(c).depth == 2);
            CHECK(tree.node(c).chain);
        }
        check_tree(rle);
    }

    TEST_CASE("three equal-symbol siblings become one chain") {
        const RleString rle = text("baaabaaaaabaaaaaaab");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        std::vector<std::uint64_t> chain_depths;
        NodeId v = tree.root();
        for (NodeId c : tree.node(v).children) {
            if (tree.node(c).first_symbol == rle.run(1).symbol) v = c;
        }
        while (v != tree.root() && tree.node(v).chain) {
            chain_depths.push_back(tree.node(v).depth);
            NodeId next = tree.root();
            for (NodeId c : tree.node(v).children) {
                if (tree.edge_symbol(c) == rle.run(1).symbol) next = c;
            }
            v = next;
        }
        CHECK(chain_depths == std::vector<std::uint64_t>{3, 5});
        check_tree(rle);
    }

    TEST_CASE("single run is a single leaf") {
        const RleString rle = text("aaaaaaa");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        CHECK(tree.size() == 2);
        CHECK(tree.node(1).depth == 7);
        CHECK(tree.node(1).first_exponent == 7);
    }

    TEST_CASE("meta node whose children share a symbol is spliced out") {
        const RleString rle = text("baacbaaac");
        check_tree(rle);
        const RSuffixTree tree = build_rsuffix_tree(rle);
        for (NodeId id = 1; id < tree.size(); ++id) {
            CHECK_FALSE((tree.node(id).depth == 1 && tree.node(id).first_symbol == rle.run(0).symbol));
        }
    }

    TEST_CASE("suffix that prefixes another ends at an internal node") {
        const RleString rle = text("abab");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        const NodeId ab = tree.suffix_node(2);
        CHECK(tree.node(ab).depth == 2);
        CHECK(tree.node(ab).children.size() == 1);
        CHECK(tree.suffixes_in_lex_order() == std::vector<std::uint32_t>{4, 2, 0, 3, 1});
        check_tree(rle);
    }

    TEST_CASE("huge exponents stay compressed") {
        const std::uint64_t big = std::uint64_t{1} << 50;
        const RawRun raw[] = {{'a', big}, {'b', big}, {'a', big - 1}, {'b', 3}};
        const RleString rle = RleString::from_runs(raw);
        const RSuffixTree tree = build_rsuffix_tree(rle);
        CHECK(tree.node(tree.suffix_node(0)).depth == 3 * big + 2);
        CHECK(tree.size() <= 4 * rle.r() + 4);
        const EdgeLabel label = tree.edge_label(tree.suffix_node(0));
        CHECK(label.suffix == 1);
    }

    TEST_CASE("random texts match the expanded trie") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 400; ++i) {
            const std::uint32_t sigma = 2 + static_cast<std::uint32_t>(i % 3);
            check_tree(random_rle(rng, sigma, 12, 4));
        }
    }

    TEST_CASE("comparison and radix sorting build the same tree") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 100; ++i) {
            const RleString rle = random_rle(rng, 3, 30, 5);
            const RSuffixTree a = build_rsuffix_tree(rle, SortStrategy::Radix);
            const RSuffixTree b = build_rsuffix_tree(rle, SortStrategy::Comparison);
            REQUIRE(a.size() == b.size());
            CHECK(a.suffixes_in_lex_order() == b.suffixes_in_lex_order());
        }
    }
}

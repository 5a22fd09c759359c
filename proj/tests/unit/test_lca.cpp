#include <doctest.h>

#include <random>

#include "rdelta/lca.hpp"
#include "support/brute.hpp"

using namespace rdelta;

namespace {

void check_against_brute(const RleString& rle, RmqKind kind) {
    const RSuffixTree tree = build_rsuffix_tree(rle);
    const LcaOracle oracle(tree, kind);
    const brute::Text bt(rle);
    for (std::size_t a = 0; a <= rle.r(); ++a) {
        for (std::size_t b = 0; b <= rle.r(); ++b) {
            CHECK(oracle.lcp_suffixes(a, b) == brute::lcp(bt, a, b));
        }
    }
}

}  // namespace

TEST_SUITE("lca") {
    TEST_CASE("rmq variants agree with a scan") {
        std::mt19937 rng(3);
        for (std::size_t m : {1u, 2u, 7u, 64u, 333u}) {
            std::vector<std::uint32_t> v(m);
            for (auto& x : v) x = rng() % 10;
            const SparseTableRmq sparse(v);
            const BlockRmq block(v);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = i; j < m; ++j) {
                    const auto expect = static_cast<std::size_t>(std::min_element(v.begin() + i, v.begin() + j + 1) - v.begin());
                    CHECK(sparse.arg_min(i, j) == expect);
                    CHECK(block.arg_min(i, j) == expect);
                }
            }
        }
    }

    TEST_CASE("running example lcps") {
        const RleString rle = encode("aabbbaabbaaa");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        for (RmqKind kind : {RmqKind::SparseTable, RmqKind::Block}) {
            const LcaOracle oracle(tree, kind);
            CHECK(oracle.lcp_suffixes(0, 2) == 4);
            CHECK(oracle.lcp_suffixes(1, 3) == 2);
            CHECK(oracle.lcp_suffixes(0, 4) == 2);
            CHECK(oracle.lcp_suffixes(0, 1) == 0);
            CHECK(oracle.lcp_suffixes(2, 2) == 7);
            CHECK(oracle.lcp_suffixes(0, 5) == 0);
            for (NodeId v = 0; v < tree.size(); ++v) {
                CHECK(oracle.lca(tree.root(), v) == tree.root());
                CHECK(oracle.lca(v, v) == v);
            }
        }
    }

    TEST_CASE("symmetric and ultrametric") {
        const RleString rle = encode("abaababaabaababaababaabaab");
        const RSuffixTree tree = build_rsuffix_tree(rle);
        const LcaOracle oracle(tree, RmqKind::Block);
        const std::size_t m = rle.r() + 1;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = 0; b < m; ++b) {
                CHECK(oracle.lcp_suffixes(a, b) == oracle.lcp_suffixes(b, a));
                for (std::size_t c = 0; c < m; ++c) {
                    CHECK(oracle.lcp_suffixes(a, c) >= std::min(oracle.lcp_suffixes(a, b), oracle.lcp_suffixes(b, c)));
                }
            }
        }
    }

    TEST_CASE("random texts match brute lcp") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 200; ++i) {
            RandomRunsParams p;
            p.runs = 1 + rng() % 25;
            p.sigma = 2 + static_cast<std::uint32_t>(i % 3);
            p.max_exponent = 5;
            p.seed = rng();
            const RleString rle = random_runs(p);
            check_against_brute(rle, RmqKind::SparseTable);
            check_against_brute(rle, RmqKind::Block);
        }
    }
}

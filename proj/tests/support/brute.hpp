#pragma once

// Brute-force references for the compressed pipeline. Everything here works
// on the expanded text and the plain definitions; nothing touches the tree,
// the LCA oracle or the event sweep.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdelta/rle.hpp"

namespace rdelta::brute {

using Str = std::u32string;

struct Text {
    std::vector<std::uint32_t> t;
    std::vector<std::size_t> run_start;  // 0-based
    std::vector<Run> runs;
    // (symbol, exact exponent) -> run indices
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::vector<std::size_t>> by_run;
    std::map<std::uint32_t, std::uint64_t> max_run;
    // block_end[i] = first position after i holding a different character
    std::vector<std::size_t> block_end;

    explicit Text(const RleString& rle) : t(rle.expand()) {
        block_end.assign(t.size(), t.size());
        for (std::size_t i = t.size(); i-- > 0;) {
            block_end[i] = (i + 1 < t.size() && t[i + 1] == t[i]) ? block_end[i + 1] : i + 1;
        }
        for (std::size_t j = 0; j < rle.r(); ++j) {
            run_start.push_back(rle.boundary(j) - 1);
            runs.push_back(rle.run(j));
            by_run[{rle.run(j).symbol, rle.run(j).exponent}].push_back(j);
            auto& m = max_run[rle.run(j).symbol];
            m = std::max(m, rle.run(j).exponent);
        }
    }

    std::size_t n() const { return t.size(); }
    std::size_t r() const { return runs.size(); }

    Str substr(std::size_t pos, std::size_t len) const { return Str(t.begin() + pos, t.begin() + pos + len); }
    Str boundary_prefix(std::size_t j, std::size_t len) const { return substr(run_start[j], len); }
    std::size_t suffix_len(std::size_t j) const { return n() - run_start[j]; }

    // Is c^q . t[p, p + m) a prefix of some boundary suffix?
    bool is_node(std::uint32_t c, std::uint64_t q, std::size_t p, std::size_t m) const {
        // Fold a leading c-run of the tail into q.
        while (m > 0 && t[p] == c) {
            ++q;
            ++p;
            --m;
        }
        if (q == 0) {
            if (m == 0) return true;
            // Starts with the tail's own first run.
            c = t[p];
            while (m > 0 && t[p] == c) {
                ++q;
                ++p;
                --m;
            }
        }
        if (m == 0) {
            auto it = max_run.find(c);
            return it != max_run.end() && it->second >= q;
        }
        auto it = by_run.find({c, q});
        if (it == by_run.end()) return false;
        for (std::size_t j : it->second) {
            std::size_t at = run_start[j] + q;
            if (at + m > n()) continue;
            if (std::equal(t.begin() + p, t.begin() + p + m, t.begin() + at)) return true;
        }
        return false;
    }

    // Node str = boundary_prefix(j, len), decomposed as c^e . x.
    struct NodeView {
        std::uint32_t c;
        std::uint64_t e;     // first run length of str
        std::size_t x_pos;   // x = t[x_pos, x_pos + x_len)
        std::size_t x_len;
        std::uint64_t d;
    };
    NodeView view(std::size_t j, std::uint64_t len) const {
        const std::uint64_t e = std::min<std::uint64_t>(len, runs[j].exponent);
        return {runs[j].symbol, e, run_start[j] + e, static_cast<std::size_t>(len - e), len};
    }

    // v is in D iff no node c^f . x with f > e exists.
    bool in_d(std::size_t j, std::uint64_t len) const {
        if (len == 0) return false;
        const NodeView v = view(j, len);
        const std::uint64_t limit = max_run.at(v.c);
        for (std::uint64_t f = v.e + 1; f <= limit; ++f) {
            if (is_node(v.c, f, v.x_pos, v.x_len)) return false;
        }
        return true;
    }

    // {k : v is the deepest matching node of str_k(v)}, straight from the definitions.
    std::vector<std::uint64_t> valid_ks(std::size_t j, std::uint64_t len) const {
        std::vector<std::uint64_t> ks;
        const std::size_t start = run_start[j];
        for (std::uint64_t k = 1; k <= len; ++k) {
            const std::size_t w_pos = start + (len - k);
            const std::uint32_t w0 = t[w_pos];
            // Matching: str(v) = w0^(len-k) . w.
            const bool matching = w_pos == start || (t[start] == w0 && block_end[start] > w_pos);
            if (!matching) continue;
            bool deepest = true;
            const std::uint64_t limit = max_run.at(w0) + 1;
            for (std::uint64_t jj = len - k + 1; jj <= limit && deepest; ++jj) {
                if (is_node(w0, jj, w_pos, k)) deepest = false;
            }
            if (deepest) ks.push_back(k);
        }
        return ks;
    }
};

inline std::uint64_t first_run_len(const Str& s) {
    std::uint64_t e = 0;
    while (e < s.size() && s[e] == s[0]) ++e;
    return e;
}

// The expanded r-suffix trie as a set of strings, for small n only.
struct Trie {
    std::set<Str> nodes;  // all non-empty prefixes of boundary suffixes
    std::map<std::uint32_t, std::uint64_t> max_run;

    explicit Trie(const Text& text) : max_run(text.max_run) {
        for (std::size_t j = 0; j < text.r(); ++j) {
            for (std::size_t len = 1; len <= text.suffix_len(j); ++len) nodes.insert(text.boundary_prefix(j, len));
        }
    }

    bool has(const Str& s) const { return s.empty() || nodes.count(s) > 0; }

    // No node c^f . x with f > e, where s = c^e . x.
    bool in_d(const Str& s) const {
        if (s.empty()) return false;
        const std::uint64_t e = first_run_len(s);
        const Str x = s.substr(e);
        for (std::uint64_t f = e + 1; f <= max_run.at(s[0]); ++f) {
            if (has(Str(f, s[0]) + x)) return false;
        }
        return true;
    }

    // Number of children; explicit = branching or a suffix end or a leaf.
    std::vector<Str> children(const Str& s) const {
        std::vector<Str> out;
        for (auto it = nodes.upper_bound(s); it != nodes.end() && it->compare(0, s.size(), s) == 0; ++it) {
            if (it->size() == s.size() + 1) out.push_back(*it);
        }
        return out;
    }

    // D members whose parent is not in D.
    std::set<Str> dmn_roots() const {
        std::set<Str> roots;
        for (const Str& s : nodes) {
            if (in_d(s) && !in_d(s.substr(0, s.size() - 1))) roots.insert(s);
        }
        return roots;
    }

    // |D_k| via deepest matching nodes of every distinct length-k substring.
    std::vector<std::uint64_t> d_profile(std::size_t n) const {
        std::vector<std::uint64_t> counts(n, 0);
        for (const Str& s : nodes) {
            if (!in_d(s)) continue;
            const std::uint64_t t_len = s.size() - first_run_len(s) + 1;
            for (std::uint64_t k = t_len; k <= s.size(); ++k) ++counts[k - 1];
        }
        return counts;
    }
};

// Character LCP of two boundary suffixes (j == r is the empty suffix).
inline std::uint64_t lcp(const Text& text, std::size_t a, std::size_t b) {
    const std::size_t pa = a < text.r() ? text.run_start[a] : text.n();
    const std::size_t pb = b < text.r() ? text.run_start[b] : text.n();
    std::uint64_t h = 0;
    while (pa + h < text.n() && pb + h < text.n() && text.t[pa + h] == text.t[pb + h]) ++h;
    return h;
}

// Boundary suffixes sorted by plain string comparison (empty suffix first).
inline std::vector<std::uint32_t> lex_sorted_suffixes(const Text& text) {
    std::vector<std::uint32_t> order(text.r() + 1);
    for (std::uint32_t j = 0; j <= text.r(); ++j) order[j] = j;
    auto suffix = [&](std::uint32_t j) {
        const std::size_t p = j < text.r() ? text.run_start[j] : text.n();
        return Str(text.t.begin() + p, text.t.end());
    };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return suffix(a) < suffix(b); });
    return order;
}

}  // namespace rdelta::brute

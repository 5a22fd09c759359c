#include "rdelta/suffix_array.hpp"

#include <algorithm>

#include "rdelta/error.hpp"

namespace rdelta {

namespace {

using Index = std::int64_t;
constexpr Index kEmpty = -1;

template <typename Sym>
void bucket_bounds(std::span<const Sym> s, std::size_t alphabet, std::vector<Index>& bkt, bool ends) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (Sym c : s) ++bkt[c];
    Index sum = 0;
    for (std::size_t c = 0; c < alphabet; ++c) {
        sum += bkt[c];
        bkt[c] = ends ? sum : sum - bkt[c];
    }
}

template <typename Sym>
void induce(std::span<const Sym> s, std::span<Index> sa, const std::vector<bool>& stype,
            std::size_t alphabet, std::vector<Index>& bkt) {
    const Index n = static_cast<Index>(s.size());
    bucket_bounds(s, alphabet, bkt, false);
    for (Index i = 0; i < n; ++i) {
        Index j = sa[i] - 1;
        if (sa[i] > 0 && !stype[j]) sa[bkt[s[j]]++] = j;
    }
    bucket_bounds(s, alphabet, bkt, true);
    for (Index i = n - 1; i >= 0; --i) {
        Index j = sa[i] - 1;
        if (sa[i] > 0 && stype[j]) sa[--bkt[s[j]]] = j;
    }
}

template <typename Sym>
void sais(std::span<const Sym> s, std::span<Index> sa, std::size_t alphabet) {
    const Index n = static_cast<Index>(s.size());
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (Index i = n - 2; i >= 0; --i) {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    auto is_lms = [&](Index i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<Index> bkt(alphabet);
    std::fill(sa.begin(), sa.end(), kEmpty);
    bucket_bounds(s, alphabet, bkt, true);
    for (Index i = 1; i < n; ++i) {
        if (is_lms(i)) sa[--bkt[s[i]]] = i;
    }
    induce(s, sa, stype, alphabet, bkt);

    // Compact sorted LMS positions to the front, then name LMS substrings.
    Index lms_count = 0;
    for (Index i = 0; i < n; ++i) {
        if (is_lms(sa[i])) sa[lms_count++] = sa[i];
    }
    std::fill(sa.begin() + lms_count, sa.end(), kEmpty);
    Index name = 0;
    Index prev = kEmpty;
    for (Index i = 0; i < lms_count; ++i) {
        Index pos = sa[i];
        bool differ = prev == kEmpty;
        for (Index d = 0; !differ; ++d) {
            if (s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
                differ = true;
            } else if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
                break;
            }
        }
        if (differ) {
            ++name;
            prev = pos;
        }
        sa[lms_count + pos / 2] = name - 1;
    }
    std::vector<Index> reduced;
    reduced.reserve(lms_count);
    for (Index i = lms_count; i < n; ++i) {
        if (sa[i] != kEmpty) reduced.push_back(sa[i]);
    }

    std::vector<Index> reduced_sa(lms_count);
    if (name < lms_count) {
        sais<Index>(reduced, reduced_sa, static_cast<std::size_t>(name));
    } else {
        for (Index i = 0; i < lms_count; ++i) reduced_sa[reduced[i]] = i;
    }

    std::vector<Index> lms_pos;
    lms_pos.reserve(lms_count);
    for (Index i = 1; i < n; ++i) {
        if (is_lms(i)) lms_pos.push_back(i);
    }
    std::fill(sa.begin(), sa.end(), kEmpty);
    bucket_bounds(s, alphabet, bkt, true);
    for (Index i = lms_count - 1; i >= 0; --i) {
        Index pos = lms_pos[reduced_sa[i]];
        sa[--bkt[s[pos]]] = pos;
    }
    induce(s, sa, stype, alphabet, bkt);
}

}  // namespace

std::vector<std::int64_t> suffix_array_sais(std::span<const std::uint32_t> text, std::uint32_t alphabet) {
    if (text.empty()) return {};
    if (text.back() != 0) throw InvariantViolation("suffix_array_sais: text must end with sentinel 0");
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == 0 || text[i] >= alphabet) {
            throw InvariantViolation("suffix_array_sais: symbol out of range");
        }
    }
    std::vector<std::int64_t> sa(text.size());
    sais<std::uint32_t>(text, sa, alphabet);
    return sa;
}

std::vector<std::int64_t> lcp_array(std::span<const std::uint32_t> text, std::span<const std::int64_t> sa) {
    const std::size_t n = text.size();
    std::vector<std::int64_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::int64_t>(i);
    std::vector<std::int64_t> lcp(n, 0);
    std::int64_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        auto j = static_cast<std::size_t>(sa[rank[i] - 1]);
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[rank[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace rdelta

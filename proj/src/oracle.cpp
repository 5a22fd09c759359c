#include "rdelta/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rdelta/error.hpp"

namespace rdelta {

namespace {

std::vector<std::uint32_t> widen(std::string_view text) {
    std::vector<std::uint32_t> out(text.size());
    std::transform(text.begin(), text.end(), out.begin(),
                   [](char c) { return static_cast<std::uint32_t>(static_cast<unsigned char>(c)); });
    return out;
}

std::vector<std::size_t> prefix_doubling_sa(std::span<const std::uint32_t> text) {
    const std::size_t n = text.size();
    std::vector<std::size_t> sa(n);
    std::vector<std::size_t> rank(n);
    std::vector<std::size_t> tmp(n);
    std::iota(sa.begin(), sa.end(), 0);
    for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];
    for (std::size_t len = 1;; len *= 2) {
        auto key = [&](std::size_t i) {
            return std::pair<std::size_t, std::size_t>(rank[i], i + len < n ? rank[i + len] + 1 : 0);
        };
        std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        tmp[sa[0]] = 0;
        for (std::size_t i = 1; i < n; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
        rank.swap(tmp);
        if (rank[sa[n - 1]] == n - 1 || len >= n) break;
    }
    return sa;
}

}  // namespace

Profile naive_profile(std::span<const std::uint32_t> text) {
    const std::size_t n = text.size();
    if (n > kOracleLimit) throw InputError(ErrorKind::InputTooLarge, "oracle accepts at most 10^6 characters");
    Profile profile;
    if (n == 0) return profile;

    const auto sa = prefix_doubling_sa(text);
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = i;
    // with_lcp[h] = number of adjacent suffix-array pairs sharing exactly h characters.
    std::vector<std::uint64_t> with_lcp(n + 1, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        std::size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        ++with_lcp[h];
        if (h > 0) --h;
    }
    // counts[k] = (n - k + 1) - #{pairs with lcp >= k}
    profile.counts.resize(n);
    std::uint64_t at_least = 0;
    for (std::size_t k = n; k >= 1; --k) {
        at_least += with_lcp[k];
        profile.counts[k - 1] = (n - k + 1) - at_least;
    }
    return profile;
}

Profile naive_profile(std::string_view text) { return naive_profile(widen(text)); }

DeltaResult naive_delta(std::span<const std::uint32_t> text) {
    const Profile profile = naive_profile(text);
    DeltaResult result;
    result.n = text.size();
    result.r = encode(text).r();
    std::vector<std::uint32_t> symbols(text.begin(), text.end());
    std::sort(symbols.begin(), symbols.end());
    result.sigma = static_cast<std::uint32_t>(std::unique(symbols.begin(), symbols.end()) - symbols.begin());
    if (text.empty()) return result;

    for (std::uint64_t k = 1; k <= profile.counts.size(); ++k) {
        const std::uint64_t count = profile.at(k);
        result.change_points.push_back({k, count});
        if (k == 1 || ratio_less(result.substr_at_argmax, result.argmax_k, count, k)) {
            result.argmax_k = k;
            result.substr_at_argmax = count;
        }
    }
    const std::uint64_t g = std::gcd(result.substr_at_argmax, result.argmax_k);
    result.num = result.substr_at_argmax / g;
    result.den = result.argmax_k / g;
    return result;
}

DeltaResult naive_delta(std::string_view text) { return naive_delta(widen(text)); }

DeltaResult naive_delta(const RleString& rle) {
    if (rle.n() > kOracleLimit) throw InputError(ErrorKind::InputTooLarge, "oracle accepts at most 10^6 characters");
    return naive_delta(rle.expand(kOracleLimit));
}

Profile quadratic_profile(std::span<const std::uint32_t> text) {
    const std::size_t n = text.size();
    if (n > kQuadraticLimit) throw InputError(ErrorKind::InputTooLarge, "quadratic oracle accepts at most 4096 characters");
    Profile profile;
    profile.counts.resize(n);
    if (n == 0) return profile;

    std::vector<std::uint32_t> alphabet(text.begin(), text.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    const std::size_t sigma = alphabet.size();
    std::vector<std::uint32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::uint32_t>(std::lower_bound(alphabet.begin(), alphabet.end(), text[i]) - alphabet.begin());
    }

    // name[i] identifies text[i, i + k); the length-(k + 1) name is a fresh
    // id per distinct (name[i], text[i + k]) pair.
    std::vector<std::uint32_t> name = rank;
    std::size_t names = sigma;
    profile.counts[0] = sigma;
    std::vector<std::uint32_t> table(names * sigma, 0);
    std::vector<std::size_t> touched;
    for (std::size_t k = 2; k <= n; ++k) {
        if (table.size() < names * sigma) table.assign(names * sigma, 0);
        std::uint32_t next = 0;
        touched.clear();
        for (std::size_t i = 0; i + k <= n; ++i) {
            const std::size_t key = static_cast<std::size_t>(name[i]) * sigma + rank[i + k - 1];
            if (table[key] == 0) {
                table[key] = ++next;
                touched.push_back(key);
            }
            name[i] = table[key] - 1;
        }
        for (std::size_t key : touched) table[key] = 0;
        names = next;
        profile.counts[k - 1] = next;
    }
    return profile;
}

Profile quadratic_profile(std::string_view text) { return quadratic_profile(widen(text)); }

}  // namespace rdelta

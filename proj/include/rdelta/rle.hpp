#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdelta {

// Largest admissible exponent and total length. Leaves headroom for
// 128-bit cross multiplication of two lengths.
inline constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 62;

// Symbols are dense 0-based ranks; the external code point lives in the
// owning RleString's symbol table.
struct Run {
    std::uint32_t symbol = 0;
    std::uint64_t exponent = 0;

    friend bool operator==(const Run&, const Run&) = default;
};

// External run description, used when building an RleString from outside
// data (generators, parsers). `symbol` is a byte value or code point.
struct RawRun {
    std::uint32_t symbol = 0;
    std::uint64_t exponent = 0;
};

class RleString {
public:
    RleString() = default;

    // Validates and canonicalizes. With `merge_adjacent` unset, adjacent
    // runs sharing a symbol throw AdjacentEqualRuns. Zero exponents throw
    // NonPositiveExponent, sums beyond kMaxLength throw ExponentOverflow.
    static RleString from_runs(std::span<const RawRun> runs, bool merge_adjacent = false);

    std::span<const Run> runs() const noexcept { return runs_; }
    const Run& run(std::size_t j) const { return runs_[j]; }
    std::size_t r() const noexcept { return runs_.size(); }
    std::uint64_t n() const noexcept { return n_; }
    std::uint32_t sigma() const noexcept { return static_cast<std::uint32_t>(symbols_.size()); }
    bool empty() const noexcept { return runs_.empty(); }

    // 1-based start position of run j (0-based j): 1 + sum of earlier exponents.
    std::uint64_t boundary(std::size_t j) const { return boundaries_[j]; }
    std::span<const std::uint64_t> boundaries() const noexcept { return boundaries_; }

    // Rank -> external code point, ascending.
    std::span<const std::uint32_t> symbol_table() const noexcept { return symbols_; }
    std::uint32_t external_symbol(std::uint32_t rank) const { return symbols_[rank]; }

    // Decompressed text as a rank sequence. Throws InputTooLarge above `limit`.
    std::vector<std::uint32_t> expand(std::uint64_t limit = 1u << 24) const;
    // Decompressed text as bytes; every external symbol must fit in a byte.
    std::string decode(std::uint64_t limit = 1u << 24) const;

    friend bool operator==(const RleString& a, const RleString& b) {
        return a.runs_ == b.runs_ && a.symbols_ == b.symbols_;
    }

private:
    std::vector<Run> runs_;
    std::vector<std::uint64_t> boundaries_;
    std::vector<std::uint32_t> symbols_;
    std::uint64_t n_ = 0;
};

RleString encode(std::string_view text);
// Rank sequences (e.g. oracle inputs); external symbols are the values themselves.
RleString encode(std::span<const std::uint32_t> text);

// Text format: one `<symbol><space|tab><exponent>` per line, `#` comment
// lines and blank lines ignored. A symbol is one UTF-8 character or a
// `0xNN` byte escape.
RleString parse_rle(std::string_view text, bool normalize = false);
std::string serialize_rle(const RleString& rle);

// Test-corpus generators. All deterministic.
RleString fibonacci_word(unsigned order);
RleString thue_morse(unsigned order);
RleString power_string(std::uint32_t symbol, std::uint64_t exponent);

struct RandomRunsParams {
    std::size_t runs = 16;
    std::uint32_t sigma = 2;
    std::uint64_t min_exponent = 1;
    std::uint64_t max_exponent = 4;
    std::uint64_t seed = 0;
};
RleString random_runs(const RandomRunsParams& params);

}  // namespace rdelta

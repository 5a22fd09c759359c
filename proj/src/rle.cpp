#include "rdelta/rle.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <random>

#include "rdelta/error.hpp"

namespace rdelta {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MalformedLine: return "MalformedLine";
        case ErrorKind::NonPositiveExponent: return "NonPositiveExponent";
        case ErrorKind::AdjacentEqualRuns: return "AdjacentEqualRuns";
        case ErrorKind::ExponentOverflow: return "ExponentOverflow";
        case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
        case ErrorKind::InputTooLarge: return "InputTooLarge";
    }
    return "Unknown";
}

RleString RleString::from_runs(std::span<const RawRun> runs, bool merge_adjacent) {
    std::vector<RawRun> merged;
    merged.reserve(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const RawRun& run = runs[i];
        if (run.exponent == 0) {
            throw InputError(ErrorKind::NonPositiveExponent, "run " + std::to_string(i + 1));
        }
        if (run.exponent > kMaxLength) {
            throw InputError(ErrorKind::ExponentOverflow, "run " + std::to_string(i + 1));
        }
        if (!merged.empty() && merged.back().symbol == run.symbol) {
            if (!merge_adjacent) {
                throw InputError(ErrorKind::AdjacentEqualRuns,
                                 "runs " + std::to_string(i) + " and " + std::to_string(i + 1));
            }
            merged.back().exponent += run.exponent;
            if (merged.back().exponent > kMaxLength) {
                throw InputError(ErrorKind::ExponentOverflow, "merged run " + std::to_string(i + 1));
            }
            continue;
        }
        merged.push_back(run);
    }

    RleString out;
    for (const RawRun& run : merged) out.symbols_.push_back(run.symbol);
    std::sort(out.symbols_.begin(), out.symbols_.end());
    out.symbols_.erase(std::unique(out.symbols_.begin(), out.symbols_.end()), out.symbols_.end());

    out.runs_.reserve(merged.size());
    out.boundaries_.reserve(merged.size());
    std::uint64_t pos = 1;
    for (const RawRun& run : merged) {
        auto it = std::lower_bound(out.symbols_.begin(), out.symbols_.end(), run.symbol);
        out.runs_.push_back({static_cast<std::uint32_t>(it - out.symbols_.begin()), run.exponent});
        out.boundaries_.push_back(pos);
        if (run.exponent > kMaxLength - out.n_) {
            throw InputError(ErrorKind::ExponentOverflow, "total length exceeds 2^62");
        }
        out.n_ += run.exponent;
        pos += run.exponent;
    }
    return out;
}

std::vector<std::uint32_t> RleString::expand(std::uint64_t limit) const {
    if (n_ > limit) {
        throw InputError(ErrorKind::InputTooLarge,
                         "refusing to expand " + std::to_string(n_) + " characters");
    }
    std::vector<std::uint32_t> text;
    text.reserve(n_);
    for (const Run& run : runs_) text.insert(text.end(), run.exponent, run.symbol);
    return text;
}

std::string RleString::decode(std::uint64_t limit) const {
    if (n_ > limit) {
        throw InputError(ErrorKind::InputTooLarge,
                         "refusing to expand " + std::to_string(n_) + " characters");
    }
    std::string text;
    text.reserve(n_);
    for (const Run& run : runs_) {
        std::uint32_t sym = symbols_[run.symbol];
        if (sym > 0xFF) {
            throw InputError(ErrorKind::ParamOutOfRange, "symbol does not fit in a byte");
        }
        text.append(run.exponent, static_cast<char>(sym));
    }
    return text;
}

namespace {

template <typename Seq>
RleString encode_sequence(const Seq& text) {
    std::vector<RawRun> runs;
    for (auto ch : text) {
        auto sym = static_cast<std::uint32_t>(ch);
        if (!runs.empty() && runs.back().symbol == sym) {
            ++runs.back().exponent;
        } else {
            runs.push_back({sym, 1});
        }
    }
    return RleString::from_runs(runs);
}

}  // namespace

RleString encode(std::string_view text) {
    std::vector<unsigned char> bytes(text.begin(), text.end());
    return encode_sequence(bytes);
}

RleString encode(std::span<const std::uint32_t> text) { return encode_sequence(text); }

// ---------------------------------------------------------------------------
// Text format

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

// Decodes exactly one UTF-8 code point spanning all of `tok`.
bool decode_single_utf8(std::string_view tok, std::uint32_t& cp) {
    if (tok.empty()) return false;
    auto b0 = static_cast<unsigned char>(tok[0]);
    std::size_t len = 0;
    if (b0 < 0x80) {
        cp = b0;
        len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
        cp = b0 & 0x1F;
        len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
        cp = b0 & 0x0F;
        len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
        cp = b0 & 0x07;
        len = 4;
    } else {
        return false;
    }
    if (tok.size() != len) return false;
    for (std::size_t i = 1; i < len; ++i) {
        auto b = static_cast<unsigned char>(tok[i]);
        if ((b & 0xC0) != 0x80) return false;
        cp = (cp << 6) | (b & 0x3F);
    }
    return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

RleString parse_rle(std::string_view text, bool normalize) {
    std::vector<RawRun> runs;
    std::size_t line_no = 0;
    while (!text.empty()) {
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        auto bad = [&](ErrorKind kind, const std::string& why) {
            return InputError(kind, "line " + std::to_string(line_no) + ": " + why);
        };

        std::size_t sep = 0;
        while (sep < line.size() && !is_space(line[sep])) ++sep;
        if (sep == line.size()) throw bad(ErrorKind::MalformedLine, "missing exponent");
        std::string_view sym_tok = line.substr(0, sep);
        std::string_view exp_tok = line.substr(sep);
        while (!exp_tok.empty() && is_space(exp_tok.front())) exp_tok.remove_prefix(1);

        std::uint32_t symbol = 0;
        if (sym_tok.size() == 4 && sym_tok[0] == '0' && (sym_tok[1] == 'x' || sym_tok[1] == 'X')) {
            int hi = hex_value(sym_tok[2]);
            int lo = hex_value(sym_tok[3]);
            if (hi < 0 || lo < 0) throw bad(ErrorKind::MalformedLine, "bad byte escape");
            symbol = static_cast<std::uint32_t>(hi * 16 + lo);
        } else if (!decode_single_utf8(sym_tok, symbol)) {
            throw bad(ErrorKind::MalformedLine, "symbol must be one character or 0xNN");
        }

        bool negative = false;
        if (!exp_tok.empty() && exp_tok.front() == '-') {
            negative = true;
            exp_tok.remove_prefix(1);
        }
        if (exp_tok.empty() || !std::all_of(exp_tok.begin(), exp_tok.end(),
                                            [](char c) { return c >= '0' && c <= '9'; })) {
            throw bad(ErrorKind::MalformedLine, "exponent must be a decimal integer");
        }
        std::uint64_t exponent = 0;
        auto [ptr, ec] = std::from_chars(exp_tok.data(), exp_tok.data() + exp_tok.size(), exponent);
        if (ec == std::errc::result_out_of_range || (ec == std::errc{} && exponent > kMaxLength)) {
            if (negative) throw bad(ErrorKind::NonPositiveExponent, "negative exponent");
            throw bad(ErrorKind::ExponentOverflow, "exponent exceeds 2^62");
        }
        if (negative || exponent == 0) throw bad(ErrorKind::NonPositiveExponent, "exponent must be >= 1");
        runs.push_back({symbol, exponent});
    }
    return RleString::from_runs(runs, normalize);
}

std::string serialize_rle(const RleString& rle) {
    std::string out;
    for (const Run& run : rle.runs()) {
        std::uint32_t sym = rle.external_symbol(run.symbol);
        if (sym > 0x20 && sym < 0x7F && sym != '#') {
            out.push_back(static_cast<char>(sym));
        } else if (sym <= 0xFF) {
            static constexpr char kHex[] = "0123456789abcdef";
            out += "0x";
            out.push_back(kHex[sym >> 4]);
            out.push_back(kHex[sym & 0xF]);
        } else {
            append_utf8(out, sym);
        }
        out.push_back('\t');
        out += std::to_string(run.exponent);
        out.push_back('\n');
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

void append_run(std::vector<RawRun>& runs, RawRun run) {
    if (!runs.empty() && runs.back().symbol == run.symbol) {
        runs.back().exponent += run.exponent;
    } else {
        runs.push_back(run);
    }
}

}  // namespace

RleString fibonacci_word(unsigned order) {
    // s_1 = b, s_2 = a, s_k = s_{k-1} s_{k-2}; |s_k| is the k-th Fibonacci number.
    if (order < 1 || order > 35) {
        throw InputError(ErrorKind::ParamOutOfRange, "fibonacci order must be in [1, 35]");
    }
    std::vector<RawRun> older{{'b', 1}};
    std::vector<RawRun> newer{{'a', 1}};
    if (order == 1) return RleString::from_runs(older);
    for (unsigned k = 3; k <= order; ++k) {
        std::vector<RawRun> next = newer;
        for (const RawRun& run : older) append_run(next, run);
        older = std::move(newer);
        newer = std::move(next);
    }
    return RleString::from_runs(newer);
}

RleString thue_morse(unsigned order) {
    if (order > 24) throw InputError(ErrorKind::ParamOutOfRange, "thue-morse order must be <= 24");
    std::vector<RawRun> runs;
    std::uint64_t len = std::uint64_t{1} << order;
    for (std::uint64_t i = 0; i < len; ++i) {
        bool odd = std::popcount(i) & 1;
        append_run(runs, {odd ? std::uint32_t{'b'} : std::uint32_t{'a'}, 1});
    }
    return RleString::from_runs(runs);
}

RleString power_string(std::uint32_t symbol, std::uint64_t exponent) {
    if (exponent == 0 || exponent > kMaxLength) {
        throw InputError(ErrorKind::ParamOutOfRange, "exponent must be in [1, 2^62]");
    }
    RawRun run{symbol, exponent};
    return RleString::from_runs(std::span<const RawRun>(&run, 1));
}

RleString random_runs(const RandomRunsParams& p) {
    if (p.sigma == 0 || p.sigma > 256) throw InputError(ErrorKind::ParamOutOfRange, "sigma must be in [1, 256]");
    if (p.runs >= 2 && p.sigma < 2) throw InputError(ErrorKind::ParamOutOfRange, "sigma must be >= 2 for r >= 2");
    if (p.min_exponent == 0 || p.min_exponent > p.max_exponent || p.max_exponent > kMaxLength) {
        throw InputError(ErrorKind::ParamOutOfRange, "exponent range must satisfy 1 <= min <= max <= 2^62");
    }
    if (p.runs != 0 && p.max_exponent > kMaxLength / p.runs) {
        throw InputError(ErrorKind::ParamOutOfRange, "runs * max_exponent exceeds 2^62");
    }
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::uint64_t> exp_dist(p.min_exponent, p.max_exponent);
    std::vector<RawRun> runs;
    runs.reserve(p.runs);
    std::uint32_t prev = p.sigma;
    for (std::size_t i = 0; i < p.runs; ++i) {
        std::uint32_t sym;
        if (prev == p.sigma) {
            sym = static_cast<std::uint32_t>(rng() % p.sigma);
        } else {
            // Skip the previous symbol so runs stay maximal.
            sym = static_cast<std::uint32_t>(rng() % (p.sigma - 1));
            if (sym >= prev) ++sym;
        }
        prev = sym;
        runs.push_back({p.sigma <= 26 ? 'a' + sym : sym, exp_dist(rng)});
    }
    return RleString::from_runs(runs);
}

}  // namespace rdelta

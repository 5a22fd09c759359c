#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rdelta/rle.hpp"
#include "rdelta/sweep.hpp"

namespace rdelta::cli {

// Stable exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitInternalError = 2,
    kExitMismatch = 3,
};

enum class InputFormat { Auto, Raw, Rle };
enum class OutputFormat { Text, Json, Csv };
enum class Engine { Compressed, Oracle, Both };

struct CliConfig {
    std::string subcommand;
    std::string input_path;
    InputFormat input_format = InputFormat::Auto;
    OutputFormat output_format = OutputFormat::Text;
    Engine engine = Engine::Compressed;
    std::uint64_t seed = 42;
    bool normalize = false;
    bool rmq_linear = false;
    SortStrategy sort = SortStrategy::Comparison;
    std::string dump_tree_path;  // DOT output, empty = off
    bool dump_bdepth = false;

    // generate / verify --gen
    std::string family;
    unsigned order = 10;
    std::size_t runs = 16;
    std::uint32_t sigma = 2;
    std::uint64_t min_exponent = 1;
    std::uint64_t max_exponent = 4;
    std::uint32_t symbol = 'a';
    std::uint64_t exponent = 1;
    std::string output_path;

    // verify batch mode
    std::size_t count = 100;
    std::uint64_t max_n = 512;

    // bench
    std::vector<std::size_t> bench_runs{100, 1000, 10000, 100000};
    std::vector<unsigned> bench_exp_bits{30};
    std::size_t bench_repeats = 3;
    std::uint64_t bench_oracle_n = 100000;
};

// Full |Substr_T(k)| profile plus the summary, as produced by one engine.
struct EngineOutput {
    DeltaResult result;
    std::vector<std::uint64_t> profile;  // index k - 1
};
using EngineFn = std::function<EngineOutput(const RleString&)>;

// The compressed pipeline, with the profile expanded from its events.
EngineOutput compressed_engine(const RleString& rle, const PipelineOptions& options = {});
EngineOutput oracle_engine(const RleString& rle);

struct Mismatch {
    std::string label;         // e.g. "seed=42 case=17"
    std::string reproduction;  // RLE text of the failing input
    std::string detail;
};

// Runs both engines on one input; nullopt when delta and every |S(k)| agree.
std::optional<Mismatch> compare_engines(const RleString& rle, const EngineFn& engine, const std::string& label);

// Deterministic verification corpus for `verify --gen`.
std::vector<std::pair<std::string, RleString>> generate_batch(const CliConfig& config);

RleString load_input(const CliConfig& config);
RleString generate_family(const CliConfig& config);

std::string delta_json(const DeltaResult& result);
std::string delta_text(const DeltaResult& result);

int cmd_delta(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_profile(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err, const EngineFn& engine = {});
int cmd_generate(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rdelta::cli

#include "rdelta/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdelta/alloc_stats.hpp"
#include "rdelta/error.hpp"
#include "rdelta/oracle.hpp"

namespace rdelta::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(ErrorKind::MalformedLine, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string decimal(std::uint64_t num, std::uint64_t den, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << static_cast<double>(num) / static_cast<double>(den);
    return os.str();
}

PipelineOptions pipeline_options(const CliConfig& config) {
    PipelineOptions options;
    options.rmq = config.rmq_linear ? RmqKind::Block : RmqKind::SparseTable;
    options.sort = config.sort;
    return options;
}

void check_oracle_size(const RleString& rle) {
    if (rle.n() > kOracleLimit) {
        throw InputError(ErrorKind::InputTooLarge,
                         "oracle engine limited to n <= 10^6 (input has n = " + std::to_string(rle.n()) + ")");
    }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

// Runs the engines the config asks for. With Engine::Both a disagreement
// is reported through `mismatch`.
EngineOutput solve(const CliConfig& config, const RleString& rle, std::optional<Mismatch>& mismatch,
                   PipelineTrace* trace_out = nullptr) {
    if (config.engine == Engine::Oracle) {
        check_oracle_size(rle);
        return oracle_engine(rle);
    }
    if (config.engine == Engine::Both) {
        check_oracle_size(rle);
        mismatch = compare_engines(
            rle, [&](const RleString& in) { return compressed_engine(in, pipeline_options(config)); }, "input");
    }
    PipelineTrace trace = run_pipeline(rle, pipeline_options(config));
    EngineOutput out{trace.result, {}};
    if (!config.dump_tree_path.empty()) {
        std::ofstream dot(config.dump_tree_path);
        if (!dot) throw InputError(ErrorKind::MalformedLine, "cannot write " + config.dump_tree_path);
        dot << trace.tree.to_dot();
    }
    if (trace_out != nullptr) *trace_out = std::move(trace);
    return out;
}

void write_bdepths(const PipelineTrace& trace, std::ostream& out) {
    out << "# leaf\texponent\tb_depth\n";
    for (const LeafRecord& leaf : trace.leaves) {
        out << leaf.suffix + 1 << '\t' << leaf.exponent << '\t' << leaf.b_depth << '\n';
    }
}

}  // namespace

EngineOutput compressed_engine(const RleString& rle, const PipelineOptions& options) {
    PipelineTrace trace = run_pipeline(rle, options);
    EngineOutput out;
    out.profile = expand_profile(trace.events, rle.n());
    out.result = std::move(trace.result);
    return out;
}

EngineOutput oracle_engine(const RleString& rle) {
    check_oracle_size(rle);
    EngineOutput out;
    const auto text = rle.expand(kOracleLimit);
    out.result = naive_delta(text);
    out.profile = naive_profile(text).counts;
    return out;
}

std::optional<Mismatch> compare_engines(const RleString& rle, const EngineFn& engine, const std::string& label) {
    const EngineOutput expected = oracle_engine(rle);
    EngineOutput got;
    try {
        got = engine(rle);
    } catch (const InvariantViolation& e) {
        return Mismatch{label, serialize_rle(rle), std::string("engine failed: ") + e.what()};
    }
    std::ostringstream detail;
    if (!got.result.same_delta(expected.result)) {
        detail << "delta " << got.result.num << "/" << got.result.den << " != oracle " << expected.result.num << "/"
               << expected.result.den;
        return Mismatch{label, serialize_rle(rle), detail.str()};
    }
    if (got.profile.size() != expected.profile.size()) {
        detail << "profile length " << got.profile.size() << " != " << expected.profile.size();
        return Mismatch{label, serialize_rle(rle), detail.str()};
    }
    for (std::size_t k = 1; k <= got.profile.size(); ++k) {
        if (got.profile[k - 1] != expected.profile[k - 1]) {
            detail << "|S(" << k << ")| = " << got.profile[k - 1] << " != oracle " << expected.profile[k - 1];
            return Mismatch{label, serialize_rle(rle), detail.str()};
        }
    }
    return std::nullopt;
}

RleString generate_family(const CliConfig& config) {
    const std::string& f = config.family;
    if (f == "fibonacci") return fibonacci_word(config.order);
    if (f == "thue-morse") return thue_morse(config.order);
    if (f == "power") return power_string(config.symbol, config.exponent);
    if (f == "random-runs") {
        RandomRunsParams params;
        params.runs = config.runs;
        params.sigma = config.sigma;
        params.min_exponent = config.min_exponent;
        params.max_exponent = config.max_exponent;
        params.seed = config.seed;
        return random_runs(params);
    }
    throw InputError(ErrorKind::ParamOutOfRange, "unknown family '" + f + "'");
}

std::vector<std::pair<std::string, RleString>> generate_batch(const CliConfig& config) {
    std::vector<std::pair<std::string, RleString>> cases;
    if (config.max_n == 0 || config.max_n > kOracleLimit) {
        throw InputError(ErrorKind::ParamOutOfRange, "--max-n must be in [1, 10^6]");
    }
    const std::string& f = config.family;
    if (f == "random-runs" || f == "random-text") {
        for (std::size_t i = 0; i < config.count; ++i) {
            const std::uint64_t seed = config.seed + i;
            std::mt19937_64 rng(seed);
            static constexpr std::uint32_t kSigmas[] = {2, 3, 8};
            const std::uint32_t sigma = config.sigma > 2 ? config.sigma : kSigmas[rng() % 3];
            const std::uint64_t n = 1 + rng() % config.max_n;
            RleString rle;
            if (f == "random-text") {
                std::string text(n, 'a');
                for (char& c : text) c = static_cast<char>('a' + rng() % sigma);
                rle = encode(text);
            } else {
                RandomRunsParams params;
                params.runs = 1 + rng() % std::max<std::uint64_t>(1, n / 2);
                params.sigma = sigma;
                params.max_exponent = std::max<std::uint64_t>(1, n / params.runs);
                params.seed = rng();
                rle = random_runs(params);
            }
            cases.emplace_back("seed=" + std::to_string(seed) + " case=" + std::to_string(i), std::move(rle));
        }
    } else if (f == "fibonacci" || f == "thue-morse") {
        for (unsigned order = f == "fibonacci" ? 1 : 0;; ++order) {
            RleString rle = f == "fibonacci" ? fibonacci_word(order) : thue_morse(order);
            if (rle.n() > config.max_n) break;
            cases.emplace_back(f + " order=" + std::to_string(order), std::move(rle));
        }
    } else {
        throw InputError(ErrorKind::ParamOutOfRange, "unknown --gen family '" + f + "'");
    }
    return cases;
}

RleString load_input(const CliConfig& config) {
    if (config.input_path.empty()) throw InputError(ErrorKind::MalformedLine, "no input file given");
    const std::string content = read_file(config.input_path);
    InputFormat format = config.input_format;
    if (format == InputFormat::Auto) format = ends_with(config.input_path, ".rle") ? InputFormat::Rle : InputFormat::Raw;
    return format == InputFormat::Rle ? parse_rle(content, config.normalize) : encode(content);
}

std::string delta_json(const DeltaResult& result) {
    json j;
    j["delta"] = {{"num", result.num}, {"den", result.den}, {"value", result.value()}};
    j["argmax_k"] = result.argmax_k;
    j["r"] = result.r;
    j["n"] = result.n;
    j["sigma"] = result.sigma;
    return j.dump();
}

std::string delta_text(const DeltaResult& result) {
    std::ostringstream os;
    os << "delta     " << result.num << "/" << result.den << " (" << decimal(result.num, result.den) << ")\n"
       << "argmax_k  " << result.argmax_k << "\n"
       << "|S(k)|    " << result.substr_at_argmax << "\n"
       << "r         " << result.r << "\n"
       << "n         " << result.n << "\n"
       << "sigma     " << result.sigma << "\n";
    return os.str();
}

int cmd_delta(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RleString rle = load_input(config);
        std::optional<Mismatch> mismatch;
        PipelineTrace trace;
        const EngineOutput solved = solve(config, rle, mismatch, &trace);
        if (config.output_format == OutputFormat::Json) {
            out << delta_json(solved.result) << "\n";
        } else if (config.output_format == OutputFormat::Csv) {
            out << "num,den,value,argmax_k,r,n,sigma\n"
                << solved.result.num << ',' << solved.result.den << ',' << decimal(solved.result.num, solved.result.den)
                << ',' << solved.result.argmax_k << ',' << solved.result.r << ',' << solved.result.n << ','
                << solved.result.sigma << "\n";
        } else {
            out << delta_text(solved.result);
        }
        if (config.dump_bdepth && config.engine != Engine::Oracle) write_bdepths(trace, out);
        if (mismatch) {
            err << "engines disagree: " << mismatch->detail << "\n";
            return static_cast<int>(kExitMismatch);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_profile(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RleString rle = load_input(config);
        std::optional<Mismatch> mismatch;
        const EngineOutput solved = solve(config, rle, mismatch);
        const auto& rows = solved.result.change_points;
        if (config.output_format == OutputFormat::Json) {
            json j;
            j["rows"] = json::array();
            for (const ChangePoint& cp : rows) {
                j["rows"].push_back({{"k", cp.k}, {"substr", cp.count},
                                     {"ratio", static_cast<double>(cp.count) / static_cast<double>(cp.k)}});
            }
            j["delta"] = json::parse(delta_json(solved.result));
            out << j.dump() << "\n";
        } else {
            out << "k,substr,ratio\n";
            for (const ChangePoint& cp : rows) out << cp.k << ',' << cp.count << ',' << decimal(cp.count, cp.k) << "\n";
        }
        if (mismatch) {
            err << "engines disagree: " << mismatch->detail << "\n";
            return static_cast<int>(kExitMismatch);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err, const EngineFn& engine) {
    return guarded(err, [&] {
        EngineFn run_engine = engine;
        if (!run_engine) {
            run_engine = [options = pipeline_options(config)](const RleString& rle) {
                return compressed_engine(rle, options);
            };
        }
        std::vector<std::pair<std::string, RleString>> cases;
        if (!config.input_path.empty()) {
            RleString rle = load_input(config);
            check_oracle_size(rle);
            cases.emplace_back(config.input_path, std::move(rle));
        } else {
            cases = generate_batch(config);
        }
        for (const auto& [label, rle] : cases) {
            if (auto bad = compare_engines(rle, run_engine, label)) {
                err << "MISMATCH " << bad->label << ": " << bad->detail << "\n"
                    << "reproduction (RLE):\n"
                    << bad->reproduction;
                return static_cast<int>(kExitMismatch);
            }
        }
        out << "verified " << cases.size() << " case(s): all match\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_generate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string text = serialize_rle(generate_family(config));
        if (config.output_path.empty()) {
            out << text;
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file) throw InputError(ErrorKind::MalformedLine, "cannot write " + config.output_path);
            file << text;
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        using Clock = std::chrono::steady_clock;
        auto ms_since = [](Clock::time_point t0) {
            return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        };
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        const std::size_t repeats = std::max<std::size_t>(1, config.bench_repeats);

        out << "engine,r,n,lg_n,build_ms,solve_ms,total_ms,peak_bytes,delta\n";
        for (unsigned bits : config.bench_exp_bits) {
            for (std::size_t r : config.bench_runs) {
                // One run structure per r; exponents are scaled to reach
                // ~2^bits so rows differing only in bits differ only in n.
                constexpr unsigned kBaseBits = 10;
                RandomRunsParams params;
                params.runs = r;
                params.sigma = 4;
                params.min_exponent = std::uint64_t{1} << (kBaseBits - 1);
                params.max_exponent = std::uint64_t{1} << kBaseBits;
                params.seed = config.seed;
                RleString rle = random_runs(params);
                const unsigned limit = std::bit_width(std::max<std::uint64_t>(kMaxLength / std::max<std::size_t>(r, 1) / params.max_exponent, 1)) - 1;
                const unsigned shift = std::min(bits > kBaseBits ? bits - kBaseBits : 0u, limit);
                if (shift > 0) {
                    std::vector<RawRun> scaled;
                    for (const Run& run : rle.runs()) scaled.push_back({rle.external_symbol(run.symbol), run.exponent << shift});
                    rle = RleString::from_runs(scaled);
                }

                std::vector<double> build_ms;
                std::vector<double> solve_ms;
                std::size_t peak = 0;
                DeltaResult result;
                for (std::size_t rep = 0; rep < repeats; ++rep) {
                    alloc_stats::reset_peak();
                    const std::size_t base = alloc_stats::current_bytes();
                    auto t0 = Clock::now();
                    RSuffixTree tree = build_rsuffix_tree(rle, config.sort);
                    LcaOracle oracle(tree, config.rmq_linear ? RmqKind::Block : RmqKind::SparseTable);
                    build_ms.push_back(ms_since(t0));
                    auto t1 = Clock::now();
                    auto leaves = compute_b_depths(tree, oracle, build_rem_lists(tree), config.sort);
                    auto roots = collect_dmn_roots(tree, leaves);
                    auto explicits = collect_explicit_d_nodes(tree, leaves);
                    result = compute_delta(build_events(roots, explicits), rle.n(), config.sort);
                    solve_ms.push_back(ms_since(t1));
                    peak = std::max(peak, alloc_stats::peak_bytes() - base);
                }
                const double b = median(build_ms);
                const double s = median(solve_ms);
                out << "compressed," << r << ',' << rle.n() << ',' << std::fixed << std::setprecision(3)
                    << std::log2(static_cast<double>(rle.n())) << ',' << b << ',' << s << ',' << b + s << ','
                    << peak << ',' << result.num << '/' << result.den << "\n";
            }
        }
        if (config.bench_oracle_n > 0) {
            const std::uint64_t n = std::min<std::uint64_t>(config.bench_oracle_n, kOracleLimit);
            std::mt19937_64 rng(config.seed);
            std::string text(n, 'a');
            for (char& c : text) c = static_cast<char>('a' + rng() % 4);
            const RleString rle = encode(text);
            std::vector<double> total;
            std::size_t peak = 0;
            DeltaResult result;
            for (std::size_t rep = 0; rep < repeats; ++rep) {
                alloc_stats::reset_peak();
                const std::size_t base = alloc_stats::current_bytes();
                auto t0 = Clock::now();
                result = naive_delta(text);
                total.push_back(ms_since(t0));
                peak = std::max(peak, alloc_stats::peak_bytes() - base);
            }
            const double t = median(total);
            out << "oracle," << rle.r() << ',' << n << ',' << std::fixed << std::setprecision(3)
                << std::log2(static_cast<double>(n)) << ",0.000," << t << ',' << t << ',' << peak << ','
                << result.num << '/' << result.den << "\n";
        }
        return static_cast<int>(kExitOk);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig config;
    CLI::App app{"Substring complexity (delta) of run-length encoded strings"};
    app.require_subcommand(1);

    const std::map<std::string, InputFormat> formats{{"auto", InputFormat::Auto}, {"raw", InputFormat::Raw},
                                                      {"rle", InputFormat::Rle}};
    const std::map<std::string, Engine> engines{{"compressed", Engine::Compressed}, {"oracle", Engine::Oracle},
                                                {"both", Engine::Both}};
    const std::map<std::string, SortStrategy> sorts{{"comparison", SortStrategy::Comparison},
                                                    {"radix", SortStrategy::Radix}};
    bool json_out = false;
    bool csv_out = false;

    auto add_input_options = [&](CLI::App* sub) {
        sub->add_option("input", config.input_path, "Input file (.rle = RLE text, otherwise raw bytes)");
        sub->add_option("--format", config.input_format, "Input format: auto, raw, rle")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_flag("--normalize", config.normalize, "Merge adjacent runs with equal symbols");
        sub->add_option("--engine", config.engine, "compressed, oracle or both")
            ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
        sub->add_flag("--rmq-linear", config.rmq_linear, "Linear-space block RMQ for LCA queries");
        sub->add_option("--sort", config.sort, "Integer sorting: comparison or radix")
            ->transform(CLI::CheckedTransformer(sorts, CLI::ignore_case));
        sub->add_flag("--json", json_out, "JSON output");
        sub->add_flag("--csv", csv_out, "CSV output");
    };

    CLI::App* delta = app.add_subcommand("delta", "Compute delta = max_k |S(k)|/k");
    add_input_options(delta);
    delta->add_option("--dump-tree", config.dump_tree_path, "Write the r-suffix tree as DOT to this file");
    delta->add_flag("--dump-bdepth", config.dump_bdepth, "Print (leaf, exponent, b-depth) triples");

    CLI::App* profile = app.add_subcommand("profile", "List |S(k)| at every k the maximization evaluates");
    add_input_options(profile);

    CLI::App* verify = app.add_subcommand("verify", "Cross-check the compressed engine against the oracle");
    add_input_options(verify);
    verify->add_option("--gen", config.family, "Batch family: random-runs, random-text, fibonacci, thue-morse");
    verify->add_option("--count", config.count, "Number of generated cases");
    verify->add_option("--max-n", config.max_n, "Maximum text length of generated cases");
    verify->add_option("--seed", config.seed, "Base seed");
    verify->add_option("--sigma", config.sigma, "Alphabet size (default: cycle through 2, 3, 8)");

    CLI::App* generate = app.add_subcommand("generate", "Write a generated string as RLE text");
    generate->add_option("family", config.family, "fibonacci, thue-morse, random-runs, power")->required();
    generate->add_option("--order", config.order, "Order for fibonacci / thue-morse");
    generate->add_option("--runs", config.runs, "Number of runs for random-runs");
    generate->add_option("--sigma", config.sigma, "Alphabet size for random-runs");
    generate->add_option("--min-exp", config.min_exponent, "Smallest exponent for random-runs");
    generate->add_option("--max-exp", config.max_exponent, "Largest exponent for random-runs");
    generate->add_option("--seed", config.seed, "Seed for random-runs");
    std::string symbol_text = "a";
    generate->add_option("--symbol", symbol_text, "Symbol for power: one character or 0xNN");
    generate->add_option("--exponent", config.exponent, "Exponent for power");
    generate->add_option("-o,--output", config.output_path, "Output file (default stdout)");

    CLI::App* bench = app.add_subcommand("bench", "Time the compressed engine over random-run corpora (CSV)");
    bench->add_option("--runs", config.bench_runs, "Run counts r")->delimiter(',');
    bench->add_option("--exp-bits", config.bench_exp_bits, "Exponents scaled to about 2^b, run structure fixed")->delimiter(',');
    bench->add_option("--repeats", config.bench_repeats, "Repetitions per row (median reported)");
    bench->add_option("--oracle-n", config.bench_oracle_n, "Oracle comparison length (0 = skip)");
    bench->add_option("--seed", config.seed, "Seed");
    bench->add_flag("--rmq-linear", config.rmq_linear, "Linear-space block RMQ");
    bench->add_option("--sort", config.sort, "Integer sorting: comparison or radix")
        ->transform(CLI::CheckedTransformer(sorts, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitInputError;
    }
    if (json_out) config.output_format = OutputFormat::Json;
    if (csv_out) config.output_format = OutputFormat::Csv;

    if (delta->parsed()) return config.subcommand = "delta", cmd_delta(config, out, err);
    if (profile->parsed()) {
        config.subcommand = "profile";
        if (!json_out) config.output_format = OutputFormat::Csv;
        return cmd_profile(config, out, err);
    }
    if (verify->parsed()) {
        config.subcommand = "verify";
        if (config.input_path.empty() && config.family.empty()) config.family = "random-runs";
        return cmd_verify(config, out, err);
    }
    if (generate->parsed()) {
        config.subcommand = "generate";
        return guarded(err, [&] {
            config.symbol = parse_rle(symbol_text + " 1").symbol_table()[0];
            return cmd_generate(config, out, err);
        });
    }
    if (bench->parsed()) return config.subcommand = "bench", cmd_bench(config, out, err);
    return kExitInputError;
}

}  // namespace rdelta::cli

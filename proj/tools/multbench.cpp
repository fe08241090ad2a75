// multbench: generate the standard sparse-multiplication benchmarks, run
// them with a chosen algorithm/coefficient/thread configuration, and report
// timings, ccpm, term counts, and write traces.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kronmul/bench.hpp>
#include <kronmul/benchmark_inputs.hpp>
#include <kronmul/io.hpp>
#include <kronmul/multiply.hpp>
#include <kronmul/naive.hpp>
#include <kronmul/poisson.hpp>

namespace km = kronmul;

namespace
{

struct cli_config {
    std::string target;
    unsigned n = 0;
    std::string coeff = "double";
    std::string algo = "auto";
    unsigned threads = 1;
    std::size_t block_size = 0;
    std::uint64_t hash_n = 0;
    std::uint64_t hash_m = 8;
    std::uint64_t hash_s = 0;
    double cpu_ghz = 0.0;
    std::uint64_t seed = 42;
    std::size_t terms = 500;
    bool json = false;
    std::string trace_file;
    std::int64_t truncate_degree = 0;
    bool truncate_set = false;
    std::vector<std::string> inputs;
    double memory_gib = 8.0;
    double budget_gib = 0.0;
    double density_threshold = 1e-4;
    bool assert_disjoint = false;

    unsigned power() const
    {
        if (n > 0) {
            return n;
        }
        if (target == "fateman") {
            return 30;
        }
        if (target == "mp-sparse") {
            return 12;
        }
        return 3;
    }

    std::optional<double> cpu_hz() const
    {
        if (cpu_ghz > 0.0) {
            return cpu_ghz * 1e9;
        }
        if (const char *env = std::getenv("MULTBENCH_CPU_GHZ")) {
            try {
                return std::stod(env) * 1e9;
            } catch (const std::exception &) {
                throw std::invalid_argument("MULTBENCH_CPU_GHZ is not a number");
            }
        }
        return std::nullopt;
    }

    km::mult_options options() const
    {
        km::mult_options opts;
        if (algo == "dense") {
            opts.algo = km::algo_choice::dense;
        } else if (algo == "hash") {
            opts.algo = km::algo_choice::hash;
        } else {
            opts.algo = km::algo_choice::automatic;
        }
        opts.block_size = block_size;
        opts.hash = {hash_n, hash_m, hash_s, 4};
        opts.threads = threads;
        if (truncate_set) {
            opts.truncate_degree = truncate_degree;
        }
        opts.machine_memory_bytes = static_cast<std::uint64_t>(memory_gib * (std::uint64_t(1) << 30));
        if (budget_gib > 0.0) {
            opts.memory_budget_bytes =
                static_cast<std::uint64_t>(budget_gib * (std::uint64_t(1) << 30));
        }
        opts.density_threshold = density_threshold;
        opts.assert_disjoint = assert_disjoint;
        return opts;
    }
};

void add_common_options(CLI::App *cmd, cli_config &cfg)
{
    cmd->add_option("target", cfg.target, "fateman | mp-sparse | poisson | input")
        ->required()
        ->check(CLI::IsMember({"fateman", "mp-sparse", "poisson", "input"}));
    cmd->add_option("--n", cfg.n, "power of the benchmark base (fateman 30, mp-sparse 12, poisson 3)");
    cmd->add_option("--coeff", cfg.coeff, "coefficient ring")
        ->check(CLI::IsMember({"double", "int", "rational"}));
    cmd->add_option("--algo", cfg.algo, "multiplication algorithm")
        ->check(CLI::IsMember({"auto", "dense", "hash"}));
    cmd->add_option("--threads", cfg.threads, "worker threads (dense algorithm only)")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--block-size", cfg.block_size, "terms per cache block (0 = automatic)");
    cmd->add_option("--hash-n", cfg.hash_n, "initial bucket count (0 = automatic)");
    cmd->add_option("--hash-m", cfg.hash_m, "bucket capacity");
    cmd->add_option("--hash-s", cfg.hash_s, "overflow threshold (0 = automatic)");
    cmd->add_option("--cpu-ghz", cfg.cpu_ghz,
                    "CPU frequency for ccpm (or env MULTBENCH_CPU_GHZ); never auto-detected");
    cmd->add_option("--seed", cfg.seed, "seed for generated inputs");
    cmd->add_option("--terms", cfg.terms, "term count of the generated Poisson base series");
    cmd->add_flag("--json", cfg.json, "emit one JSON object instead of the table row");
    cmd->add_option("--trace-file", cfg.trace_file, "write the monomial write trace as CSV");
    cmd->add_option("--truncate-degree", cfg.truncate_degree, "total-degree truncation limit")
        ->each([&cfg](const std::string &) { cfg.truncate_set = true; });
    cmd->add_option("--input", cfg.inputs, "polynomial/series text file (repeat for two factors)")
        ->expected(0, 2);
    cmd->add_option("--memory-gib", cfg.memory_gib, "machine-memory parameter for auto selection");
    cmd->add_option("--budget-gib", cfg.budget_gib, "explicit dense-array budget override");
    cmd->add_option("--density-threshold", cfg.density_threshold,
                    "minimum factor density for the dense algorithm");
    cmd->add_flag("--assert-disjoint", cfg.assert_disjoint,
                  "verify disjoint parallel write ranges at every column");
}

template <km::coefficient_ring C>
std::pair<km::laurent_polynomial<C>, km::laurent_polynomial<C>> make_factors(const cli_config &cfg)
{
    if (cfg.target == "fateman") {
        return km::gen_fateman<C>(cfg.power());
    }
    if (cfg.target == "mp-sparse") {
        return km::gen_mp_sparse<C>(cfg.power());
    }
    if (cfg.inputs.empty()) {
        throw std::invalid_argument("target 'input' needs --input");
    }
    std::ifstream f1(cfg.inputs[0]);
    if (!f1) {
        throw std::invalid_argument("cannot open '" + cfg.inputs[0] + "'");
    }
    auto p1 = km::parse_polynomial<C>(f1);
    if (cfg.inputs.size() == 1) {
        return {p1, p1};
    }
    std::ifstream f2(cfg.inputs[1]);
    if (!f2) {
        throw std::invalid_argument("cannot open '" + cfg.inputs[1] + "'");
    }
    return {p1, km::parse_polynomial<C>(f2)};
}

void emit_result(const km::bench_result &r, bool as_json)
{
    if (as_json) {
        nlohmann::ordered_json j;
        j["benchmark"] = r.benchmark;
        j["algorithm"] = r.algorithm;
        j["coefficient"] = r.coefficient;
        j["threads"] = r.threads;
        j["block_size"] = r.block_size;
        j["hash_buckets"] = r.hash_buckets;
        j["hash_bucket_capacity"] = r.hash_bucket_capacity;
        j["hash_overflow_threshold"] = r.hash_overflow_threshold;
        j["terms_in1"] = r.terms_in1;
        j["terms_in2"] = r.terms_in2;
        j["terms_out"] = r.terms_out;
        j["wall_seconds"] = r.wall_seconds;
        if (r.cpu_hz) {
            j["cpu_hz"] = *r.cpu_hz;
            j["ccpm"] = *r.ccpm;
        } else {
            j["cpu_hz"] = nullptr;
            j["ccpm"] = nullptr;
        }
        j["checksum"] = r.checksum;
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << r.benchmark << "  coeff=" << r.coefficient << "  algo=" << r.algorithm
              << "  threads=" << r.threads << "  block=" << r.block_size << '\n'
              << "  terms: " << r.terms_in1 << " x " << r.terms_in2 << " -> " << r.terms_out << '\n'
              << "  time:  " << r.wall_seconds << " s";
    if (r.ccpm) {
        std::cout << "   ccpm: " << *r.ccpm;
    } else {
        std::cout << "   ccpm: - (supply --cpu-ghz)";
    }
    std::cout << '\n' << "  checksum: " << r.checksum << " (" << r.terms_out << " terms)\n";
}

template <km::coefficient_ring C>
void write_poly_trace(const cli_config &cfg, const km::laurent_polynomial<C> &p1,
                      const km::laurent_polynomial<C> &p2, km::algo_kind algo,
                      const km::mult_options &opts, const km::block_plan &plan)
{
    const std::uint64_t pairs = std::uint64_t(p1.size()) * p2.size();
    if (pairs > 100000000ull) {
        throw std::invalid_argument("trace would have " + std::to_string(pairs)
                                    + " rows; refusing above 1e8");
    }
    const auto r1 = *km::support_ranges(p1);
    const auto r2 = *km::support_ranges(p2);
    const km::codec cd(km::hull_ranges(km::hull_ranges(r1, r2),
                                       km::product_ranges(r1, r2, km::combine_mode::additive)));
    const auto u1 = km::to_univariate(p1, cd);
    const auto u2 = km::to_univariate(p2, cd);
    const auto trace = algo == km::algo_kind::dense
                           ? km::write_trace(u1, u2, plan)
                           : km::write_trace_hash(u1, u2, opts.hash, plan);
    std::ofstream os(cfg.trace_file);
    if (!os) {
        throw std::invalid_argument("cannot open trace file '" + cfg.trace_file + "'");
    }
    km::write_trace_csv(trace, os);
}

template <km::coefficient_ring C>
int run_poly_bench(const cli_config &cfg)
{
    const auto [p1, p2] = make_factors<C>(cfg);
    if (p1.empty() || p2.empty()) {
        std::cerr << "error: zero-length factor\n";
        return 1;
    }
    const auto opts = cfg.options();
    const auto res = km::multiply(p1, p2, opts);

    km::bench_result r;
    r.benchmark = cfg.target + (cfg.target == "input" ? "" : " n=" + std::to_string(cfg.power()));
    r.algorithm = km::algo_name(res.algorithm);
    r.coefficient = km::coeff_traits<C>::name;
    r.threads = cfg.threads;
    r.block_size = res.plan.block_size;
    r.hash_buckets = opts.hash.initial_buckets;
    r.hash_bucket_capacity = opts.hash.bucket_capacity;
    r.hash_overflow_threshold = opts.hash.overflow_threshold;
    r.terms_in1 = p1.size();
    r.terms_in2 = p2.size();
    r.terms_out = res.product.size();
    r.wall_seconds = res.kernel_seconds;
    r.cpu_hz = cfg.cpu_hz();
    if (r.cpu_hz) {
        r.ccpm = km::compute_ccpm(r.wall_seconds, *r.cpu_hz, p1.size(), p2.size());
    }
    r.checksum = km::coeff_traits<C>::str(km::coefficient_sum(res.product));
    emit_result(r, cfg.json);

    if (!cfg.trace_file.empty()) {
        write_poly_trace(cfg, p1, p2, res.algorithm, opts, res.plan);
        if (!cfg.json) {
            std::cout << "  trace written to " << cfg.trace_file << '\n';
        }
    }
    return 0;
}

int run_poisson_bench(const cli_config &cfg)
{
    if (cfg.coeff != "double") {
        std::cerr << "error: the generated poisson benchmark uses double coefficients\n";
        return 1;
    }
    const auto series = km::gen_poisson_bench(cfg.seed, cfg.terms, cfg.power());
    if (series.empty()) {
        std::cerr << "error: zero-length factor\n";
        return 1;
    }
    const km::algo_kind backend = cfg.algo == "hash" ? km::algo_kind::hash : km::algo_kind::dense;
    const auto opts = cfg.options();
    const km::block_plan plan = cfg.block_size > 0 ? km::block_plan::with_size(cfg.block_size)
                                                   : km::block_plan{};

    const auto t0 = std::chrono::steady_clock::now();
    const auto prod = km::multiply_poisson(series, series, backend, opts.hash, plan);
    const auto t1 = std::chrono::steady_clock::now();

    km::bench_result r;
    r.benchmark = "poisson n=" + std::to_string(cfg.power()) + " seed=" + std::to_string(cfg.seed);
    r.algorithm = km::algo_name(backend);
    r.coefficient = "double";
    r.threads = 1;
    r.block_size = plan.block_size;
    r.hash_buckets = opts.hash.initial_buckets;
    r.hash_bucket_capacity = opts.hash.bucket_capacity;
    r.hash_overflow_threshold = opts.hash.overflow_threshold;
    r.terms_in1 = series.size();
    r.terms_in2 = series.size();
    r.terms_out = prod.size();
    r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.cpu_hz = cfg.cpu_hz();
    if (r.cpu_hz) {
        r.ccpm = km::compute_ccpm(r.wall_seconds, *r.cpu_hz, series.size(), series.size());
    }
    double sum = 0.0;
    for (const auto &t : prod.terms()) {
        sum += t.coeff;
    }
    r.checksum = km::coeff_traits<double>::str(sum);
    emit_result(r, cfg.json);
    return 0;
}

template <km::coefficient_ring C>
int run_poly_verify(const cli_config &cfg)
{
    const auto [p1, p2] = make_factors<C>(cfg);
    if (p1.empty() || p2.empty()) {
        std::cerr << "error: zero-length factor\n";
        return 1;
    }
    const std::uint64_t pairs = std::uint64_t(p1.size()) * p2.size();
    if (pairs > 10000000ull) {
        std::cerr << "error: " << pairs << " monomial pairs exceed the 1e7 verify limit; "
                  << "use a smaller --n\n";
        return 1;
    }
    auto res = km::multiply(p1, p2, cfg.options());
    auto expected = km::naive_multiply(p1, p2);
    if (cfg.truncate_set) {
        expected = km::filter_by_degree(expected, cfg.truncate_degree);
    }
    bool ok;
    if (std::string(km::coeff_traits<C>::name) == "double") {
        ok = km::poly_close(res.product, expected, 1e-12);
    } else {
        ok = km::poly_equal(res.product, expected);
    }
    std::cout << "verify " << cfg.target << " (" << km::algo_name(res.algorithm) << ", "
              << km::coeff_traits<C>::name << ", " << pairs << " pairs): "
              << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

int run_poisson_verify(const cli_config &cfg)
{
    const auto series = km::gen_poisson_bench(cfg.seed, cfg.terms, cfg.power());
    const km::algo_kind backend = cfg.algo == "hash" ? km::algo_kind::hash : km::algo_kind::dense;
    const auto prod = km::multiply_poisson(series, series, backend);
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> dist(-3.14159, 3.14159);
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> angles(series.num_trig_vars());
        for (auto &a : angles) {
            a = dist(rng);
        }
        const double lhs = km::evaluate(prod, angles);
        const double rhs = km::evaluate(series, angles) * km::evaluate(series, angles);
        if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs))) {
            ok = false;
        }
    }
    std::cout << "verify poisson (evaluation identity at 20 angle vectors): "
              << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

template <km::coefficient_ring C>
int run_poly_trace(const cli_config &cfg)
{
    const auto [p1, p2] = make_factors<C>(cfg);
    if (p1.empty() || p2.empty()) {
        std::cerr << "error: zero-length factor\n";
        return 1;
    }
    const auto opts = cfg.options();
    const km::algo_kind algo = cfg.algo == "hash" ? km::algo_kind::hash : km::algo_kind::dense;
    const km::block_plan plan = cfg.block_size > 0
                                    ? km::block_plan::with_size(cfg.block_size)
                                    : km::block_plan{};
    write_poly_trace(cfg, p1, p2, algo, opts, plan);
    std::cout << "trace written to " << cfg.trace_file << '\n';
    return 0;
}

template <typename F>
int dispatch_coeff(const std::string &coeff, F &&f)
{
    if (coeff == "int") {
        return f.template operator()<km::big_int>();
    }
    if (coeff == "rational") {
        return f.template operator()<km::big_rational>();
    }
    return f.template operator()<double>();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"sparse Laurent-polynomial and Poisson-series multiplication benchmarks"};
    app.require_subcommand(1);

    cli_config cfg;
    auto *bench = app.add_subcommand("bench", "run a benchmark and report timing/ccpm");
    add_common_options(bench, cfg);
    auto *verify = app.add_subcommand("verify", "check a benchmark against the naive oracle");
    add_common_options(verify, cfg);
    auto *trace = app.add_subcommand("trace", "emit the write-trace CSV of a multiplication");
    add_common_options(trace, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            if (cfg.target == "poisson") {
                return run_poisson_bench(cfg);
            }
            return dispatch_coeff(cfg.coeff, [&cfg]<typename C>() { return run_poly_bench<C>(cfg); });
        }
        if (verify->parsed()) {
            if (cfg.target == "poisson") {
                return run_poisson_verify(cfg);
            }
            return dispatch_coeff(cfg.coeff,
                                  [&cfg]<typename C>() { return run_poly_verify<C>(cfg); });
        }
        if (cfg.target == "poisson") {
            std::cerr << "error: trace applies to polynomial targets\n";
            return 1;
        }
        if (cfg.trace_file.empty()) {
            std::cerr << "error: trace needs --trace-file\n";
            return 1;
        }
        return dispatch_coeff(cfg.coeff, [&cfg]<typename C>() { return run_poly_trace<C>(cfg); });
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

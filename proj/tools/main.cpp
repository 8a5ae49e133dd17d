#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "zeroinit/errors.hpp"
#include "zeroinit/net.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    std::vector<std::string> configs;
    std::vector<std::string> overrides;
    std::string output_dir;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.configs, "JSON config file (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", opts.overrides,
                    "Override a config key, e.g. --set train.lr=0.05 (repeatable)");
    cmd->add_option("-o,--output-dir", opts.output_dir,
                    "Output directory (overrides ZERO_INIT_OUT and the config)");
    cmd->add_option("-j,--jobs", opts.jobs,
                    "Run multiple configs concurrently (isolated output dirs)")
        ->check(CLI::PositiveNumber);
}

zeroinit::cli::ExperimentConfig resolve_config(const std::string& path,
                                               const CommonOptions& opts,
                                               bool allow_output_override) {
    nlohmann::json doc = zeroinit::cli::load_config_file(path);
    for (const std::string& assignment : opts.overrides) {
        zeroinit::cli::apply_override(doc, assignment);
    }
    zeroinit::cli::ExperimentConfig cfg = zeroinit::cli::parse_config(doc);
    if (const char* env = std::getenv("ZERO_INIT_OUT"); env && *env) {
        cfg.output_dir = env;
    }
    if (!opts.output_dir.empty()) {
        if (!allow_output_override) {
            throw zeroinit::ConfigError(
                "--output-dir cannot be combined with multiple configs; give each config "
                "its own output_dir");
        }
        cfg.output_dir = opts.output_dir;
    }
    return cfg;
}

int classify_exception() {
    try {
        throw;
    } catch (const zeroinit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const zeroinit::DivergenceError& e) {
        std::cerr << "numeric divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const zeroinit::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const zeroinit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

template <typename Fn>
int run_command(const CommonOptions& opts, Fn&& fn) {
    const bool single = opts.configs.size() == 1;
    if (single) {
        try {
            fn(resolve_config(opts.configs.front(), opts, true));
            return kExitOk;
        } catch (...) {
            return classify_exception();
        }
    }

    // Fan-out: each config is an independent experiment with its own output
    // dir; worst exit code wins.
    std::vector<zeroinit::cli::ExperimentConfig> configs;
    try {
        for (const std::string& path : opts.configs) {
            configs.push_back(resolve_config(path, opts, false));
        }
    } catch (...) {
        return classify_exception();
    }

    std::vector<int> codes(configs.size(), kExitOk);
    std::size_t next = 0;
    std::mutex mutex;
    auto worker = [&] {
        while (true) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (next >= configs.size()) return;
                index = next++;
            }
            try {
                fn(configs[index]);
            } catch (...) {
                codes[index] = classify_exception();
            }
        }
    };
    const unsigned n_threads = std::min<unsigned>(opts.jobs, configs.size());
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < n_threads; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    int worst = kExitOk;
    for (int code : codes) worst = std::max(worst, code);
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic zeros-and-ones network initialization lab"};
    app.require_subcommand(1);

    CommonOptions init_opts, train_opts, theorem_opts, prune_opts, warmup_opts;

    CLI::App* init_dump = app.add_subcommand(
        "init-dump", "Write initialized weight matrices/kernels and a census");
    add_common(init_dump, init_opts);

    CLI::App* train = app.add_subcommand(
        "train", "Train a network; writes trace.csv, final weights and summary.json");
    add_common(train, train_opts);

    CLI::App* verify = app.add_subcommand(
        "verify-theorem",
        "Run the random / partial-identity / Hadamard arms and write verdict.json");
    add_common(verify, theorem_opts);

    CLI::App* prune = app.add_subcommand(
        "prune", "Magnitude-prune trained weights across fractions; writes curve.csv");
    add_common(prune, prune_opts);

    CLI::App* warmup = app.add_subcommand(
        "warmup-probe", "Record early gradient norms with and without lr warmup");
    add_common(warmup, warmup_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (init_dump->parsed()) return run_command(init_opts, zeroinit::cli::cmd_init_dump);
    if (train->parsed()) return run_command(train_opts, zeroinit::cli::cmd_train);
    if (verify->parsed()) return run_command(theorem_opts, zeroinit::cli::cmd_verify_theorem);
    if (prune->parsed()) return run_command(prune_opts, zeroinit::cli::cmd_prune);
    if (warmup->parsed()) return run_command(warmup_opts, zeroinit::cli::cmd_warmup_probe);
    return kExitConfig;
}

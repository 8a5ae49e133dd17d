#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeroinit/dataset.hpp"
#include "zeroinit/net.hpp"

namespace zeroinit::cli {

struct DataConfig {
    std::string source = "synthetic";  // synthetic | mnist | cache

    // mnist
    std::string images, labels, test_images, test_labels;
    std::size_t limit = 0;  // 0 = all samples
    bool standardize = false;

    // synthetic
    std::uint64_t seed = 7;
    std::size_t n_x = 8, n_y = 4, p = 256;
    double noise_std = 0.1;
    std::size_t test_p = 0;

    // cache
    std::string train_cache, test_cache;

    bool whiten = false;
};

struct AnalysisConfig {
    bool rank_trajectory = true;
    double rank_rel_tol = 1e-6;
    bool gradient_norms = true;
    bool isometry = false;
    std::size_t isometry_samples = 8;
    bool symmetry = false;
    bool snapshot_weights = false;
};

struct KernelRequest {
    std::size_t c_out = 1, c_in = 1, k = 1;
};

struct ExperimentConfig {
    NetworkSpec network;
    DataConfig data;
    TrainConfig train;
    std::size_t epochs = 0;  // when > 0, steps = epochs * batches per epoch
    AnalysisConfig analysis;
    std::string output_dir = "out";

    std::vector<KernelRequest> conv_kernels;  // init-dump only
    std::vector<double> prune_fractions = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::string weights_dir;        // prune: defaults to output_dir
    std::size_t probe_steps = 50;   // warmup-probe
};

/// Parses the single-document JSON config; unknown keys are rejected so typos
/// fail loudly. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);

nlohmann::json load_config_file(const std::string& path);

/// Applies a dotted-path override ("train.lr=0.05"); the value is parsed as
/// JSON with a string fallback.
void apply_override(nlohmann::json& doc, const std::string& assignment);

struct LoadedData {
    Dataset train;
    std::optional<Dataset> test;
};

LoadedData load_data(const DataConfig& cfg);

void cmd_init_dump(const ExperimentConfig& cfg);
void cmd_train(const ExperimentConfig& cfg);
void cmd_verify_theorem(const ExperimentConfig& cfg);
void cmd_prune(const ExperimentConfig& cfg);
void cmd_warmup_probe(const ExperimentConfig& cfg);

}  // namespace zeroinit::cli

#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "zeroinit/analysis.hpp"
#include "zeroinit/csv.hpp"
#include "zeroinit/prune.hpp"
#include "zeroinit/rng.hpp"
#include "zeroinit/svd.hpp"

namespace zeroinit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + std::string(key) + "': " + e.what());
    }
}

InitScheme parse_init(const json& obj) {
    reject_unknown_keys(obj, {"scheme", "constant", "gain", "seed", "strict_orthonormal"},
                        "init");
    const std::string name = get_or<std::string>(obj, "scheme", "zero");
    InitScheme scheme;
    scheme.kind = InitScheme::kind_from_name(name);
    scheme.seed = get_or<std::uint64_t>(obj, "seed", 0);
    scheme.strict_orthonormal = get_or<bool>(obj, "strict_orthonormal", false);
    switch (scheme.kind) {
        case InitScheme::Kind::Constant: {
            const double c = get_or<double>(obj, "constant", 0.0);
            if (!std::isfinite(c)) throw ConfigError("config: init.constant must be finite");
            scheme.constant_value = c;
            break;
        }
        case InitScheme::Kind::RandomFanIn:
            scheme.gain = get_or<double>(obj, "gain", std::sqrt(2.0));
            break;
        case InitScheme::Kind::RandomFanAvg:
            scheme.gain = get_or<double>(obj, "gain", 1.0);
            break;
        default:
            break;
    }
    return scheme;
}

NetworkSpec parse_network(const json& obj) {
    reject_unknown_keys(
        obj, {"layer_dims", "residual", "nonlinearity", "relu_zero_derivative", "init"},
        "network");
    NetworkSpec spec;
    if (!obj.contains("layer_dims")) throw ConfigError("config: network.layer_dims missing");
    spec.layer_dims = obj.at("layer_dims").get<std::vector<std::size_t>>();
    if (obj.contains("residual")) {
        const json& r = obj.at("residual");
        if (r.is_boolean()) {
            if (r.get<bool>() && spec.layer_dims.size() >= 2) {
                spec.residual.assign(spec.layer_dims.size() - 1, true);
            }
        } else {
            spec.residual = r.get<std::vector<bool>>();
        }
    }
    const std::string phi = get_or<std::string>(obj, "nonlinearity", "relu");
    if (phi == "relu") {
        spec.nonlinearity = Nonlinearity::Relu;
    } else if (phi == "identity") {
        spec.nonlinearity = Nonlinearity::Identity;
    } else {
        throw ConfigError("config: nonlinearity must be 'relu' or 'identity'");
    }
    spec.relu_zero_derivative = get_or<double>(obj, "relu_zero_derivative", 1.0);
    if (obj.contains("init")) spec.init = parse_init(obj.at("init"));
    spec.validate();
    return spec;
}

DataConfig parse_data(const json& obj) {
    reject_unknown_keys(obj, {"source", "mnist", "synthetic", "cache", "whiten"}, "data");
    DataConfig cfg;
    cfg.source = get_or<std::string>(obj, "source", "synthetic");
    cfg.whiten = get_or<bool>(obj, "whiten", false);
    if (obj.contains("mnist")) {
        const json& m = obj.at("mnist");
        reject_unknown_keys(
            m, {"images", "labels", "test_images", "test_labels", "limit", "standardize"},
            "data.mnist");
        cfg.images = get_or<std::string>(m, "images", "");
        cfg.labels = get_or<std::string>(m, "labels", "");
        cfg.test_images = get_or<std::string>(m, "test_images", "");
        cfg.test_labels = get_or<std::string>(m, "test_labels", "");
        cfg.limit = get_or<std::size_t>(m, "limit", 0);
        cfg.standardize = get_or<bool>(m, "standardize", false);
    }
    if (obj.contains("synthetic")) {
        const json& s = obj.at("synthetic");
        reject_unknown_keys(s, {"seed", "n_x", "n_y", "p", "noise_std", "test_p"},
                            "data.synthetic");
        cfg.seed = get_or<std::uint64_t>(s, "seed", 7);
        cfg.n_x = get_or<std::size_t>(s, "n_x", 8);
        cfg.n_y = get_or<std::size_t>(s, "n_y", 4);
        cfg.p = get_or<std::size_t>(s, "p", 256);
        cfg.noise_std = get_or<double>(s, "noise_std", 0.1);
        cfg.test_p = get_or<std::size_t>(s, "test_p", 0);
    }
    if (obj.contains("cache")) {
        const json& c = obj.at("cache");
        reject_unknown_keys(c, {"train", "test"}, "data.cache");
        cfg.train_cache = get_or<std::string>(c, "train", "");
        cfg.test_cache = get_or<std::string>(c, "test", "");
    }
    if (cfg.source != "synthetic" && cfg.source != "mnist" && cfg.source != "cache") {
        throw ConfigError("config: data.source must be synthetic, mnist or cache");
    }
    return cfg;
}

std::pair<TrainConfig, std::size_t> parse_train(const json& obj) {
    reject_unknown_keys(obj,
                        {"lr", "warmup_steps", "steps", "epochs", "batch", "log_every",
                         "reduction"},
                        "train");
    TrainConfig cfg;
    cfg.lr = get_or<double>(obj, "lr", 0.01);
    cfg.warmup_steps = get_or<std::size_t>(obj, "warmup_steps", 0);
    cfg.steps = get_or<std::size_t>(obj, "steps", 100);
    cfg.log_every = get_or<std::size_t>(obj, "log_every", 10);
    const std::string reduction = get_or<std::string>(obj, "reduction", "sum");
    if (reduction == "sum") {
        cfg.reduction = Reduction::Sum;
    } else if (reduction == "mean") {
        cfg.reduction = Reduction::Mean;
    } else {
        throw ConfigError("config: train.reduction must be 'sum' or 'mean'");
    }
    if (obj.contains("batch")) {
        const json& b = obj.at("batch");
        if (b.is_string()) {
            if (b.get<std::string>() != "full") {
                throw ConfigError("config: train.batch must be 'full' or an object");
            }
        } else {
            reject_unknown_keys(b, {"size", "shuffle_seed"}, "train.batch");
            cfg.batch.mode = BatchSpec::Mode::Mini;
            cfg.batch.size = get_or<std::size_t>(b, "size", 32);
            cfg.batch.shuffle_seed = get_or<std::uint64_t>(b, "shuffle_seed", 0);
        }
    }
    const std::size_t epochs = get_or<std::size_t>(obj, "epochs", 0);
    return {cfg, epochs};
}

AnalysisConfig parse_analysis(const json& obj) {
    reject_unknown_keys(obj,
                        {"rank_trajectory", "rank_rel_tol", "gradient_norms", "isometry",
                         "isometry_samples", "symmetry", "snapshot_weights"},
                        "analysis");
    AnalysisConfig cfg;
    cfg.rank_trajectory = get_or<bool>(obj, "rank_trajectory", true);
    cfg.rank_rel_tol = get_or<double>(obj, "rank_rel_tol", 1e-6);
    cfg.gradient_norms = get_or<bool>(obj, "gradient_norms", true);
    cfg.isometry = get_or<bool>(obj, "isometry", false);
    cfg.isometry_samples = get_or<std::size_t>(obj, "isometry_samples", 8);
    cfg.symmetry = get_or<bool>(obj, "symmetry", false);
    cfg.snapshot_weights = get_or<bool>(obj, "snapshot_weights", false);
    return cfg;
}

}  // namespace

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;  // plain string
    }
    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
        const std::size_t dot = path.find('.', begin);
        const std::string key = path.substr(begin, dot - begin);
        if (key.empty()) throw ConfigError("--set: empty key segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        begin = dot + 1;
    }
}

ExperimentConfig parse_config(const json& doc) {
    reject_unknown_keys(doc,
                        {"network", "data", "train", "analysis", "output_dir",
                         "conv_kernels", "prune_fractions", "weights_dir", "probe_steps"},
                        "top level");
    ExperimentConfig cfg;
    if (!doc.contains("network")) throw ConfigError("config: 'network' section missing");
    cfg.network = parse_network(doc.at("network"));
    if (doc.contains("data")) cfg.data = parse_data(doc.at("data"));
    if (doc.contains("train")) {
        auto [train, epochs] = parse_train(doc.at("train"));
        cfg.train = train;
        cfg.epochs = epochs;
    }
    if (doc.contains("analysis")) cfg.analysis = parse_analysis(doc.at("analysis"));
    cfg.output_dir = get_or<std::string>(doc, "output_dir", "out");
    if (doc.contains("conv_kernels")) {
        for (const json& k : doc.at("conv_kernels")) {
            reject_unknown_keys(k, {"c_out", "c_in", "k"}, "conv_kernels");
            KernelRequest req;
            req.c_out = get_or<std::size_t>(k, "c_out", 1);
            req.c_in = get_or<std::size_t>(k, "c_in", 1);
            req.k = get_or<std::size_t>(k, "k", 1);
            cfg.conv_kernels.push_back(req);
        }
    }
    if (doc.contains("prune_fractions")) {
        cfg.prune_fractions = doc.at("prune_fractions").get<std::vector<double>>();
    }
    cfg.weights_dir = get_or<std::string>(doc, "weights_dir", "");
    cfg.probe_steps = get_or<std::size_t>(doc, "probe_steps", 50);

    cfg.train.track_rank = cfg.analysis.rank_trajectory;
    cfg.train.rank_rel_tol = cfg.analysis.rank_rel_tol;
    cfg.train.track_grad_norms = cfg.analysis.gradient_norms;
    cfg.train.snapshot_weights = cfg.analysis.snapshot_weights;
    return cfg;
}

LoadedData load_data(const DataConfig& cfg) {
    LoadedData out;
    if (cfg.source == "mnist") {
        if (cfg.images.empty() || cfg.labels.empty()) {
            throw ConfigError("config: data.mnist.images/labels required for source=mnist");
        }
        std::optional<std::size_t> limit;
        if (cfg.limit > 0) limit = cfg.limit;
        out.train = load_mnist(cfg.images, cfg.labels, limit);
        if (!cfg.test_images.empty()) {
            out.test = load_mnist(cfg.test_images, cfg.test_labels, limit);
        }
        if (cfg.standardize) {
            standardize_in_place(out.train);
            if (out.test) standardize_in_place(*out.test);
        }
    } else if (cfg.source == "synthetic") {
        out.train = synthetic_teacher(cfg.seed, cfg.n_x, cfg.n_y, cfg.p, cfg.noise_std);
        if (cfg.test_p > 0) {
            out.test = synthetic_teacher(SplitMix64::derive(cfg.seed, 0x7e57), cfg.n_x,
                                         cfg.n_y, cfg.test_p, cfg.noise_std);
        }
    } else {  // cache
        if (cfg.train_cache.empty()) {
            throw ConfigError("config: data.cache.train required for source=cache");
        }
        out.train = load_cache(cfg.train_cache);
        if (!cfg.test_cache.empty()) out.test = load_cache(cfg.test_cache);
    }
    if (cfg.whiten) {
        out.train = whiten(out.train);
        if (out.test) out.test = whiten(*out.test);
    }
    return out;
}

namespace {

fs::path ensure_output_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output dir " + dir.string() + ": " + ec.message());
    return dir;
}

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

void write_trace_csv(const TrainingTrace& trace, const AnalysisConfig& analysis,
                     const fs::path& path) {
    const std::size_t layers = trace.spec.depth();
    std::vector<std::string> header = {"step", "lr", "loss"};
    if (analysis.gradient_norms) {
        for (std::size_t l = 1; l <= layers; ++l) header.push_back("grad_norm_" + std::to_string(l));
    }
    if (analysis.rank_trajectory) {
        for (std::size_t l = 1; l <= layers; ++l) header.push_back("num_rank_" + std::to_string(l));
        for (std::size_t l = 1; l <= layers; ++l) header.push_back("stable_rank_" + std::to_string(l));
    }
    CsvWriter writer(std::move(header));
    for (const TraceEntry& e : trace.entries) {
        std::vector<std::string> cells = {std::to_string(e.step), format_double(e.lr),
                                          format_double(e.loss)};
        if (analysis.gradient_norms) {
            for (std::size_t l = 0; l < layers; ++l) {
                cells.push_back(l < e.grad_norms.size() ? format_double(e.grad_norms[l]) : "");
            }
        }
        if (analysis.rank_trajectory) {
            for (std::size_t l = 0; l < layers; ++l) cells.push_back(std::to_string(e.num_ranks[l]));
            for (std::size_t l = 0; l < layers; ++l) cells.push_back(format_double(e.stable_ranks[l]));
        }
        writer.add_row(cells);
    }
    writer.write_file(path.string());
}

void write_weights(const Network& net, const fs::path& dir, const std::string& prefix) {
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        write_matrix_csv(net.weights[l],
                         (dir / (prefix + std::to_string(l + 1) + ".csv")).string());
    }
}

bool targets_are_one_hot(const Dataset& data) {
    for (std::size_t i = 0; i < data.count(); ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < data.target_dim(); ++j) {
            const double v = data.targets(i, j);
            if (v == 1.0) {
                ++ones;
            } else if (v != 0.0) {
                return false;
            }
        }
        if (ones != 1) return false;
    }
    return true;
}

std::size_t resolve_steps(const ExperimentConfig& cfg, std::size_t sample_count) {
    if (cfg.epochs == 0) return cfg.train.steps;
    std::size_t per_epoch = 1;
    if (cfg.train.batch.mode == BatchSpec::Mode::Mini) {
        per_epoch = (sample_count + cfg.train.batch.size - 1) / cfg.train.batch.size;
    }
    return cfg.epochs * per_epoch;
}

json rank_report_json(const RankReport& report) {
    json layers = json::array();
    for (const LayerRankTrajectory& l : report.layers) {
        json entry;
        entry["layer"] = l.layer + 1;
        entry["convention"] =
            l.convention == RankConvention::ResidualComponent ? "residual_component" : "raw";
        entry["bounded"] = l.bounded;
        if (l.bounded) {
            entry["bound"] = l.bound;
            entry["satisfied"] = l.all_satisfied;
        }
        entry["max_rank"] = l.max_rank;
        layers.push_back(entry);
    }
    return layers;
}

}  // namespace

void cmd_init_dump(const ExperimentConfig& cfg) {
    const fs::path dir = ensure_output_dir(cfg);
    const Network net = build(cfg.network);
    write_weights(net, dir, "weights_");

    Census total;
    for (const Matrix& w : net.weights) total += census(w);

    for (std::size_t i = 0; i < cfg.conv_kernels.size(); ++i) {
        const KernelRequest& req = cfg.conv_kernels[i];
        const Kernel4D kernel =
            zero_init_conv(req.c_out, req.c_in, req.k, cfg.network.init.strict_orthonormal);
        total += census(kernel);
        CsvWriter writer({"c_out", "c_in", "ky", "kx", "value"});
        for (std::size_t o = 0; o < kernel.c_out; ++o) {
            for (std::size_t c = 0; c < kernel.c_in; ++c) {
                for (std::size_t y = 0; y < kernel.k; ++y) {
                    for (std::size_t x = 0; x < kernel.k; ++x) {
                        writer.add_row({std::to_string(o), std::to_string(c),
                                        std::to_string(y), std::to_string(x),
                                        format_double(kernel.at(o, c, y, x))});
                    }
                }
            }
        }
        writer.write_file((dir / ("kernel_" + std::to_string(i + 1) + ".csv")).string());
    }

    json doc;
    doc["zeros"] = total.zeros;
    doc["ones"] = total.ones;
    doc["others"] = total.other_nonzero;
    doc["total"] = total.total();
    write_json(doc, dir / "census.json");
}

void cmd_train(const ExperimentConfig& cfg) {
    const fs::path dir = ensure_output_dir(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    LoadedData data = load_data(cfg.data);

    Network net = build(cfg.network);
    TrainConfig train_cfg = cfg.train;
    train_cfg.steps = resolve_steps(cfg, data.train.count());

    TrainingTrace trace;
    bool diverged = false;
    std::string divergence_message;
    try {
        trace = train(net, data.train, train_cfg);
    } catch (DivergenceError& e) {
        trace = std::move(e.partial_trace);
        diverged = true;
        divergence_message = e.what();
    }

    write_trace_csv(trace, cfg.analysis, dir / "trace.csv");
    write_weights(net, dir, "weights_final_");

    json summary;
    summary["steps"] = train_cfg.steps;
    summary["diverged"] = diverged;
    if (diverged) summary["divergence"] = divergence_message;
    std::size_t params = 0;
    for (const Matrix& w : net.weights) params += w.size();
    summary["parameters"] = params;
    if (!diverged) {
        summary["final_loss"] = loss(net, data.train, train_cfg.reduction);
        if (targets_are_one_hot(data.train)) {
            summary["train_accuracy"] = classify_accuracy(net, data.train);
        }
        if (data.test) {
            summary["final_test_loss"] = loss(net, *data.test, train_cfg.reduction);
            if (targets_are_one_hot(*data.test)) {
                summary["test_accuracy"] = classify_accuracy(net, *data.test);
            }
        }
        if (cfg.analysis.rank_trajectory && !trace.entries.empty()) {
            summary["rank_trajectory"] = rank_report_json(
                rank_trajectory(trace, cfg.network.input_dim(), cfg.network.output_dim()));
        }
        if (cfg.analysis.isometry) {
            std::vector<Vector> samples;
            const std::size_t n =
                std::min<std::size_t>(cfg.analysis.isometry_samples, data.train.count());
            for (std::size_t i = 0; i < n; ++i) {
                samples.emplace_back(data.train.inputs.row_data(i),
                                     data.train.inputs.row_data(i) + data.train.input_dim());
            }
            const IsometryReport iso = isometry_report(net, samples);
            summary["isometry"] = {{"min_sigma", iso.min_sigma},
                                   {"max_sigma", iso.max_sigma},
                                   {"mean_sigma", iso.mean_sigma},
                                   {"samples", iso.samples}};
        }
        if (cfg.analysis.symmetry) {
            json sym = json::array();
            for (std::size_t l = 0; l < net.weights.size(); ++l) {
                try {
                    const SymmetryCorrelations corr = symmetry_correlations(net.weights[l]);
                    sym.push_back({{"layer", l + 1},
                                   {"c_f", corr.c_f},
                                   {"c_b", corr.c_b},
                                   {"rows_excluded", corr.rows_excluded},
                                   {"cols_excluded", corr.cols_excluded}});
                } catch (const DomainError&) {
                    sym.push_back({{"layer", l + 1}, {"all_zero", true}});
                }
            }
            summary["symmetry"] = sym;
        }
    }
    write_json(summary, dir / "summary.json");

    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "train: " << train_cfg.steps << " steps in " << elapsed << " s\n";
    if (diverged) throw DivergenceError(divergence_message, {});
}

void cmd_verify_theorem(const ExperimentConfig& cfg) {
    const fs::path dir = ensure_output_dir(cfg);
    LoadedData data = load_data(cfg.data);
    const std::size_t n_x = cfg.network.input_dim();
    const std::size_t n_y = cfg.network.output_dim();

    struct Arm {
        const char* name;
        InitScheme scheme;
    };
    const Arm arms[] = {
        {"random", InitScheme::kaiming(cfg.network.init.seed)},
        {"partial_identity", InitScheme::partial_identity_only()},
        {"hadamard", InitScheme::zero()},
    };

    json verdict;
    verdict["n_x"] = n_x;
    verdict["n_y"] = n_y;
    verdict["rank_rel_tol"] = cfg.analysis.rank_rel_tol;

    for (const Arm& arm : arms) {
        NetworkSpec spec = cfg.network;
        spec.init = arm.scheme;
        Network net = build(spec);

        json entry;
        std::vector<std::size_t> init_ranks;
        bool full_rank = true;
        for (std::size_t l = 0; l < net.weights.size(); ++l) {
            const std::size_t r =
                numeric_rank(net.weights[l], cfg.analysis.rank_rel_tol);
            init_ranks.push_back(r);
            full_rank = full_rank &&
                        r == std::min(net.weights[l].rows(), net.weights[l].cols());
        }
        entry["rank_at_init"] = init_ranks;
        entry["full_rank_at_init"] = full_rank;

        TrainConfig train_cfg = cfg.train;
        train_cfg.steps = resolve_steps(cfg, data.train.count());
        train_cfg.track_rank = true;
        TrainingTrace trace = train(net, data.train, train_cfg);

        const fs::path arm_dir = dir / ("arm_" + std::string(arm.name));
        std::error_code ec;
        fs::create_directories(arm_dir, ec);
        if (ec) throw IoError("cannot create " + arm_dir.string());
        AnalysisConfig arm_analysis = cfg.analysis;
        arm_analysis.rank_trajectory = true;
        write_trace_csv(trace, arm_analysis, arm_dir / "trace.csv");

        const RankReport report = rank_trajectory(trace, n_x, n_y);
        entry["layers"] = rank_report_json(report);
        std::size_t max_middle = 0;
        bool middle_bounded = true;
        for (const LayerRankTrajectory& l : report.layers) {
            if (l.layer == 0 || l.layer + 1 == report.layers.size()) continue;
            max_middle = std::max(max_middle, l.max_rank);
            if (l.bounded) middle_bounded = middle_bounded && l.all_satisfied;
        }
        entry["max_middle_rank"] = max_middle;
        entry["bound"] = n_x;
        entry["bound_satisfied"] = middle_bounded;
        entry["broken"] = max_middle > n_x;
        verdict["arms"][arm.name] = entry;
    }
    write_json(verdict, dir / "verdict.json");
}

void cmd_prune(const ExperimentConfig& cfg) {
    const fs::path dir = ensure_output_dir(cfg);
    const fs::path weights_dir(cfg.weights_dir.empty() ? cfg.output_dir : cfg.weights_dir);

    Network net = build(cfg.network);
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const fs::path path = weights_dir / ("weights_final_" + std::to_string(l + 1) + ".csv");
        if (!fs::exists(path)) {
            throw IoError("prune: trained weights not found at " + path.string());
        }
        Matrix w = read_matrix_csv(path.string());
        if (w.rows() != net.weights[l].rows() || w.cols() != net.weights[l].cols()) {
            throw FormatError("prune: " + path.string() + " has shape " +
                              std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                              ", expected " + std::to_string(net.weights[l].rows()) + "x" +
                              std::to_string(net.weights[l].cols()));
        }
        net.weights[l] = std::move(w);
    }

    LoadedData data = load_data(cfg.data);
    const Dataset& eval = data.test ? *data.test : data.train;

    CsvWriter writer({"fraction", "kept_fraction", "accuracy"});
    for (double fraction : cfg.prune_fractions) {
        auto [pruned, mask] = magnitude_prune(net, fraction);
        const double acc = classify_accuracy(pruned, eval);
        writer.add_row({format_double(fraction), format_double(mask.kept_fraction),
                        format_double(acc)});
    }
    writer.write_file((dir / "curve.csv").string());
}

void cmd_warmup_probe(const ExperimentConfig& cfg) {
    const fs::path dir = ensure_output_dir(cfg);
    LoadedData data = load_data(cfg.data);

    struct ProbeArm {
        const char* name;
        std::size_t warmup_steps;
    };
    const ProbeArm arms[] = {
        {"warmup", cfg.train.warmup_steps ? cfg.train.warmup_steps : 20},
        {"none", 0},
    };

    CsvWriter writer({"arm", "step", "lr", "grad_norm_1"});
    for (const ProbeArm& arm : arms) {
        Network net = build(cfg.network);
        TrainConfig probe_cfg = cfg.train;
        probe_cfg.steps = cfg.probe_steps;
        probe_cfg.warmup_steps = arm.warmup_steps;
        probe_cfg.log_every = 1;
        probe_cfg.track_rank = false;
        probe_cfg.track_grad_norms = true;
        probe_cfg.snapshot_weights = false;

        TrainingTrace trace;
        try {
            trace = train(net, data.train, probe_cfg);
        } catch (DivergenceError& e) {
            trace = std::move(e.partial_trace);  // explosion is the measured phenomenon
        }
        for (const TraceEntry& e : trace.entries) {
            writer.add_row({arm.name, std::to_string(e.step), format_double(e.lr),
                            e.grad_norms.empty() ? "" : format_double(e.grad_norms.front())});
        }
    }
    writer.write_file((dir / "gradnorms.csv").string());
}

}  // namespace zeroinit::cli

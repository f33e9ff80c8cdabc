#include "dtsne/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>

#include "dtsne/embedder.hpp"
#include "dtsne/io.hpp"
#include "dtsne/metrics.hpp"
#include "dtsne/svg.hpp"
#include "dtsne/synthgen.hpp"

namespace dtsne::cli {

namespace {

std::string format_value(const std::optional<double>& v) {
    if (!v) {
        return "undefined";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return buf;
}

struct GenerateArgs {
    std::string preset;
    std::uint64_t seed = 0;
    std::string out;
    std::string labels;
    int clusters = 0;
    int dim = 0;
    std::vector<int> samples;
    std::vector<double> scales;
    std::string distribution = "gaussian";
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    synthgen::ClusterSpec spec;
    if (!a.preset.empty()) {
        spec = synthgen::preset(a.preset, a.seed);
    } else {
        if (a.distribution != "gaussian" && a.distribution != "uniform") {
            throw Error(ErrorCode::SpecInvalid, "distribution must be gaussian or uniform");
        }
        spec.distribution =
            a.distribution == "gaussian" ? synthgen::Distribution::GAUSSIAN : synthgen::Distribution::UNIFORM;
        spec.n_clusters = a.clusters;
        spec.dim = a.dim;
        spec.samples_per_cluster = a.samples;
        spec.scales = a.scales;
        spec.seed = a.seed;
        spec.name = "custom";
    }
    const Dataset data = synthgen::generate(spec);
    io::dataset_to_tsv(data, a.out);
    if (!a.labels.empty()) {
        io::write_labels(*data.labels, a.labels);
    }

    out << "n=" << data.n() << " m=" << data.m() << " clusters=" << spec.n_clusters << "\n";
    for (int c = 0; c < spec.n_clusters; ++c) {
        out << "cluster " << c << ": samples=" << spec.samples_per_cluster[static_cast<std::size_t>(c)]
            << " scale=" << spec.scales[static_cast<std::size_t>(c)] << "\n";
    }
    return kOk;
}

struct EmbedArgs {
    std::string in;
    std::string out;
    std::string method = "dtsne";
    std::string kl_trace;
    EmbeddingConfig config;
    double learning_rate = 0;
};

int cmd_embed(EmbedArgs a, std::ostream& out, std::ostream& err) {
    a.config.method = parse_method(a.method);
    if (a.learning_rate > 0) {
        a.config.learning_rate = a.learning_rate;
    }
    const Dataset data = io::dataset_from_tsv(a.in);
    a.config.validate_for(data);

    const auto start = std::chrono::steady_clock::now();
    const auto run = embedder::run_embedding(data, a.config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (run.unconverged_sigma_rows > 0) {
        err << "warning: bandwidth search did not reach the target perplexity for " << run.unconverged_sigma_rows
            << " rows\n";
    }
    io::embedding_to_tsv(run.embedding, a.out);
    if (!a.kl_trace.empty()) {
        io::TsvTable trace;
        trace.n_cols = 2;
        for (std::size_t i = 0; i < run.state.kl_trace.size(); ++i) {
            trace.rows.push_back({static_cast<double>(run.state.kl_iters[i]), run.state.kl_trace[i]});
        }
        io::write_tsv(trace, a.kl_trace);
    }

    const std::optional<double> kl =
        run.state.kl_trace.empty() ? std::nullopt : std::optional<double>(run.state.kl_trace.back());
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", seconds);
    out << "kl=" << format_value(kl) << " runtime_s=" << secs << " n=" << data.n() << " method=" << a.method
        << " fingerprint=" << run.embedding.config_fingerprint << "\n";
    return kOk;
}

int cmd_evaluate(const std::string& data_path, const std::string& emb_path, std::optional<int> k, std::ostream& out,
                 std::ostream& err) {
    const Dataset data = io::dataset_from_tsv(data_path);
    const Matrix low = io::read_tsv(emb_path).to_matrix();
    if (low.rows() != data.n()) {
        throw Error(ErrorCode::LengthMismatch, "data has " + std::to_string(data.n()) + " rows but embedding has " +
                                                   std::to_string(low.rows()));
    }
    const auto report = metrics::evaluate(data.points, low, k);
    if (report.k_clamped) {
        err << "warning: k clamped to " << report.k_neighbors << "\n";
    }
    if (!report.rho_r) {
        err << "warning: rho_r undefined (a k-th neighbour radius is zero)\n";
    }
    out << "rho=" << format_value(report.rho_global) << " rho_knn=" << format_value(report.rho_knn)
        << " rho_r=" << format_value(report.rho_r) << " k=" << report.k_neighbors << "\n";
    out << "spearman_rho=" << format_value(report.spearman_global)
        << " spearman_rho_knn=" << format_value(report.spearman_knn)
        << " spearman_rho_r=" << format_value(report.spearman_r) << "\n";
    return kOk;
}

int cmd_plot(const std::string& emb_path, const std::string& label_path, const std::string& out_path,
             const svg::PlotSpec& spec) {
    const auto table = io::read_tsv(emb_path);
    if (table.n_cols != 2) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "plot needs a 2-column embedding, got " + std::to_string(table.n_cols) + " columns");
    }
    std::optional<std::vector<int>> labels;
    if (!label_path.empty()) {
        labels = io::read_labels(label_path);
    }
    const std::string doc = svg::scatter(table.to_matrix(), labels, spec);
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << doc)) {
        throw Error(ErrorCode::IoError, "cannot write " + out_path);
    }
    return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::RaggedRows:
        return kIo;
    case ErrorCode::NonFiniteIterate:
        return kNumerical;
    default:
        return kUsage;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Density-preserving t-SNE: generate benchmarks, embed, evaluate, plot", "dtsne"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic benchmark dataset");
    auto* preset_opt = generate->add_option("--preset", gen.preset, "Preset name (2d-density, 2d-samples, g3s, g3d, g10d, u5d)");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--out", gen.out, "Output data TSV")->required();
    generate->add_option("--labels", gen.labels, "Output label file");
    auto* clusters_opt = generate->add_option("--clusters", gen.clusters, "Number of clusters (custom spec)");
    generate->add_option("--dim", gen.dim, "Dimension (custom spec)");
    generate->add_option("--samples", gen.samples, "Samples per cluster (custom spec)")->delimiter(',');
    generate->add_option("--scales", gen.scales, "Scale per cluster (custom spec)")->delimiter(',');
    generate->add_option("--distribution", gen.distribution, "gaussian or uniform (custom spec)");
    preset_opt->excludes(clusters_opt);

    EmbedArgs emb;
    auto* embed = app.add_subcommand("embed", "Embed a TSV dataset with tsne or dtsne");
    embed->add_option("--in", emb.in, "Input data TSV")->required();
    embed->add_option("--out", emb.out, "Output embedding TSV")->required();
    embed->add_option("--method", emb.method, "tsne or dtsne")->capture_default_str();
    embed->add_option("--perplexity", emb.config.perplexity, "Target perplexity")->capture_default_str();
    embed->add_option("--iters", emb.config.iterations, "Iterations")->capture_default_str();
    embed->add_option("--learning-rate", emb.learning_rate, "Learning rate (default n/12)");
    embed->add_option("--seed", emb.config.seed, "Seed")->capture_default_str();
    embed->add_option("--pca-dims", emb.config.pca_input_dims, "Reduce input to this many components")
        ->capture_default_str();
    embed->add_option("--out-dim", emb.config.out_dim, "Embedding dimension (2 or 3)")->capture_default_str();
    embed->add_option("--exaggeration", emb.config.exaggeration_factor, "Early exaggeration factor")
        ->capture_default_str();
    embed->add_option("--exaggeration-iters", emb.config.exaggeration_iters, "Early exaggeration iterations")
        ->capture_default_str();
    embed->add_option("--kl-trace", emb.kl_trace, "Write (iteration, KL) pairs to this TSV");

    std::string eval_data, eval_emb;
    std::optional<int> eval_k;
    auto* evaluate = app.add_subcommand("evaluate", "Score an embedding against its original data");
    evaluate->add_option("--data", eval_data, "Original data TSV")->required();
    evaluate->add_option("--embedding", eval_emb, "Embedding TSV")->required();
    evaluate->add_option("--k", eval_k, "Neighbourhood size (default min(100, n-1))");

    std::string plot_emb, plot_labels, plot_out;
    svg::PlotSpec plot_spec;
    bool no_color = false;
    auto* plot = app.add_subcommand("plot", "Render a 2D embedding as SVG");
    plot->add_option("--embedding", plot_emb, "Embedding TSV")->required();
    plot->add_option("--labels", plot_labels, "Label file");
    plot->add_option("--out", plot_out, "Output SVG")->required();
    plot->add_option("--width", plot_spec.width_px, "Width in px")->capture_default_str();
    plot->add_option("--height", plot_spec.height_px, "Height in px")->capture_default_str();
    plot->add_option("--radius", plot_spec.point_radius_px, "Point radius in px")->capture_default_str();
    plot->add_option("--opacity", plot_spec.opacity, "Point opacity")->capture_default_str();
    plot->add_flag("--no-color", no_color, "Ignore labels when coloring");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*generate) {
            if (gen.preset.empty() && gen.clusters == 0) {
                err << "error: give --preset or a custom spec (--clusters, --dim, --samples, --scales)\n";
                return kUsage;
            }
            return cmd_generate(gen, out);
        }
        if (*embed) {
            return cmd_embed(emb, out, err);
        }
        if (*evaluate) {
            return cmd_evaluate(eval_data, eval_emb, eval_k, out, err);
        }
        if (*plot) {
            plot_spec.color_by_label = !no_color;
            return cmd_plot(plot_emb, plot_labels, plot_out, plot_spec);
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kUsage;
}

}  // namespace dtsne::cli

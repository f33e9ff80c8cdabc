#include "dtsne/core.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

namespace dtsne {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::LabelLengthMismatch: return "LabelLengthMismatch";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonFiniteIterate: return "NonFiniteIterate";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    }
    return "Unknown";
}

std::string_view to_string(Method method) {
    return method == Method::TSNE ? "tsne" : "dtsne";
}

Method parse_method(std::string_view text) {
    if (text == "tsne") {
        return Method::TSNE;
    }
    if (text == "dtsne") {
        return Method::DTSNE;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(text) + "' (expected tsne or dtsne)");
}

void EmbeddingConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
    if (!(perplexity > 0) || !std::isfinite(perplexity)) {
        fail("perplexity must be positive");
    }
    if (iterations <= 0) {
        fail("iterations must be positive");
    }
    if (learning_rate && !(*learning_rate > 0 && std::isfinite(*learning_rate))) {
        fail("learning rate must be positive");
    }
    if (!(momentum_early >= 0 && momentum_early < 1) || !(momentum_late >= 0 && momentum_late < 1)) {
        fail("momentum must lie in [0, 1)");
    }
    if (momentum_switch_iter <= 0 || momentum_switch_iter > iterations) {
        fail("momentum switch iteration must lie in [1, iterations]");
    }
    if (!(exaggeration_factor >= 1) || !std::isfinite(exaggeration_factor)) {
        fail("exaggeration factor must be >= 1");
    }
    if (exaggeration_iters < 0 || exaggeration_iters > iterations) {
        fail("exaggeration iterations must lie in [0, iterations]");
    }
    if (pca_input_dims <= 0) {
        fail("PCA input dimensions must be positive");
    }
    if (out_dim != 2 && out_dim != 3) {
        fail("output dimension must be 2 or 3");
    }
}

void EmbeddingConfig::validate_for(const Dataset& data) const {
    validate();
    if (!(perplexity < static_cast<double>(data.n()))) {
        throw Error(ErrorCode::InvalidConfig,
                    "perplexity " + std::to_string(perplexity) + " must be smaller than the number of samples (" +
                        std::to_string(data.n()) + ")");
    }
}

double EmbeddingConfig::resolved_learning_rate(Eigen::Index n) const {
    return learning_rate ? *learning_rate : static_cast<double>(n) / 12.0;
}

const Dataset& validate_dataset(const Dataset& data) {
    if (data.n() < 2) {
        throw Error(ErrorCode::TooFewSamples, "dataset needs at least 2 samples, got " + std::to_string(data.n()));
    }
    if (data.m() < 1) {
        throw Error(ErrorCode::TooFewSamples, "dataset needs at least 1 feature");
    }
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        for (Eigen::Index j = 0; j < data.m(); ++j) {
            if (!std::isfinite(data.points(i, j))) {
                throw Error(ErrorCode::NonFinite, "non-finite value at row " + std::to_string(i + 1) + ", column " +
                                                      std::to_string(j + 1));
            }
        }
    }
    if (data.labels && static_cast<Eigen::Index>(data.labels->size()) != data.n()) {
        throw Error(ErrorCode::LabelLengthMismatch, "got " + std::to_string(data.labels->size()) + " labels for " +
                                                        std::to_string(data.n()) + " samples");
    }
    return data;
}

namespace {

// 64-bit FNV-1a.
class Fnv1a {
public:
    void bytes(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ULL;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string config_fingerprint(const EmbeddingConfig& config, const Dataset& data) {
    Fnv1a h;
    h.u64(static_cast<std::uint64_t>(config.method));
    h.f64(config.perplexity);
    h.u64(static_cast<std::uint64_t>(config.iterations));
    h.f64(config.resolved_learning_rate(data.n()));
    h.f64(config.momentum_early);
    h.f64(config.momentum_late);
    h.u64(static_cast<std::uint64_t>(config.momentum_switch_iter));
    h.f64(config.exaggeration_factor);
    h.u64(static_cast<std::uint64_t>(config.exaggeration_iters));
    h.u64(static_cast<std::uint64_t>(config.pca_input_dims));
    h.u64(config.seed);
    h.u64(static_cast<std::uint64_t>(config.out_dim));
    h.u64(static_cast<std::uint64_t>(data.n()));
    h.u64(static_cast<std::uint64_t>(data.m()));
    h.bytes(data.points.data(), sizeof(double) * static_cast<std::size_t>(data.points.size()));

    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.digest()));
    return buf;
}

}  // namespace dtsne

#include "dtsne/synthgen.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace dtsne::synthgen {

namespace {

constexpr std::array<std::array<double, 2>, 3> kFigureCenters{{{10.0, 0.0}, {0.0, 15.0}, {-10.0, 0.0}}};

std::mt19937_64 cluster_stream(std::uint64_t seed, int cluster) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffULL), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(cluster)};
    return std::mt19937_64(seq);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::SpecInvalid, what); }

}  // namespace

void ClusterSpec::validate() const {
    if (n_clusters < 1) {
        invalid("need at least one cluster");
    }
    if (dim < 1) {
        invalid("dimension must be positive");
    }
    if (static_cast<int>(samples_per_cluster.size()) != n_clusters) {
        invalid("expected " + std::to_string(n_clusters) + " sample counts, got " +
                std::to_string(samples_per_cluster.size()));
    }
    if (static_cast<int>(scales.size()) != n_clusters) {
        invalid("expected " + std::to_string(n_clusters) + " scales, got " + std::to_string(scales.size()));
    }
    for (int s : samples_per_cluster) {
        if (s < 1) {
            invalid("sample counts must be positive");
        }
    }
    for (double s : scales) {
        if (!(s > 0) || !std::isfinite(s)) {
            invalid("scales must be positive and finite");
        }
    }
    if (center_law == CenterLaw::FIXED_2D) {
        if (dim != 2) {
            invalid("fixed centers require dim = 2");
        }
        if (static_cast<int>(fixed_centers.size()) != n_clusters) {
            invalid("expected " + std::to_string(n_clusters) + " fixed centers");
        }
    }
    if (std::accumulate(samples_per_cluster.begin(), samples_per_cluster.end(), 0LL) < 2) {
        invalid("a dataset needs at least two samples");
    }
}

Dataset generate(const ClusterSpec& spec) {
    spec.validate();
    const Eigen::Index total = std::accumulate(spec.samples_per_cluster.begin(), spec.samples_per_cluster.end(), 0LL);

    Dataset data;
    data.points.resize(total, spec.dim);
    data.labels.emplace();
    data.labels->reserve(static_cast<std::size_t>(total));
    data.name = spec.name;

    const double half_width = std::sqrt(3.0);
    Eigen::Index row = 0;
    for (int c = 0; c < spec.n_clusters; ++c) {
        auto rng = cluster_stream(spec.seed, c);

        std::vector<double> center(static_cast<std::size_t>(spec.dim));
        if (spec.center_law == CenterLaw::FIXED_2D) {
            center = {spec.fixed_centers[static_cast<std::size_t>(c)][0],
                      spec.fixed_centers[static_cast<std::size_t>(c)][1]};
        } else {
            std::uniform_real_distribution<double> law(0.0, 50.0);
            for (auto& v : center) {
                v = law(rng);
            }
        }

        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> uniform(-half_width, half_width);
        const double scale = spec.scales[static_cast<std::size_t>(c)];
        for (int s = 0; s < spec.samples_per_cluster[static_cast<std::size_t>(c)]; ++s, ++row) {
            for (int j = 0; j < spec.dim; ++j) {
                const double z = spec.distribution == Distribution::GAUSSIAN ? normal(rng) : uniform(rng);
                data.points(row, j) = center[static_cast<std::size_t>(j)] + scale * z;
            }
            data.labels->push_back(c);
        }
    }
    return data;
}

ClusterSpec preset(std::string_view name, std::uint64_t seed) {
    ClusterSpec spec;
    spec.seed = seed;
    spec.name = std::string(name);
    auto figure = [&](std::vector<int> samples, std::vector<double> scales) {
        spec.n_clusters = 3;
        spec.dim = 2;
        spec.samples_per_cluster = std::move(samples);
        spec.scales = std::move(scales);
        spec.center_law = CenterLaw::FIXED_2D;
        spec.fixed_centers.assign(kFigureCenters.begin(), kFigureCenters.end());
    };

    if (name == "2d-density") {
        figure({300, 300, 300}, {1, 2, 4});
    } else if (name == "2d-samples") {
        figure({100, 200, 500}, {2, 2, 2});
    } else if (name == "g3s") {
        spec.n_clusters = 3;
        spec.dim = 50;
        spec.samples_per_cluster = {200, 400, 600};
        spec.scales = {2, 2, 2};
    } else if (name == "g3d") {
        spec.n_clusters = 3;
        spec.dim = 50;
        spec.samples_per_cluster = {300, 300, 300};
        spec.scales = {2, 4, 8};
    } else if (name == "g10d") {
        spec.n_clusters = 10;
        spec.dim = 50;
        spec.samples_per_cluster.assign(10, 200);
        spec.scales = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    } else if (name == "u5d") {
        spec.distribution = Distribution::UNIFORM;
        spec.n_clusters = 5;
        spec.dim = 150;
        spec.samples_per_cluster.assign(5, 500);
        spec.scales = {1, 2, 4, 6, 8};
    } else {
        std::string known;
        for (const auto& p : preset_names()) {
            known += known.empty() ? p : ", " + p;
        }
        throw Error(ErrorCode::SpecInvalid, "unknown preset '" + std::string(name) + "'; known presets: " + known);
    }
    return spec;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"2d-density", "2d-samples", "g3s", "g3d", "g10d", "u5d"};
    return names;
}

}  // namespace dtsne::synthgen

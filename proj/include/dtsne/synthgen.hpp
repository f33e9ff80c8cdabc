#ifndef DTSNE_SYNTHGEN_HPP
#define DTSNE_SYNTHGEN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dtsne/core.hpp"

namespace dtsne::synthgen {

enum class Distribution { GAUSSIAN, UNIFORM };
enum class CenterLaw { UNIFORM_0_50, FIXED_2D };

/**
 * @brief Recipe for a mixture of unit-variance clusters.
 *
 * Cluster c draws its center and then its samples from its own random
 * stream, seeded by std::seed_seq{seed_low32, seed_high32, c}; adding a
 * cluster never changes the ones before it.
 */
struct ClusterSpec {
    Distribution distribution = Distribution::GAUSSIAN;
    int n_clusters = 1;
    int dim = 2;
    std::vector<int> samples_per_cluster;
    std::vector<double> scales;
    CenterLaw center_law = CenterLaw::UNIFORM_0_50;
    std::vector<std::array<double, 2>> fixed_centers;
    std::uint64_t seed = 0;
    std::string name;

    /// Throws SpecInvalid.
    void validate() const;
};

/**
 * Draws every cluster: center (each coordinate U(0, 50), or the fixed 2D
 * center), then samples center + scale * z with z standard normal or
 * uniform on [-sqrt(3), sqrt(3)] per coordinate. Labels are cluster indices.
 */
Dataset generate(const ClusterSpec& spec);

/// "2d-density", "2d-samples", "g3s", "g3d", "g10d", "u5d". Throws SpecInvalid for other names.
ClusterSpec preset(std::string_view name, std::uint64_t seed);

const std::vector<std::string>& preset_names();

}  // namespace dtsne::synthgen

#endif

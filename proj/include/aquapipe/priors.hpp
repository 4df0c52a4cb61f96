/**
 * @file priors.hpp
 * @brief Dehazing priors: dark channel, airlight, transmission, restoration,
 *        multi-scale dark channel and red-channel compensation
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <array>
#include <optional>
#include <vector>

namespace aquapipe::priors {

struct TransmissionMap {
    RealPlane t;            ///< per-pixel transmission, clamped to [floor, 1]
    double floor = 0.1;
};

/// Per-channel ambient backscatter color, each component in [0,1].
struct AtmosphericLight {
    std::array<double, 3> a{};
};

struct DcpParams {
    int patch_radius = 7;              ///< Omega is (2r+1)^2
    double omega = 0.95;               ///< haze removal strength, (0,1]
    double t_floor = 0.1;              ///< (0,1)
    double airlight_percentile = 0.001;  ///< (0, 0.05]

    void validate() const;
};

struct MudcpParams {
    std::vector<int> radii{3, 7, 15};
    std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    void validate() const;
};

/// min over channels, then min over the reflected (2r+1)^2 patch.
RealPlane dark_channel(const ImageBuffer& img, int radius);

/**
 * Channelwise mean of the pixels whose dark-channel values rank in the top
 * `percentile` fraction (at least one pixel); ties go to the earlier pixel
 * in row-major order.
 */
AtmosphericLight estimate_airlight(const ImageBuffer& img, const RealPlane& dark, double percentile);

/// t = clamp(1 - omega * dark, t_floor, 1).
TransmissionMap transmission(const RealPlane& dark, double omega, double t_floor = 0.1);

/// J = (I - A) / max(t, floor) + A per channel, clamped to [0,1].
ImageBuffer restore(const ImageBuffer& img, const TransmissionMap& t, const AtmosphericLight& A);

/// Weighted mean of the dark channels at several patch radii.
RealPlane mudcp_dark(const ImageBuffer& img, const std::vector<int>& radii, const std::vector<double>& weights);

/// Full restoration chain driven by a given dark channel.
ImageBuffer restore_from_dark(const ImageBuffer& img, const RealPlane& dark, const DcpParams& p);

/// Dark channel -> airlight -> transmission -> restore.
ImageBuffer dcp_restore(const ImageBuffer& img, const DcpParams& p);

/// The same chain driven by the multi-scale dark channel.
ImageBuffer mudcp_restore(const ImageBuffer& img, const DcpParams& p, const MudcpParams& m);

/// lambda = clamp(1 - mean_R / max(mean_G, mean_B), 0, 1).
double adaptive_rcp_lambda(const ImageBuffer& img);

/// R' = clamp(R + lambda (G - B)); G and B are copied untouched.
ImageBuffer rcp_compensate(const ImageBuffer& img, std::optional<double> lambda = std::nullopt);

}  // namespace aquapipe::priors

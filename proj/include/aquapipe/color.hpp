/**
 * @file color.hpp
 * @brief Scene-adaptive color correction and white balance
 *
 * Attenuation estimation, water-type classification, weighted fusion of
 * the RCP / DCP / MUDCP restorations, perceptual Lab balance, gray world,
 * histogram matching and HSV gains.
 */
#pragma once

#include <aquapipe/imgcore/color_convert.hpp>
#include <aquapipe/imgcore/image.hpp>
#include <aquapipe/priors.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace aquapipe::color {

/// Normalized channel means, eta_R + eta_G + eta_B = 1.
struct AttenuationProfile {
    std::array<double, 3> eta{};

    void validate() const;
};

struct WaterTypeProfile {
    std::string name;
    AttenuationProfile reference;
    std::array<double, 3> weights{};  ///< lambda for RCP, DCP, MUDCP

    void validate() const;
};

struct WaterTypeTable {
    std::vector<WaterTypeProfile> profiles;

    /// Four configurable presets: clear, green-coastal, deep-blue, turbid.
    static WaterTypeTable defaults();
    void validate() const;
};

enum class WtiMode {
    NEAREST,          ///< argmin of the L1 distance
    LITERAL_ARGMAX,   ///< argmax, as the selection rule is printed
};

struct PerceptualBalanceParams {
    double target_delta_e = 10.0;
    double beta = 0.5;
    int max_iters = 20;
    Lab reference{60.0, 5.0, 10.0};
    double tolerance = 0.5;  ///< stop once |dE - target| is within this

    void validate() const;
};

struct FusionParams {
    priors::DcpParams dcp;
    priors::MudcpParams mudcp;
    std::optional<double> rcp_lambda;  ///< adaptive when empty
};

/// Restorations computed once and blended by the water-type weights.
struct FusionBranches {
    ImageBuffer rcp;
    ImageBuffer dcp;
    ImageBuffer mudcp;
};

AttenuationProfile estimate_attenuation(const ImageBuffer& img);

/// Sum over channels of |a_c - b_c|.
double l1_distance(const AttenuationProfile& a, const AttenuationProfile& b) noexcept;

/// Ties go to the earlier table entry in both modes.
const WaterTypeProfile& classify_water_type(const AttenuationProfile& eta, const WaterTypeTable& table,
                                            WtiMode mode = WtiMode::NEAREST);

FusionBranches compute_branches(const ImageBuffer& img, const FusionParams& p);

/// Pixelwise lambda-weighted sum of the three branches, clamped to [0,1].
ImageBuffer blend_branches(const FusionBranches& b, const std::array<double, 3>& weights);

ImageBuffer fuse_priors(const ImageBuffer& img, const WaterTypeProfile& profile, const FusionParams& p = {});

/// Per-channel gains (mean of means) / mean_c.
std::array<double, 3> gray_world_gains(const ImageBuffer& img);
ImageBuffer gray_world(const ImageBuffer& img);

/**
 * Per-channel CDF matching on the 256-level grid: each source level maps to
 * the smallest reference level whose CDF reaches the source CDF.
 */
ImageBuffer histogram_match(const ImageBuffer& img, const ImageBuffer& ref);

/// Mean CIELAB triple of an SRGB image.
Lab lab_mean(const ImageBuffer& img);

struct BalanceResult {
    ImageBuffer image;
    double initial_delta_e = 0.0;
    double final_delta_e = 0.0;
    int iterations = 0;
};

/**
 * Moves the image's Lab mean along the line toward the reference by
 * beta * (dE - target) per iteration, then converts back to SRGB.
 */
BalanceResult perceptual_balance_detailed(const ImageBuffer& img, const PerceptualBalanceParams& p);
ImageBuffer perceptual_balance(const ImageBuffer& img, const PerceptualBalanceParams& p);

/// Scales HSV saturation and value, leaving hue untouched.
ImageBuffer hsv_adjust(const ImageBuffer& img, double sat_gain, double val_gain);

}  // namespace aquapipe::color

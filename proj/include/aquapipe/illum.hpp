/**
 * @file illum.hpp
 * @brief Contrast and illumination compensation
 *
 * Histogram equalization, CLAHE, adaptive gamma, multi-scale Retinex and
 * the hybrid global/local illumination model used as the first pipeline
 * stage.
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>
#include <aquapipe/imgcore/stats.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace aquapipe::illum {

using LevelMap = std::array<double, kLevels>;

struct ClaheParams {
    /// Clip limit as a multiple of the mean bin count of a tile.
    double clip_threshold = 2.0;
    int tile_rows = 8;
    int tile_cols = 8;

    void validate() const;
};

struct MsrParams {
    std::vector<double> sigmas{15.0, 80.0, 250.0};
    std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    double log_floor = 1.0 / 255.0;

    void validate() const;
};

enum class AlphaMode { AUTO, FIXED };

struct HybridIllumParams {
    AlphaMode alpha_mode = AlphaMode::AUTO;
    double alpha = 0.5;  ///< used when alpha_mode == FIXED
    /// AUTO rule: alpha = clamp(1 - alpha_slope * std(luminance), alpha_min, alpha_max)
    double alpha_min = 0.2;
    double alpha_max = 0.8;
    double alpha_slope = 2.0;
    std::vector<double> local_sigmas{5.0, 20.0, 60.0};
    std::vector<double> local_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    /// Use log 0.5 / log E instead of log E / log 0.5 (brightens dark input).
    bool invert_gamma = true;
    std::optional<double> gamma_override;

    void validate() const;
};

/// Equalization map: level k -> (count of samples at levels <= k) / N.
LevelMap equalization_map(const Histogram::Bins& bins, std::uint64_t total);

/**
 * Equalization map of a histogram clipped at `clip_count` per bin, the
 * clipped excess spread evenly over all bins. Without clipping this is
 * exactly equalization_map.
 */
LevelMap clipped_equalization_map(const Histogram::Bins& bins, std::uint64_t total, double clip_count);

/// Global histogram equalization, channel by channel. Output samples are
/// the continuous mapped values (not re-quantized).
ImageBuffer hist_equalize(const ImageBuffer& img);

/**
 * Contrast-limited adaptive histogram equalization with bilinear
 * interpolation between tile maps. Gray images are equalized directly;
 * color images have only their HSV value channel equalized.
 */
ImageBuffer clahe(const ImageBuffer& img, const ClaheParams& p);

struct GammaResult {
    ImageBuffer image;
    double gamma = 1.0;
};

/// gamma = log E / log 0.5, or its reciprocal when `invert`.
double gamma_for_mean(double mean, bool invert);

/**
 * Raises every sample to gamma derived from the mean luminance E(I).
 * Throws DegenerateInputError when E is 0 or 1.
 */
GammaResult adaptive_gamma(const ImageBuffer& img, bool invert = false);

/// Unnormalized per-channel MSR reflectance sum_s w_s [log(I+eps) - log(G_s*I + eps)].
std::vector<RealPlane> msr_reflectance(const ImageBuffer& img, const MsrParams& p);

/// MSR reflectance min-max normalized to [0,1] per channel (flat channels map to 0).
ImageBuffer msr(const ImageBuffer& img, const MsrParams& p);

/// Luminance fields of the hybrid model, exposed for inspection.
struct HybridLuminance {
    RealPlane input;   ///< Rec.601 luma Y
    RealPlane global;  ///< Y^gamma
    RealPlane local;   ///< sum_s w_s G_s * Y
    RealPlane blended; ///< alpha*global + (1-alpha)*local
    double alpha = 0.0;
    double gamma = 1.0;
};

struct HybridResult {
    ImageBuffer image;
    double alpha = 0.0;
    double gamma = 1.0;
};

double auto_alpha(double luminance_std, const HybridIllumParams& p) noexcept;

HybridLuminance hybrid_luminance(const ImageBuffer& img, const HybridIllumParams& p);

/**
 * Blends gamma-normalized and multi-scale-Gaussian luminance, then rescales
 * every RGB channel by blended/Y so chroma ratios are preserved.
 */
HybridResult hybrid_illumination(const ImageBuffer& img, const HybridIllumParams& p);

}  // namespace aquapipe::illum

/**
 * @file wgaf.hpp
 * @brief Wavelet-guided adaptive filtering
 *
 * Each pixel is routed by its local noise energy N: below t1 it takes the
 * bilateral output, above t2 the frequency-domain output, and in between
 * a linear blend weighted by (N - t1) / (t2 - t1). The level-1 diagonal
 * Haar band of the luminance gives a global robust noise deviation whose
 * square floors N, so images that are noisy overall lean towards the
 * frequency branch.
 */
#pragma once

#include <aquapipe/filt/noise.hpp>
#include <aquapipe/imgcore/image.hpp>

namespace aquapipe::filt {

struct WgafParams {
    double t1 = 1e-3;  ///< low-noise threshold (variance units)
    double t2 = 1e-2;  ///< high-noise threshold
    int window_radius = 3;
    double bilateral_sigma_s = 3.0;
    double bilateral_sigma_r = 0.1;
    double highpass_cutoff = 0.25;
    /// Run the high-noise branch as the literal high-pass (DC restored)
    /// instead of its low-pass complement.
    bool literal_highpass = false;

    void validate() const;
};

struct WgafBranchStats {
    double spatial = 0.0;    ///< fraction of pixels with N < t1
    double blended = 0.0;    ///< fraction with t1 <= N < t2
    double frequency = 0.0;  ///< fraction with N >= t2
};

struct WgafResult {
    ImageBuffer image;
    WgafBranchStats branches;
    double wavelet_sigma = 0.0;  ///< robust noise deviation from the diagonal band
};

/// Frequency branch on its own (low-pass, or high-pass when literal).
ImageBuffer wgaf_frequency_branch(const ImageBuffer& img, const WgafParams& p);

WgafResult wgaf_filter(const ImageBuffer& img, const WgafParams& p);
ImageBuffer wgaf_denoise(const ImageBuffer& img, const WgafParams& p);

}  // namespace aquapipe::filt

/**
 * @file metrics.hpp
 * @brief Image quality metrics: UIQM and its components, UCIQE, SSIM,
 *        CIE76 color difference and RGB channel proportions
 *
 * Color metrics take SRGB images with samples in [0,1]. UIQM components
 * work on the 0..255 scale, as in their original definition.
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <array>
#include <optional>

namespace aquapipe::metrics {

struct UiqmCoefficients {
    double c1 = 0.0282;  ///< UICM
    double c2 = 0.2953;  ///< UISM
    double c3 = 3.5753;  ///< UIConM
};

struct UciqeCoefficients {
    double c1 = 0.4680;  ///< chroma standard deviation
    double c2 = 0.2745;  ///< luminance contrast
    double c3 = 0.2576;  ///< mean saturation
};

struct MetricCoefficients {
    UiqmCoefficients uiqm;
    UciqeCoefficients uciqe;
};

/// Block size shared by UISM, UIConM and the SSIM window.
inline constexpr int kBlock = 8;

/// Fraction trimmed from each end of the sorted opponent planes in UICM.
inline constexpr double kTrimLow = 0.1;
inline constexpr double kTrimHigh = 0.1;

struct UiqmComponents {
    double uicm = 0.0;
    double uism = 0.0;
    double uiconm = 0.0;
};

struct UciqeComponents {
    double sigma_c = 0.0;  ///< population std of chroma sqrt(a^2 + b^2), divided by 100
    double con_l = 0.0;    ///< (p99 - p1) of L, divided by 100
    double mu_c = 0.0;     ///< mean of C / sqrt(C^2 + L^2)
};

struct MetricReport {
    double uiqm = 0.0;
    double uicm = 0.0;
    double uism = 0.0;
    double uiconm = 0.0;
    double uciqe = 0.0;
    std::optional<double> ssim;
    std::optional<double> delta_e76;
    std::array<double, 3> channel_proportions{};
};

/// Colorfulness from alpha-trimmed statistics of R-G and (R+G)/2-B.
double uicm(const ImageBuffer& img);

/// Sharpness: luma-weighted EME of Sobel-magnitude-weighted channels. Needs at least 8x8.
double uism(const ImageBuffer& img);

/// Contrast: -(1/blocks) sum (max-min)/(max+min) * log((max-min)/(max+min)) over 8x8 blocks.
double uiconm(const ImageBuffer& img);

UiqmComponents uiqm_components(const ImageBuffer& img);
double uiqm(const UiqmComponents& comp, const UiqmCoefficients& c = {}) noexcept;
double uiqm(const ImageBuffer& img, const UiqmCoefficients& c = {});

UciqeComponents uciqe_components(const ImageBuffer& img);
double uciqe(const UciqeComponents& comp, const UciqeCoefficients& c = {}) noexcept;
double uciqe(const ImageBuffer& img, const UciqeCoefficients& c = {});

/**
 * Mean SSIM over 8x8 uniform windows at every pixel (offsets -3..4 on each
 * axis, reflect borders). Both inputs must be single-channel.
 */
double ssim(const ImageBuffer& x, const ImageBuffer& y);

/// Mean per-pixel Euclidean CIELAB distance.
double delta_e76(const ImageBuffer& img, const ImageBuffer& ref);

/// 100 * mean_c / (mean_R + mean_G + mean_B).
std::array<double, 3> channel_proportions(const ImageBuffer& img);

/// Full report; SSIM (on luma) and delta E are filled only when a reference is given.
MetricReport evaluate(const ImageBuffer& img, const ImageBuffer* ref = nullptr, const MetricCoefficients& c = {});

}  // namespace aquapipe::metrics
